#include "shiftstab/numerics.hpp"

#include <algorithm>
#include <vector>

#include <boost/math/tools/minima.hpp>

#include "shiftstab/error.hpp"
#include "shiftstab/interval.hpp"

namespace shiftstab {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::resource_limit: return "resource-limit";
    case ErrorCode::unsupported_generator: return "unsupported-generator";
    case ErrorCode::unsupported_request: return "unsupported-request";
    case ErrorCode::unsupported_set: return "unsupported-set";
    case ErrorCode::config: return "config-error";
  }
  return "unknown";
}

SpectrumSet::SpectrumSet(std::vector<Interval> pieces) {
  std::erase_if(pieces, [](const Interval& i) { return !(i.hi > i.lo); });
  std::sort(pieces.begin(), pieces.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (const auto& p : pieces) {
    if (!intervals_.empty() && p.lo <= intervals_.back().hi) {
      intervals_.back().hi = std::max(intervals_.back().hi, p.hi);
    } else {
      intervals_.push_back(p);
    }
  }
  for (const auto& i : intervals_) measure_ += i.length();
}

bool SpectrumSet::contains(double t) const {
  return std::any_of(intervals_.begin(), intervals_.end(),
                     [t](const Interval& i) { return i.lo < t && t < i.hi; });
}

double sinc(double x) {
  const double px = kPi * x;
  if (std::abs(px) < 1e-8) return 1.0 - px * px / 6.0;
  return std::sin(px) / px;
}

double centered_bspline(int order, double t) {
  // Cox-de Boor on the uncentered cardinal spline M_order supported on [0, order).
  const double x = t + 0.5 * order;
  if (x < 0.0 || x >= order) return 0.0;
  // Orders used here stay small (autocorrelations double them), so a stack buffer suffices.
  std::array<double, 64> m{};
  if (order < 1 || order > static_cast<int>(m.size()))
    throw Error(ErrorCode::invalid_argument, "B-spline order must be in [1, 64]");
  for (int j = 0; j < order; ++j) {
    const double y = x - j;
    m[j] = (y >= 0.0 && y < 1.0) ? 1.0 : 0.0;
  }
  for (int k = 2; k <= order; ++k) {
    for (int j = 0; j + k <= order; ++j) {
      const double y = x - j;
      m[j] = (y * m[j] + (k - y) * m[j + 1]) / (k - 1);
    }
  }
  return m[0];
}

std::pair<double, double> polish_max(const std::function<double(double)>& g, double lo, double hi) {
  auto neg = [&](double x) { return -g(x); };
  auto [x, v] = boost::math::tools::brent_find_minima(neg, lo, hi, 40);
  std::pair<double, double> best{x, -v};
  for (double e : {lo, hi}) {
    const double ge = g(e);
    if (ge > best.second) best = {e, ge};
  }
  return best;
}

std::pair<double, double> polish_min(const std::function<double(double)>& g, double lo, double hi) {
  auto [x, v] = boost::math::tools::brent_find_minima(g, lo, hi, 50);
  std::pair<double, double> best{x, v};
  for (double e : {lo, hi}) {
    const double ge = g(e);
    if (ge < best.second) best = {e, ge};
  }
  return best;
}

double bisect_boundary(const std::function<bool(double)>& pred, double inside, double outside,
                       double tol) {
  for (int it = 0; it < 200 && std::abs(outside - inside) > tol; ++it) {
    const double mid = 0.5 * (inside + outside);
    if (pred(mid)) inside = mid;
    else outside = mid;
  }
  return 0.5 * (inside + outside);
}

double bisect_root(const std::function<double(double)>& f, double lo, double hi, double tol) {
  double flo = f(lo);
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace shiftstab
