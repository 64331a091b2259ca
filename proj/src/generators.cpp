#include "shiftstab/generators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "shiftstab/error.hpp"
#include "shiftstab/kernels.hpp"

namespace shiftstab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw Error(ErrorCode::invalid_argument, std::string(what) + " must be finite");
}

constexpr int kMaxSplineOrder = 16;

// Number of Gauss-Legendre pieces needed on an interval of length `len` for an
// integrand oscillating at most like e^{2 pi i f t}.
int pieces_for(double len, double freq) {
  return 1 + static_cast<int>(std::ceil(2.0 * std::abs(freq) * len));
}

// 2 * integral_0^{n/2} B_n(t)^2 cos(2 pi t x) dt, integrated piecewise between knots.
double sinc_power_autocorrelation(int n, double x) {
  std::vector<double> knots;
  const double half = 0.5 * n;
  for (double k = half; k > 0.0; k -= 1.0) knots.push_back(k);
  knots.push_back(0.0);
  std::reverse(knots.begin(), knots.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double a = knots[i];
    const double b = knots[i + 1];
    total += gauss_legendre(
        [&](double t) {
          const double bt = centered_bspline(n, t);
          return bt * bt * std::cos(kTwoPi * t * x);
        },
        a, b, pieces_for(b - a, x));
  }
  return 2.0 * total;
}

double sampled_span(const Generator::Sampled& s) {
  return s.samples.empty() ? 0.0 : (s.samples.size() - 1) * s.step;
}

QuadratureValue freq_quadrature_autocorrelation(const Generator& gen, double x, Interval support,
                                                double extra_freq, double tail) {
  const cplx v = gauss_legendre(
      [&](double t) { return std::norm(eval_freq(gen, t)) * expi(kTwoPi * t * x); }, support.lo,
      support.hi, pieces_for(support.length(), std::abs(x) + extra_freq));
  return {v, tail};
}

double cell_distance(int k) { return k >= 0 ? k : -(k + 1.0); }

}  // namespace

Generator Generator::sinc() { return Generator(Sinc{}); }

Generator Generator::sinc_power(int n) {
  if (n < 1 || n > kMaxSplineOrder)
    throw Error(ErrorCode::invalid_argument, "sinc power must be in [1, 16]");
  return Generator(SincPower{n});
}

Generator Generator::gaussian(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw Error(ErrorCode::invalid_argument, "gaussian sigma must be positive");
  return Generator(Gaussian{sigma});
}

Generator Generator::bspline(int order) {
  if (order < 1 || order > kMaxSplineOrder)
    throw Error(ErrorCode::invalid_argument, "bspline order must be in [1, 16]");
  return Generator(BSpline{order});
}

Generator Generator::sampled(double step, double origin, std::vector<cplx> samples,
                             std::optional<Interval> freq_support) {
  if (!(step > 0.0) || !std::isfinite(step))
    throw Error(ErrorCode::invalid_argument, "sampled grid step must be positive");
  require_finite(origin, "sampled origin");
  if (samples.empty()) throw Error(ErrorCode::invalid_argument, "sampled generator needs samples");
  for (const auto& s : samples) {
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
      throw Error(ErrorCode::invalid_argument, "sampled values must be finite");
  }
  if (freq_support && !(freq_support->hi > freq_support->lo))
    throw Error(ErrorCode::invalid_argument, "declared frequency support must be a nonempty interval");
  return Generator(Sampled{step, origin, std::move(samples), freq_support});
}

Generator Generator::combination(Generator base, std::vector<Term> terms) {
  if (terms.empty()) throw Error(ErrorCode::invalid_argument, "combination needs at least one term");
  for (const auto& t : terms) require_finite(t.shift, "combination shift");
  return Generator(Combination{std::make_shared<const Generator>(std::move(base)), std::move(terms)});
}

std::string Generator::describe() const {
  std::ostringstream os;
  os.precision(17);
  std::visit(overloaded{
                 [&](const Sinc&) { os << "sinc"; },
                 [&](const SincPower& s) { os << "sinc_power(n=" << s.n << ")"; },
                 [&](const Gaussian& g) { os << "gaussian(sigma=" << g.sigma << ")"; },
                 [&](const BSpline& b) { os << "bspline(order=" << b.order << ")"; },
                 [&](const Sampled& s) {
                   os << "sampled(step=" << s.step << ", n=" << s.samples.size() << ")";
                 },
                 [&](const Combination& c) {
                   os << "combination(" << c.base->describe() << ", terms=" << c.terms.size() << ")";
                 },
             },
             kind_);
  return os.str();
}

std::optional<Interval> Generator::freq_support() const {
  return std::visit(overloaded{
                        [](const Sinc&) -> std::optional<Interval> { return Interval{-0.5, 0.5}; },
                        [](const SincPower& s) -> std::optional<Interval> {
                          return Interval{-0.5 * s.n, 0.5 * s.n};
                        },
                        [](const Gaussian&) -> std::optional<Interval> { return std::nullopt; },
                        [](const BSpline&) -> std::optional<Interval> { return std::nullopt; },
                        [](const Sampled& s) { return s.freq_support; },
                        [](const Combination& c) { return c.base->freq_support(); },
                    },
                    kind_);
}

bool Generator::continuous_freq() const {
  return std::visit(overloaded{
                        [](const Sinc&) { return false; },
                        [](const SincPower& s) { return s.n >= 2; },
                        [](const Gaussian&) { return true; },
                        [](const BSpline&) { return true; },
                        [](const Sampled& s) { return !s.freq_support.has_value(); },
                        [](const Combination& c) { return c.base->continuous_freq(); },
                    },
                    kind_);
}

bool Generator::continuous_time() const {
  return std::visit(overloaded{
                        [](const Sinc&) { return true; },
                        [](const SincPower&) { return true; },
                        [](const Gaussian&) { return true; },
                        [](const BSpline& b) { return b.order >= 2; },
                        [](const Sampled& s) {
                          return s.samples.front() == cplx{} && s.samples.back() == cplx{};
                        },
                        [](const Combination& c) { return c.base->continuous_time(); },
                    },
                    kind_);
}

bool Generator::real_even_autocorrelation() const {
  return std::holds_alternative<Sinc>(kind_) || std::holds_alternative<SincPower>(kind_) ||
         std::holds_alternative<Gaussian>(kind_) || std::holds_alternative<BSpline>(kind_);
}

cplx eval_time(const Generator& gen, double x) {
  require_finite(x, "x");
  return std::visit(
      overloaded{
          [&](const Generator::Sinc&) { return cplx(sinc(x)); },
          [&](const Generator::SincPower& s) { return cplx(std::pow(sinc(x), s.n)); },
          [&](const Generator::Gaussian& g) {
            return cplx(std::exp(-kPi * x * x / (g.sigma * g.sigma)));
          },
          [&](const Generator::BSpline& b) { return cplx(centered_bspline(b.order, x)); },
          [&](const Generator::Sampled& s) {
            const double u = (x - s.origin) / s.step;
            const auto n = static_cast<double>(s.samples.size());
            if (u < 0.0 || u > n - 1.0) return cplx{};
            const auto j = static_cast<std::size_t>(std::floor(u));
            if (j + 1 >= s.samples.size()) return s.samples.back();
            const double w = u - j;
            return (1.0 - w) * s.samples[j] + w * s.samples[j + 1];
          },
          [&](const Generator::Combination& c) {
            cplx sum{};
            for (const auto& t : c.terms) sum += t.coefficient * eval_time(*c.base, x - t.shift);
            return sum;
          },
      },
      gen.kind());
}

cplx eval_freq(const Generator& gen, double t) {
  require_finite(t, "t");
  return std::visit(
      overloaded{
          [&](const Generator::Sinc&) { return cplx((t >= -0.5 && t < 0.5) ? 1.0 : 0.0); },
          [&](const Generator::SincPower& s) { return cplx(centered_bspline(s.n, t)); },
          [&](const Generator::Gaussian& g) {
            return cplx(g.sigma * std::exp(-kPi * g.sigma * g.sigma * t * t));
          },
          [&](const Generator::BSpline& b) { return cplx(std::pow(sinc(t), b.order)); },
          [&](const Generator::Sampled& s) {
            if (s.freq_support && !s.freq_support->contains(t)) return cplx{};
            const std::size_t n = s.samples.size();
            cplx sum{};
            for (std::size_t j = 0; j < n; ++j) {
              const double w = (n > 1 && (j == 0 || j + 1 == n)) ? 0.5 : 1.0;
              sum += w * s.samples[j] * expi(-kTwoPi * t * (s.origin + j * s.step));
            }
            return s.step * sum;
          },
          [&](const Generator::Combination& c) {
            cplx phase{};
            for (const auto& term : c.terms) phase += term.coefficient * expi(-kTwoPi * t * term.shift);
            return eval_freq(*c.base, t) * phase;
          },
      },
      gen.kind());
}

double AmalgamProfile::sup_beyond(double from) const {
  double best = divergent ? std::numeric_limits<double>::infinity() : tail;
  for (std::size_t i = 0; i < cell_sups.size(); ++i) {
    if (cell_distance(first_cell + static_cast<int>(i)) >= from) best = std::max(best, cell_sups[i]);
  }
  return best;
}

double AmalgamProfile::sum_beyond(double from) const {
  double s = tail;
  for (std::size_t i = 0; i < cell_sups.size(); ++i) {
    if (cell_distance(first_cell + static_cast<int>(i)) >= from) s += cell_sups[i];
  }
  return s;
}

AmalgamProfile wiener_norm(const Generator& gen, AmalgamMode mode, int cells, int probes_per_cell) {
  if (cells < 1) throw Error(ErrorCode::invalid_argument, "cells must be >= 1");
  if (probes_per_cell < 16) throw Error(ErrorCode::invalid_argument, "probes per cell must be >= 16");

  kernels::RealFn g;
  if (mode == AmalgamMode::time_domain) {
    g = [&gen](double x) { return std::abs(eval_time(gen, x)); };
  } else {
    g = [&gen](double t) { return std::norm(eval_freq(gen, t)); };
  }

  AmalgamProfile p;
  p.mode = mode;
  p.first_cell = -cells;
  p.cell_sups = kernels::cell_maxima(g, -cells, 2 * cells, probes_per_cell, true);

  auto partial = [&](int c) {
    double s = 0.0;
    for (int k = -c; k < c; ++k) s += p.cell_sups[k + cells];
    return s;
  };
  std::vector<int> levels;
  for (int c : {cells / 4, cells / 2, cells}) {
    if (c >= 1 && (levels.empty() || c > levels.back())) levels.push_back(c);
  }
  for (int c : levels) p.partial_sums.push_back(partial(c));
  p.total = p.partial_sums.back();

  int failed = 0;
  const int doublings = static_cast<int>(levels.size()) - 1;
  for (int i = 0; i < doublings; ++i) {
    const double prev = p.partial_sums[i];
    const double next = p.partial_sums[i + 1];
    const double rel = prev > 0.0 ? (next - prev) / prev : (next > 0.0 ? 1.0 : 0.0);
    if (rel > kAmalgamCauchyThreshold) ++failed;
  }
  p.divergent = doublings > 0 && failed == doublings;
  if (p.divergent) {
    p.tail = std::numeric_limits<double>::infinity();
  } else if (doublings > 0) {
    p.tail = p.partial_sums.back() - p.partial_sums[p.partial_sums.size() - 2];
  }
  return p;
}

QuadratureValue autocorrelation_with_bound(const Generator& gen, double x) {
  require_finite(x, "x");
  return std::visit(
      overloaded{
          [&](const Generator::Sinc&) { return QuadratureValue{cplx(sinc(x)), 0.0}; },
          [&](const Generator::SincPower& s) {
            if (s.n == 1) return QuadratureValue{cplx(sinc(x)), 0.0};
            return QuadratureValue{cplx(sinc_power_autocorrelation(s.n, x)), 0.0};
          },
          [&](const Generator::Gaussian& g) {
            const double v = g.sigma / std::sqrt(2.0) * std::exp(-kPi * x * x / (2.0 * g.sigma * g.sigma));
            return QuadratureValue{cplx(v), 0.0};
          },
          [&](const Generator::BSpline& b) {
            return QuadratureValue{cplx(centered_bspline(2 * b.order, x)), 0.0};
          },
          [&](const Generator::Sampled& s) {
            if (s.freq_support) return freq_quadrature_autocorrelation(gen, x, *s.freq_support, sampled_span(s), 0.0);
            const auto prof = wiener_norm(gen, AmalgamMode::freq_squared, 64, 64);
            if (prof.divergent)
              throw Error(ErrorCode::unsupported_generator,
                          "sampled generator has no declared frequency support and |F^|^2 is not in W");
            return freq_quadrature_autocorrelation(gen, x, Interval{-64.0, 64.0},
                                                   sampled_span(s) + std::abs(s.origin), prof.tail);
          },
          [&](const Generator::Combination& c) {
            cplx sum{};
            double tail = 0.0;
            for (const auto& a : c.terms) {
              for (const auto& b : c.terms) {
                const auto q = autocorrelation_with_bound(*c.base, x - a.shift + b.shift);
                sum += a.coefficient * std::conj(b.coefficient) * q.value;
                tail += std::abs(a.coefficient) * std::abs(b.coefficient) * q.tail_bound;
              }
            }
            return QuadratureValue{sum, tail};
          },
      },
      gen.kind());
}

cplx autocorrelation(const Generator& gen, double x) { return autocorrelation_with_bound(gen, x).value; }

namespace {

struct ZeroStructure {
  std::vector<double> zeros;
  std::vector<Interval> nulls;
};

// Grid scan of |f| on the window: runs of at least two sub-tolerance grid values become
// null intervals (edges bisected); isolated low values and local minima are refined by
// Brent and a few complex Newton steps.
ZeroStructure scan_zeros(const std::function<cplx(double)>& f, Interval window, double step, double tolerance) {
  const auto m = static_cast<std::size_t>(std::ceil(window.length() / step));
  std::vector<double> ts(m + 1);
  for (std::size_t i = 0; i <= m; ++i) ts[i] = std::min(window.hi, window.lo + i * step);
  std::vector<double> v(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) v[i] = std::abs(f(ts[i]));
  auto below = [&](double t) { return std::abs(f(t)) < tolerance; };
  auto modulus = [&](double t) { return std::abs(f(t)); };

  ZeroStructure out;
  std::vector<bool> in_run(ts.size(), false);
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < ts.size();) {
    if (!(v[i] < tolerance)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < ts.size() && v[j + 1] < tolerance) ++j;
    if (j > i) {
      const double lo = i == 0 ? window.lo : bisect_boundary(below, ts[i], ts[i - 1]);
      const double hi = j + 1 == ts.size() ? window.hi : bisect_boundary(below, ts[j], ts[j + 1]);
      out.nulls.push_back({lo, hi});
      for (std::size_t k = i; k <= j; ++k) in_run[k] = true;
    } else {
      candidates.push_back(i);
    }
    i = j + 1;
  }
  for (std::size_t i = 1; i + 1 < ts.size(); ++i) {
    if (in_run[i] || v[i] < tolerance) continue;
    if (v[i] <= v[i - 1] && v[i] <= v[i + 1]) candidates.push_back(i);
  }
  std::sort(candidates.begin(), candidates.end());

  for (std::size_t i : candidates) {
    const double lo = ts[i == 0 ? 0 : i - 1];
    const double hi = ts[std::min(i + 1, ts.size() - 1)];
    auto [t, val] = polish_min(modulus, lo, hi);
    if (v[i] < val) {
      t = ts[i];
      val = v[i];
    }
    // Newton on the complex values: f(s) ~ c (s - z) near a simple real zero.
    for (int it = 0; it < 4 && val > 0.0; ++it) {
      const double h = 1e-7;
      const cplx d = (f(t + h) - f(t - h)) / (2.0 * h);
      if (std::abs(d) == 0.0) break;
      const double next = t - (f(t) / d).real();
      if (!(next >= lo && next <= hi)) break;
      const double nv = modulus(next);
      if (!(nv < val)) break;
      t = next;
      val = nv;
    }
    if (val < tolerance && window.contains(t)) out.zeros.push_back(t);
  }
  return out;
}

void clip_null(ZeroStructure& z, Interval window, double lo, double hi) {
  const double a = std::max(lo, window.lo), b = std::min(hi, window.hi);
  if (b > a) z.nulls.push_back({a, b});
}

// Zeros of F^ from closed forms where the kind has them. A combination factors as
// base F^ times the trigonometric polynomial sum c_j e^{-2 pi i s_j t}; only that
// bounded factor is scanned numerically, so fast decay of the base never reads as a null.
ZeroStructure zero_structure(const Generator& gen, Interval window, double step, double tolerance) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  return std::visit(
      overloaded{
          [&](const Generator::Sinc&) {
            ZeroStructure z;
            clip_null(z, window, -inf, -0.5);
            clip_null(z, window, 0.5, inf);
            return z;
          },
          [&](const Generator::SincPower& s) {
            ZeroStructure z;
            clip_null(z, window, -inf, -0.5 * s.n);
            clip_null(z, window, 0.5 * s.n, inf);
            return z;
          },
          [&](const Generator::Gaussian&) { return ZeroStructure{}; },
          [&](const Generator::BSpline&) {
            ZeroStructure z;
            for (double k = std::ceil(window.lo); k <= window.hi; k += 1.0)
              if (k != 0.0) z.zeros.push_back(k);
            return z;
          },
          [&](const Generator::Sampled&) {
            return scan_zeros([&](double t) { return eval_freq(gen, t); }, window, step, tolerance);
          },
          [&](const Generator::Combination& c) {
            ZeroStructure z = zero_structure(*c.base, window, step, tolerance);
            const auto factor = [&](double t) {
              cplx p{};
              for (const auto& term : c.terms) p += term.coefficient * expi(-kTwoPi * term.shift * t);
              return p;
            };
            const ZeroStructure pz = scan_zeros(factor, window, step, tolerance);
            z.zeros.insert(z.zeros.end(), pz.zeros.begin(), pz.zeros.end());
            z.nulls.insert(z.nulls.end(), pz.nulls.begin(), pz.nulls.end());
            return z;
          },
      },
      gen.kind());
}

}  // namespace

FreqZeroSet freq_zero_set(const Generator& gen, Interval window, double step, double tolerance,
                          int per_unit_cap) {
  if (!(window.hi > window.lo)) throw Error(ErrorCode::invalid_argument, "window must be nonempty");
  if (!(step > 0.0) || step > 0.01) throw Error(ErrorCode::invalid_argument, "grid step must be in (0, 0.01]");
  if (!(tolerance > 0.0)) throw Error(ErrorCode::invalid_argument, "zero tolerance must be positive");

  ZeroStructure zs = zero_structure(gen, window, step, tolerance);

  FreqZeroSet out;
  out.window = window;
  std::sort(zs.nulls.begin(), zs.nulls.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (const auto& n : zs.nulls) {
    if (!out.null_intervals.empty() && n.lo <= out.null_intervals.back().hi) {
      out.null_intervals.back().hi = std::max(out.null_intervals.back().hi, n.hi);
    } else {
      out.null_intervals.push_back(n);
    }
  }
  std::sort(zs.zeros.begin(), zs.zeros.end());
  for (double z : zs.zeros) {
    const bool inside_null = std::any_of(out.null_intervals.begin(), out.null_intervals.end(),
                                         [z](const Interval& n) { return z >= n.lo && z <= n.hi; });
    if (inside_null) continue;
    if (!out.zeros.empty() && z - out.zeros.back() < 1e-9) continue;
    if (!(std::abs(eval_freq(gen, z)) < tolerance)) continue;
    out.zeros.push_back(z);
  }

  out.first_cell = static_cast<int>(std::floor(window.lo));
  const int last_cell = static_cast<int>(std::ceil(window.hi)) - 1;
  out.per_unit_counts.assign(std::max(1, last_cell - out.first_cell + 1), 0);
  for (double z : out.zeros) {
    const int c = static_cast<int>(std::floor(z)) - out.first_cell;
    if (c >= 0 && c < static_cast<int>(out.per_unit_counts.size())) ++out.per_unit_counts[c];
  }
  out.locally_finite = std::all_of(out.per_unit_counts.begin(), out.per_unit_counts.end(),
                                   [per_unit_cap](int c) { return c < per_unit_cap; });
  return out;
}

SpectrumSet level_set(const Generator& gen, double r, Interval window, double step) {
  if (!(r > 0.0)) throw Error(ErrorCode::invalid_argument, "level r must be positive");
  if (!(window.hi > window.lo)) throw Error(ErrorCode::invalid_argument, "window must be nonempty");
  if (!(step > 0.0)) throw Error(ErrorCode::invalid_argument, "grid step must be positive");

  const auto m = static_cast<std::size_t>(std::ceil(window.length() / step));
  std::vector<double> ts(m + 1);
  for (std::size_t i = 0; i <= m; ++i) ts[i] = std::min(window.hi, window.lo + i * step);
  std::vector<double> v(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) v[i] = std::abs(eval_freq(gen, ts[i]));
  auto above = [&](double t) { return std::abs(eval_freq(gen, t)) > r; };

  std::vector<Interval> pieces;
  for (std::size_t i = 0; i < ts.size();) {
    if (!(v[i] > r)) {
      // A narrow peak can sit between grid points.
      if (i > 0 && i + 1 < ts.size() && v[i] >= v[i - 1] && v[i] >= v[i + 1]) {
        auto [tm, vm] = polish_max([&](double t) { return std::abs(eval_freq(gen, t)); }, ts[i - 1], ts[i + 1]);
        if (vm > r) {
          pieces.push_back({bisect_boundary(above, tm, ts[i - 1]), bisect_boundary(above, tm, ts[i + 1])});
        }
      }
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < ts.size() && v[j + 1] > r) ++j;
    const double lo = i == 0 ? window.lo : bisect_boundary(above, ts[i], ts[i - 1]);
    const double hi = j + 1 == ts.size() ? window.hi : bisect_boundary(above, ts[j], ts[j + 1]);
    pieces.push_back({lo, hi});
    i = j + 1;
  }
  return SpectrumSet(std::move(pieces));
}

double freq_sup(const Generator& gen) {
  const Interval span = gen.freq_support().value_or(Interval{-64.0, 64.0});
  const double step = 1e-3;
  const auto m = static_cast<std::size_t>(std::ceil(span.length() / step));
  double best = 0.0;
  std::size_t best_i = 0;
  for (std::size_t i = 0; i <= m; ++i) {
    const double v = std::abs(eval_freq(gen, std::min(span.hi, span.lo + i * step)));
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  const double c = span.lo + best_i * step;
  const auto polished = polish_max([&](double t) { return std::abs(eval_freq(gen, t)); },
                                   std::max(span.lo, c - step), std::min(span.hi, c + step));
  return std::max(best, polished.second);
}

}  // namespace shiftstab
