#include "shiftstab/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "shiftstab/error.hpp"
#include "shiftstab/kernels.hpp"

namespace shiftstab {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

kernels::ComplexFn time_fn(const Generator& gen) {
  return [&gen](double x) { return eval_time(gen, x); };
}

kernels::ComplexFn acf_fn(const Generator& gen) {
  return [&gen](double x) { return autocorrelation(gen, x); };
}

// Sum of squared cell sups at distance >= from, plus a doubling estimate of the rest.
double squared_mass_beyond(const AmalgamProfile& p, double from) {
  const int cells = static_cast<int>(p.cell_sups.size()) / 2;
  double beyond = 0.0, half = 0.0, full = 0.0;
  for (std::size_t i = 0; i < p.cell_sups.size(); ++i) {
    const int k = p.first_cell + static_cast<int>(i);
    const double dist = k >= 0 ? k : -(k + 1.0);
    const double s2 = p.cell_sups[i] * p.cell_sups[i];
    if (dist >= from) beyond += s2;
    if (dist < cells) full += s2;
    if (dist < cells / 2) half += s2;
  }
  return beyond + (full - half);
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::stable: return "stable";
    case Verdict::unstable: return "unstable";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

LadderDecision decide_ladder(const std::vector<LadderRung>& ladder) {
  if (ladder.empty()) return {Verdict::inconclusive, "empty ladder"};
  const double first = ladder.front().lambda_min;
  const double last = ladder.back().lambda_min;
  const double top = ladder.back().lambda_max;
  const bool zero = last <= kNumericalZero * top;
  if (last < kLadderFloor && (zero || first > kLadderDecay * last)) {
    return {Verdict::unstable, zero ? "lambda_min reached numerical zero (" + fmt(last) + ")"
                                    : "lambda_min decayed from " + fmt(first) + " to " + fmt(last)};
  }
  if (ladder.size() >= 2 && last > kLadderFloor) {
    const double prev = ladder[ladder.size() - 2].lambda_min;
    const double change = std::abs(last - prev) / prev;
    if (change < kLadderStabilization)
      return {Verdict::stable, "lambda_min settled at " + fmt(last) + " (last change " + fmt(change) + ")"};
    return {Verdict::inconclusive, "lambda_min still moving (last change " + fmt(change) + ")"};
  }
  return {Verdict::inconclusive, "lambda_min " + fmt(last) + " neither settled nor decayed"};
}

std::vector<Interval> centered_windows(const PointSet& set, const std::vector<std::size_t>& sizes) {
  if (sizes.empty()) throw Error(ErrorCode::invalid_argument, "window ladder needs sizes");
  const std::size_t need = *std::max_element(sizes.begin(), sizes.end());
  if (need > kMaxSectionPoints) throw Error(ErrorCode::resource_limit, "section size above 4096");
  std::vector<double> pts;
  for (double r = 4.0;; r *= 2.0) {
    if (2.0 * r > kMaxWindowLength) throw Error(ErrorCode::resource_limit, "set too sparse for the requested sizes");
    pts = enumerate(set, {-r, r});
    // Enough points, and the outermost chosen ones cannot be beaten by points outside.
    if (pts.size() >= 2 * need + 2) break;
  }
  std::stable_sort(pts.begin(), pts.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
  std::vector<Interval> out;
  for (std::size_t n : sizes) {
    if (n < 2) throw Error(ErrorCode::invalid_argument, "section sizes must be >= 2");
    const auto [lo, hi] = std::minmax_element(pts.begin(), pts.begin() + n);
    out.push_back({*lo, *hi});
  }
  return out;
}

PeriodizationProfile periodization(const Generator& gen, double alpha, int grid_points, int cells) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw Error(ErrorCode::invalid_argument, "alpha must be positive");
  if (grid_points < 1 || cells < 1) throw Error(ErrorCode::invalid_argument, "grid points and cells must be positive");

  PeriodizationProfile out;
  out.alpha = alpha;
  out.cells = cells;
  const auto support = gen.freq_support();
  const double reach = alpha * cells;
  const bool covered = support && reach >= std::max(std::abs(support->lo), std::abs(support->hi)) + alpha;
  if (!covered) {
    const int pcells = std::max(64, static_cast<int>(std::ceil(reach)) + 8);
    const auto prof = wiener_norm(gen, AmalgamMode::freq_squared, pcells, 1024);
    if (prof.divergent && !support)
      throw Error(ErrorCode::unsupported_generator, "|F^|^2 fails the amalgam Cauchy test");
    out.tail_bound = (std::floor(1.0 / alpha) + 1.0) * prof.sum_beyond(std::floor(reach - alpha));
  }

  out.grid.resize(grid_points);
  for (int i = 0; i < grid_points; ++i) out.grid[i] = alpha * i / grid_points;
  out.values = kernels::periodization_values([&gen](double t) { return eval_freq(gen, t); }, alpha,
                                             out.grid, cells);
  const auto [mn, mx] = std::minmax_element(out.values.begin(), out.values.end());
  out.min_value = *mn;
  out.max_value = *mx;
  out.argmin = out.grid[mn - out.values.begin()];
  out.argmax = out.grid[mx - out.values.begin()];
  return out;
}

IntegerShiftResult integer_shift_verdict(const Generator& gen, int b_grid, int k_truncation,
                                         double vanish_tolerance) {
  if (b_grid < 1 || k_truncation < 0 || !(vanish_tolerance > 0.0))
    throw Error(ErrorCode::invalid_argument, "need b grid >= 1, K >= 0, tolerance > 0");
  auto m = [&](double b) {
    double best = 0.0;
    for (int k = -k_truncation; k <= k_truncation; ++k) best = std::max(best, std::abs(eval_freq(gen, b + k)));
    return best;
  };
  std::vector<double> mb(b_grid);
  for (int i = 0; i < b_grid; ++i) mb[i] = m(static_cast<double>(i) / b_grid);
  const auto it = std::min_element(mb.begin(), mb.end());
  const double b_star = static_cast<double>(it - mb.begin()) / b_grid;

  IntegerShiftResult out;
  out.witness_b = b_star;
  out.min_m = *it;
  if (*it > vanish_tolerance) {
    out.verdict = Verdict::stable;
    return out;
  }
  const double h = 1.0 / b_grid;
  auto [b_ref, m_ref] = polish_min(m, b_star - h, b_star + h);
  if (*it <= m_ref) {
    b_ref = b_star;
    m_ref = *it;
  }
  out.witness_b = b_ref;
  out.min_m = m_ref;
  out.verdict = m_ref < 0.1 * vanish_tolerance ? Verdict::unstable : Verdict::inconclusive;
  return out;
}

GramianSection gramian_section(const Generator& gen, const std::vector<double>& points) {
  if (points.size() < 2) throw Error(ErrorCode::invalid_argument, "section needs at least 2 points");
  if (points.size() > kMaxSectionPoints) throw Error(ErrorCode::resource_limit, "section above 4096 points");
  GramianSection s;
  s.points = points;
  s.entries = kernels::hermitian_fill(points, acf_fn(gen));
  s.eigen = extremal_eigenvalues(s.entries);
  s.lambda_min = s.eigen.lambda_min;
  s.lambda_max = s.eigen.lambda_max;
  return s;
}

GramianSection gramian_section(const Generator& gen, const PointSet& set, Interval window) {
  return gramian_section(gen, enumerate(set, window));
}

StabilityReport l2_stability_estimate(const Generator& gen, const PointSet& set,
                                      const std::vector<Interval>& windows) {
  if (windows.empty()) throw Error(ErrorCode::invalid_argument, "window ladder is empty");
  for (std::size_t i = 1; i < windows.size(); ++i) {
    const auto& a = windows[i - 1];
    const auto& b = windows[i];
    if (!(b.lo <= a.lo && a.hi <= b.hi) || (b.lo == a.lo && b.hi == a.hi))
      throw Error(ErrorCode::invalid_argument, "window ladder must be strictly nested");
  }
  StabilityReport rep;
  rep.separated = is_separated(set);
  double top = 0.0;
  for (const auto& w : windows) {
    const auto sec = gramian_section(gen, set, w);
    rep.ladder.push_back({w, sec.points.size(), sec.lambda_min, sec.lambda_max});
    top = std::max(top, sec.lambda_max);
    rep.max_residual = std::max(rep.max_residual, sec.eigen.relative_residual);
  }
  const auto d = decide_ladder(rep.ladder);
  rep.verdict = d.verdict;
  rep.rationale = d.rationale;
  rep.c1 = std::sqrt(std::max(0.0, rep.ladder.back().lambda_min));
  rep.c2 = std::sqrt(top);
  return rep;
}

std::vector<cplx> synthesize(const Generator& gen, const std::vector<double>& points,
                             const std::vector<cplx>& coefficients, const std::vector<double>& grid) {
  if (points.size() != coefficients.size())
    throw Error(ErrorCode::invalid_argument, "coefficient count does not match the number of points");
  return kernels::synthesize(time_fn(gen), points, coefficients, grid);
}

std::vector<cplx> synthesize(const Generator& gen, const PointSet& set, Interval window,
                             const std::vector<cplx>& coefficients, const std::vector<double>& grid) {
  return synthesize(gen, enumerate(set, window), coefficients, grid);
}

NormConsistency l2_norm_consistency(const Generator& gen, const std::vector<double>& points,
                                    const std::vector<cplx>& coefficients, Interval domain,
                                    double truncation_limit) {
  if (points.size() != coefficients.size())
    throw Error(ErrorCode::invalid_argument, "coefficient count does not match the number of points");
  if (!(domain.hi > domain.lo)) throw Error(ErrorCode::invalid_argument, "quadrature domain must be nonempty");
  NormConsistency out;
  double l1 = 0.0;
  for (const auto& c : coefficients) l1 += std::abs(c);
  if (l1 == 0.0) return out;

  const auto [pmin, pmax] = std::minmax_element(points.begin(), points.end());
  const double margin = std::min(domain.hi - *pmax, *pmin - domain.lo);
  if (margin < 0.0) throw Error(ErrorCode::invalid_argument, "points must lie inside the quadrature domain");
  int cells = 64;
  while (cells < 2 * (margin + 2.0)) cells *= 2;
  const auto prof = wiener_norm(gen, AmalgamMode::time_domain, cells, 256);
  // Minkowski: the L2 mass outside is at most ||c||_1^2 times that of F beyond the margin.
  out.truncation_bound = l1 * l1 * squared_mass_beyond(prof, std::floor(margin));
  if (!(out.truncation_bound <= truncation_limit)) {
    throw Error(ErrorCode::unsupported_request,
                "quadrature truncation bound " + fmt(out.truncation_bound) + " exceeds limit " + fmt(truncation_limit));
  }

  const Eigen::MatrixXcd g = kernels::hermitian_fill(points, acf_fn(gen));
  const Eigen::Map<const Eigen::VectorXcd> c(coefficients.data(), static_cast<Eigen::Index>(coefficients.size()));
  out.quadratic_form = c.dot(g * c).real();

  const int pieces = static_cast<int>(std::ceil(4.0 * domain.length()));
  const auto f = time_fn(gen);
  out.quadrature = gauss_legendre(
      [&](double x) { return std::norm(kernels::detail::synthesis_at(f, points, coefficients, x)); },
      domain.lo, domain.hi, pieces);
  return out;
}

LinfSearchResult linf_stability_search(const Generator& gen, const std::vector<double>& points,
                                       long budget, std::uint64_t seed, double grid_step) {
  if (points.empty()) throw Error(ErrorCode::invalid_argument, "l-infinity search needs points");
  if (budget < 1 || !(grid_step > 0.0)) throw Error(ErrorCode::invalid_argument, "need budget >= 1 and grid step > 0");
  const auto prof = wiener_norm(gen, AmalgamMode::time_domain, 64, 256);
  if (prof.divergent) throw Error(ErrorCode::unsupported_generator, "generator is not in the Wiener amalgam W");

  const auto [pmin, pmax] = std::minmax_element(points.begin(), points.end());
  std::vector<double> grid;
  for (double x = *pmin - 4.0; x <= *pmax + 4.0; x += grid_step) grid.push_back(x);
  const Eigen::MatrixXcd phi = kernels::sample_matrix(time_fn(gen), grid, points);
  const auto n = static_cast<Eigen::Index>(points.size());

  LinfSearchResult out;
  out.bound = std::numeric_limits<double>::infinity();
  Eigen::VectorXcd best(n);
  auto consider = [&](const Eigen::VectorXcd& c, const char* stage) {
    ++out.evaluations;
    const double scale = c.cwiseAbs().maxCoeff();
    if (scale == 0.0) return false;
    const double v = (phi * c).cwiseAbs().maxCoeff() / scale;
    if (v < out.bound) {
      out.bound = v;
      best = c / scale;
      out.best_stage = stage;
      return true;
    }
    return false;
  };

  Eigen::VectorXcd c(n);
  if (n <= 12) {
    // c_0 = +1 fixes the global sign.
    for (long mask = 0; mask < (1L << (n - 1)); ++mask) {
      c(0) = 1.0;
      for (Eigen::Index j = 1; j < n; ++j) c(j) = ((mask >> (j - 1)) & 1) ? -1.0 : 1.0;
      consider(c, "signs");
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, kTwoPi);
  std::bernoulli_distribution coin(0.5);
  for (long it = 0; out.evaluations < budget; ++it) {
    for (Eigen::Index j = 0; j < n; ++j) c(j) = (it % 2 == 0) ? cplx(coin(rng) ? 1.0 : -1.0) : expi(phase(rng));
    consider(c, it % 2 == 0 ? "random-signs" : "random-phases");
  }
  if (points.size() >= 2 && points.size() <= static_cast<std::size_t>(kResidualCheckLimit)) {
    const auto sec = gramian_section(gen, points);
    if (sec.eigen.v_min.size() == n) consider(sec.eigen.v_min, "gram-eigenvector");
  }

  // Coordinate descent over a polar stencil, keeping ||c||_inf = 1.
  Eigen::VectorXcd cur = best;
  for (int sweep = 0; sweep < 50; ++sweep) {
    bool improved = false;
    for (Eigen::Index j = 0; j < n; ++j) {
      const cplx keep = cur(j);
      cplx pick = keep;
      for (double rho : {0.0, 0.5, 1.0}) {
        for (int a = 0; a < (rho == 0.0 ? 1 : 16); ++a) {
          cur(j) = rho * expi(kTwoPi * a / 16.0);
          if (cur.cwiseAbs().maxCoeff() != 1.0) continue;
          if (consider(cur, "coordinate-descent")) {
            pick = cur(j);
            improved = true;
          }
        }
      }
      cur(j) = pick;
    }
    if (!improved) break;
  }

  out.witness.assign(best.data(), best.data() + n);
  return out;
}

ProgressionCheck progression_union_upper_check(const Generator& gen,
                                               const std::vector<std::pair<double, double>>& progressions) {
  if (progressions.empty()) throw Error(ErrorCode::invalid_argument, "no progressions given");
  ProgressionCheck out;
  const auto support = gen.freq_support();
  std::optional<AmalgamProfile> prof;
  if (!support) prof = wiener_norm(gen, AmalgamMode::freq_squared, 64, 256);
  for (const auto& [alpha, beta] : progressions) {
    (void)beta;
    if (!(alpha > 0.0)) throw Error(ErrorCode::invalid_argument, "alpha must be positive");
    if (prof && prof->divergent) {
      out.bounded = false;
      out.sups.push_back(std::numeric_limits<double>::infinity());
      out.diagnostics.push_back("alpha=" + fmt(alpha) + ": |F^|^2 profile diverges");
      continue;
    }
    const int cells = support
        ? static_cast<int>(std::ceil(std::max(std::abs(support->lo), std::abs(support->hi)) / alpha)) + 2
        : static_cast<int>(std::ceil(64.0 / alpha));
    const auto p = periodization(gen, alpha, 1024, cells);
    out.sups.push_back(p.max_value + p.tail_bound);
    out.diagnostics.push_back("alpha=" + fmt(alpha) + ": sup " + fmt(p.max_value) + ", tail " + fmt(p.tail_bound));
  }
  return out;
}

}  // namespace shiftstab
