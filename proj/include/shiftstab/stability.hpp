#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shiftstab/generators.hpp"
#include "shiftstab/hermitian.hpp"
#include "shiftstab/interval.hpp"
#include "shiftstab/point_sets.hpp"

namespace shiftstab {

enum class Verdict { stable, unstable, inconclusive };
const char* to_string(Verdict v);

// Finite-section ladder thresholds.
inline constexpr double kLadderFloor = 1e-6;
inline constexpr double kLadderDecay = 10.0;
inline constexpr double kLadderStabilization = 0.05;
/// lambda_min at or below this fraction of lambda_max counts as numerically zero.
inline constexpr double kNumericalZero = 1e-12;

struct LadderRung {
  Interval window;
  std::size_t size = 0;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
};

struct LadderDecision {
  Verdict verdict = Verdict::inconclusive;
  std::string rationale;
};

/// Three-way rule: stable when the last relative change of lambda_min is below 5% and
/// lambda_min stays above 1e-6; unstable when lambda_min decays more than 10x across the
/// ladder and ends below 1e-6 (or ends at numerical zero); inconclusive otherwise.
LadderDecision decide_ladder(const std::vector<LadderRung>& ladder);

/// Nested windows holding the N points of the set closest to 0, one per size.
std::vector<Interval> centered_windows(const PointSet& set, const std::vector<std::size_t>& sizes);

struct PeriodizationProfile {
  double alpha = 1.0;
  int cells = 0;
  std::vector<double> grid;
  std::vector<double> values;
  double tail_bound = 0.0;
  double min_value = 0.0;
  double max_value = 0.0;
  double argmin = 0.0;
  double argmax = 0.0;
};

/// t -> sum_{|k| <= cells} |F^(t + alpha k)|^2 on alpha*i/grid_points, i < grid_points.
PeriodizationProfile periodization(const Generator& gen, double alpha, int grid_points, int cells);

struct IntegerShiftResult {
  Verdict verdict = Verdict::inconclusive;
  /// argmin over b of m(b) = max_{|k| <= K} |F^(b + k)|, refined.
  double witness_b = 0.0;
  double min_m = 0.0;
};

IntegerShiftResult integer_shift_verdict(const Generator& gen, int b_grid, int k_truncation,
                                         double vanish_tolerance);

GramianSection gramian_section(const Generator& gen, const PointSet& set, Interval window);
/// Same, on explicit points.
GramianSection gramian_section(const Generator& gen, const std::vector<double>& points);

struct StabilityReport {
  int p = 2;
  double c1 = 0.0;
  double c2 = 0.0;
  std::vector<LadderRung> ladder;
  Verdict verdict = Verdict::inconclusive;
  std::string rationale;
  bool separated = true;
  /// Largest relative eigen-residual observed (negative when none was checked).
  double max_residual = -1.0;
};

StabilityReport l2_stability_estimate(const Generator& gen, const PointSet& set,
                                      const std::vector<Interval>& windows);

std::vector<cplx> synthesize(const Generator& gen, const std::vector<double>& points,
                             const std::vector<cplx>& coefficients, const std::vector<double>& grid);
/// Coefficients aligned to enumerate(set, window).
std::vector<cplx> synthesize(const Generator& gen, const PointSet& set, Interval window,
                             const std::vector<cplx>& coefficients, const std::vector<double>& grid);

struct NormConsistency {
  double quadratic_form = 0.0;
  double quadrature = 0.0;
  double truncation_bound = 0.0;
};

inline constexpr double kDefaultTruncationLimit = 1e-6;

/// c*Gc next to the Gauss-Legendre integral of |sum c_j F(x - p_j)|^2 over `domain`.
/// The bound on the mass outside `domain` comes from the time-domain amalgam profile;
/// exceeding `truncation_limit` is an unsupported request.
NormConsistency l2_norm_consistency(const Generator& gen, const std::vector<double>& points,
                                    const std::vector<cplx>& coefficients, Interval domain,
                                    double truncation_limit = kDefaultTruncationLimit);

struct LinfSearchResult {
  /// min over tried c with ||c||_inf = 1 of sup_grid |sum c_j F(x - p_j)|.
  double bound = 0.0;
  std::vector<cplx> witness;
  long evaluations = 0;
  std::string best_stage;
};

LinfSearchResult linf_stability_search(const Generator& gen, const std::vector<double>& points,
                                       long budget, std::uint64_t seed, double grid_step = 0.01);

struct ProgressionCheck {
  bool bounded = true;
  std::vector<double> sups;
  std::vector<std::string> diagnostics;
};

/// Periodization maxima for each (alpha_i, beta_i); beta does not enter |F^|^2 sums.
ProgressionCheck progression_union_upper_check(const Generator& gen,
                                               const std::vector<std::pair<double, double>>& progressions);

}  // namespace shiftstab
