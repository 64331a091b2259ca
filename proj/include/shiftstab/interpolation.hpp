#pragma once

#include <optional>
#include <string>
#include <vector>

#include "shiftstab/generators.hpp"
#include "shiftstab/hermitian.hpp"
#include "shiftstab/interval.hpp"
#include "shiftstab/point_sets.hpp"
#include "shiftstab/stability.hpp"

namespace shiftstab {

enum class Answer { yes, no, inconclusive };
const char* to_string(Answer a);

enum class InterpolationMethod { density, gram_ladder };
const char* to_string(InterpolationMethod m);

struct InterpolationReport {
  Answer verdict = Answer::inconclusive;
  InterpolationMethod method = InterpolationMethod::density;
  std::vector<LadderRung> ladder;
  std::optional<DensityEstimate> densities;
  std::string rationale;
};

/// M[i][j] = integral over S of e^{2 pi i (g_i - g_j) t} dt; diagonal = |S|.
GramianSection exponential_gram(const std::vector<double>& points, const SpectrumSet& spectrum);
GramianSection exponential_gram(const PointSet& set, const SpectrumSet& spectrum, Interval window);

/// Radii used for density ladders when the caller gives none.
inline const std::vector<double> kDefaultDensityRadii{10.0, 20.0, 50.0, 100.0};

/// Density dichotomy for PW_(a,b): yes when D+ + margin < b - a, no when the D+ estimate
/// minus margin exceeds b - a, inconclusive otherwise (including equality).
InterpolationReport interpolation_verdict_interval(const PointSet& set, Interval ab, double margin,
                                                   const std::vector<double>& radii = kDefaultDensityRadii,
                                                   int offset_probes = 64);

/// Exponential-Gram ladder; yes/no/inconclusive by the finite-section ladder rule.
InterpolationReport interpolation_lower_bound(const PointSet& set, const SpectrumSet& spectrum,
                                              const std::vector<Interval>& windows);

struct RScanRow {
  double r = 0.0;
  SpectrumSet level_set;
  InterpolationReport report;
};

struct RScanReport {
  std::vector<RScanRow> rows;
  Verdict overall = Verdict::inconclusive;
  StabilityReport direct;
  /// True when both pathways are conclusive and agree, or at least one is inconclusive.
  bool consistent = true;
  std::string rationale;
};

/// 8 log-spaced levels from 0.01 to 0.9 times sup |F^|.
std::vector<double> default_r_grid(const Generator& gen);

/// Frequency window outside which |F^| <= r everywhere.
Interval level_window(const Generator& gen, double r);

inline constexpr double kLevelSetStep = 1e-3;

RScanReport stability_r_scan(const Generator& gen, const PointSet& set, const std::vector<double>& r_grid,
                             const std::vector<Interval>& windows, double level_step = kLevelSetStep);

}  // namespace shiftstab
