#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "shiftstab/interval.hpp"

namespace shiftstab {

/// Parametric separated set Gamma on the real line.
class PointSet {
 public:
  /// offset + a*Z
  struct Lattice {
    double step = 1.0;
    double offset = 0.0;
  };
  struct Progression {
    double step = 1.0;
    double offset = 0.0;
  };
  /// Union of offset_i + step_i*Z, coincident points merged.
  struct UnionOfProgressions {
    std::vector<Progression> progressions;
  };
  /// offset + n*step + delta*sin(omega*n + phase), |delta| < step/2.
  struct PerturbedLattice {
    double step = 1.0;
    double delta = 0.0;
    double omega = 1.0;
    double phase = 0.0;
    double offset = 0.0;
  };
  /// Zero set of h_{a,b}(z) = sin(pi z + a) - sin(z + b)/2.
  struct TrigZeroSet {
    double a = 0.0;
    double b = 0.0;
  };
  struct Explicit {
    std::vector<double> points;
  };

  using Kind = std::variant<Lattice, UnionOfProgressions, PerturbedLattice, TrigZeroSet, Explicit>;

  static PointSet lattice(double step, double offset = 0.0);
  static PointSet union_of_progressions(std::vector<Progression> progressions);
  static PointSet perturbed_lattice(double step, double delta, double omega = 1.0, double phase = 0.0,
                                    double offset = 0.0);
  static PointSet trig_zero_set(double a, double b);
  static PointSet explicit_points(std::vector<double> points);

  const Kind& kind() const { return kind_; }
  std::string describe() const;

 private:
  explicit PointSet(Kind kind) : kind_(std::move(kind)) {}
  Kind kind_;
};

/// Longest window enumerate() accepts.
inline constexpr double kMaxWindowLength = 1e6;
/// Most points a single enumeration may produce.
inline constexpr std::size_t kMaxEnumeratedPoints = 20'000'000;
/// Coincidence tolerance when merging progressions.
inline constexpr double kMergeTolerance = 1e-12;

double h_ab(double a, double b, double z);

/// Points of the set in the closed window, strictly increasing.
std::vector<double> enumerate(const PointSet& set, Interval window);

/// Minimum consecutive gap in the window; nullopt when fewer than two points.
std::optional<double> separation_constant(const PointSet& set, Interval window);

/// False for unions whose steps fall into more than one commensurability class:
/// such unions have points arbitrarily close together.
bool is_separated(const PointSet& set);

struct DensityRung {
  double radius = 0.0;
  double sup_ratio = 0.0;
  double inf_ratio = 0.0;
};

struct DensityEstimate {
  double upper = 0.0;
  double lower = 0.0;
  std::vector<DensityRung> ladder;
  bool exact = false;
};

/// Window-count ratios #(Gamma cap (x, x+r))/r for offsets x spread uniformly over
/// [center - L, center + L], L = 5 max(r). Lattices and commensurable unions get
/// their closed-form density with the exact flag.
DensityEstimate beurling_densities(const PointSet& set, const std::vector<double>& radii,
                                   int offset_probes, double center = 0.0);

/// Closed-form density when available (Lattice, UnionOfProgressions).
std::optional<double> exact_density(const PointSet& set);

/// Gamma - x, kept parametric.
PointSet translate_set(const PointSet& set, double x);

struct WeakLimitOrbit {
  /// Distinct orbit points (a + pi k s, b + k s) mod 2 pi, k = 0..K.
  std::vector<std::pair<double, double>> orbit;
  /// Largest torus distance from a grid node to the nearest orbit point.
  double covering_radius = 0.0;
};

/// Orbit of the h_{a,b} parameters under translations x_k = k*s.
WeakLimitOrbit weak_limit_params(const PointSet& set, double s, int k_max, int torus_grid = 512);

/// x mod 2 pi in [0, 2 pi).
double wrap_two_pi(double x);

}  // namespace shiftstab
