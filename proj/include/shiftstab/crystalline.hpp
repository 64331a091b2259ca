#pragma once

#include <string>
#include <vector>

#include "shiftstab/generators.hpp"
#include "shiftstab/interval.hpp"
#include "shiftstab/numerics.hpp"

namespace shiftstab {

struct ExpTerm {
  cplx coefficient;
  /// In [0, 1) after canonicalization.
  double frequency = 0.0;
};

struct CombComponent {
  /// In [0, period) after canonicalization.
  double offset = 0.0;
  std::vector<ExpTerm> terms;
};

/// mu = sum_k sum_n P_k(n) delta_{a n + x_k} with P_k(n) = sum_j c_j e^{2 pi i w_j n}.
struct PoissonComb {
  double period = 1.0;
  std::vector<CombComponent> components;
};

/// Offset/frequency merge tolerance.
inline constexpr double kCombMergeTolerance = 1e-10;

/// Reduces offsets to [0, a) and frequencies to [0, 1), merges coincident offsets and
/// frequencies, drops zero terms, sorts. Validates the period.
PoissonComb canonicalize(PoissonComb comb);

PoissonComb dirac_comb(double period = 1.0);
/// sum_n (-1)^n delta_{a n}.
PoissonComb alternating_comb(double period = 1.0);

/// Closed-form Fourier transform: period 1/a, offsets w/a, coefficients (c/a) e^{-2 pi i x w / a},
/// frequencies frac(-x/a).
PoissonComb comb_fourier(const PoissonComb& comb);

struct Atom {
  double position = 0.0;
  cplx weight;
};

/// Atoms in the closed window, sorted by position; coincident atoms merged.
std::vector<Atom> comb_atoms(const PoissonComb& comb, Interval window);

/// sup_n |P_k(n)| <= sum_j |c_j|, maximized over components.
double coefficient_bound(const PoissonComb& comb);

/// Gaussian-type test function with closed-form transform.
/// F(x) = e^{2 pi i m x} e^{-pi (x - c)^2 / s^2}, F^(t) = s e^{-pi s^2 (t - m)^2} e^{-2 pi i (t - m) c}.
struct TestFunction {
  double sigma = 1.0;
  double center = 0.0;
  double modulation = 0.0;

  static TestFunction gaussian(double sigma);
  static TestFunction modulated(double sigma, double center, double modulation);
  cplx time(double x) const;
  cplx freq(double t) const;
  std::string id() const;
};

struct CrystallineCheckReport {
  int truncation = 0;
  cplx left;
  cplx right;
  double residual = 0.0;
  std::string test_id;
};

/// sum over atoms of mu in [-N, N] of coef * F^(atom)  vs  sum over atoms of mu^ in [-N, N] of coef * F(atom).
CrystallineCheckReport verify_poisson(const PoissonComb& comb, const TestFunction& test, int truncation);

struct VanishingResidual {
  double residual = 0.0;
  /// sup_x over the probe range of the dropped atoms' contribution.
  double interior_tail_bound = 0.0;
  /// ||F||_W * sup|c|
  double crude_tail_bound = 0.0;
};

/// sup over `probes` of |sum over atoms gamma in [-N, N] of c_gamma F(x - gamma)|.
VanishingResidual vanishing_combination_residual(const Generator& gen, const PoissonComb& comb, int truncation,
                                                 const std::vector<double>& probes);

struct TrigZeroReport {
  std::vector<double> points;
  double separation = 0.0;
  bool has_separation = false;
  int first_cell = 0;
  std::vector<int> per_unit_counts;
};

TrigZeroReport trig_zero_set(double a, double b, Interval window);

struct ApHits {
  std::size_t count = 0;
  std::vector<double> hits;
};

/// Points within eps of alpha Z + beta; needs eps < alpha/2.
ApHits ap_intersection_diagnostic(const std::vector<double>& points, double alpha, double beta, double eps);

}  // namespace shiftstab
