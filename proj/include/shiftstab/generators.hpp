#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "shiftstab/interval.hpp"
#include "shiftstab/numerics.hpp"

namespace shiftstab {

/// A generator F with time-domain, frequency-domain and autocorrelation access.
///
/// Conventions: F^(t) = integral of e^{-2 pi i x t} F(x) dx; autocorrelation is
/// (F * F~)(x) with F~(x) = conj(F(-x)), whose Fourier transform is |F^|^2.
class Generator {
 public:
  /// sin(pi x)/(pi x); F^ is the indicator of [-1/2, 1/2).
  struct Sinc {};
  /// sinc(x)^n; F^ is the centered B-spline of order n.
  struct SincPower {
    int n = 2;
  };
  /// exp(-pi x^2 / sigma^2); F^(t) = sigma exp(-pi sigma^2 t^2). Self-dual at sigma = 1.
  struct Gaussian {
    double sigma = 1.0;
  };
  /// Centered B-spline of the given order in time; F^ = sinc^order.
  struct BSpline {
    int order = 2;
  };
  /// Samples on origin + j*step. Linear interpolation in time (zero outside the sample
  /// extent); F^ is the trapezoidal quadrature of the Fourier integral over that extent,
  /// multiplied by the indicator of the declared frequency support when one is given.
  struct Sampled {
    double step = 1.0;
    double origin = 0.0;
    std::vector<cplx> samples;
    std::optional<Interval> freq_support;
  };
  struct Term {
    cplx coefficient;
    double shift = 0.0;
  };
  /// sum_j c_j base(x - s_j).
  struct Combination {
    std::shared_ptr<const Generator> base;
    std::vector<Term> terms;
  };

  using Kind = std::variant<Sinc, SincPower, Gaussian, BSpline, Sampled, Combination>;

  static Generator sinc();
  static Generator sinc_power(int n);
  static Generator gaussian(double sigma);
  static Generator bspline(int order);
  static Generator sampled(double step, double origin, std::vector<cplx> samples,
                           std::optional<Interval> freq_support = std::nullopt);
  static Generator combination(Generator base, std::vector<Term> terms);

  const Kind& kind() const { return kind_; }
  std::string describe() const;

  /// Interval outside which F^ vanishes identically, when known in closed form.
  std::optional<Interval> freq_support() const;
  /// True when F^ is continuous everywhere (Sinc and Sampled-with-support are not).
  bool continuous_freq() const;
  /// True when F is continuous in time.
  bool continuous_time() const;
  /// Real, even |F^|^2 (so the autocorrelation is real).
  bool real_even_autocorrelation() const;

 private:
  explicit Generator(Kind kind) : kind_(std::move(kind)) {}
  Kind kind_;
};

cplx eval_time(const Generator& gen, double x);
cplx eval_freq(const Generator& gen, double t);

enum class AmalgamMode { time_domain, freq_squared };

/// Per-unit-cell suprema of |F| (time_domain) or |F^|^2 (freq_squared) over cells
/// [k, k+1), k = first_cell .. first_cell + size - 1.
struct AmalgamProfile {
  AmalgamMode mode = AmalgamMode::time_domain;
  int first_cell = 0;
  std::vector<double> cell_sups;
  /// Sum over retained cells.
  double total = 0.0;
  /// Estimate of the discarded remainder; +inf when divergent.
  double tail = 0.0;
  /// Partial sums failed the doubling (Cauchy) test.
  bool divergent = false;
  /// Partial sums at cells/4, cells/2, cells (those that exist).
  std::vector<double> partial_sums;

  double upper_bound() const { return total + tail; }
  /// Sup over cells k with |k| >= from (cell index of k measured as its nearest edge to 0).
  double sup_beyond(double from) const;
  /// Sum of sups over cells lying entirely in |x| >= from, plus the tail estimate.
  double sum_beyond(double from) const;
};

/// Relative increment above which a doubling counts as non-convergent.
inline constexpr double kAmalgamCauchyThreshold = 0.01;
/// Default probe density for profiles.
inline constexpr int kDefaultProbesPerCell = 4096;

AmalgamProfile wiener_norm(const Generator& gen, AmalgamMode mode, int cells, int probes_per_cell);

/// (F * F~)(x).
cplx autocorrelation(const Generator& gen, double x);

struct QuadratureValue {
  cplx value;
  /// Bound on the frequency truncation error (0 for closed forms and compact support).
  double tail_bound = 0.0;
};
QuadratureValue autocorrelation_with_bound(const Generator& gen, double x);

struct FreqZeroSet {
  Interval window;
  /// Isolated zeros, strictly increasing.
  std::vector<double> zeros;
  /// Maximal intervals on which |F^| stays below the tolerance.
  std::vector<Interval> null_intervals;
  /// Isolated-zero counts on unit cells [first_cell + i, first_cell + i + 1).
  int first_cell = 0;
  std::vector<int> per_unit_counts;
  bool locally_finite = true;
};

FreqZeroSet freq_zero_set(const Generator& gen, Interval window, double step, double tolerance,
                          int per_unit_cap = 100);

/// {t in window : |F^(t)| > r} as a union of intervals, boundaries refined to 1e-12.
SpectrumSet level_set(const Generator& gen, double r, Interval window, double step);

/// sup |F^| estimated over the support (or [-64, 64] when unbounded).
double freq_sup(const Generator& gen);

}  // namespace shiftstab
