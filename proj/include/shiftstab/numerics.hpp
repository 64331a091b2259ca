#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

namespace shiftstab {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// sin(pi x) / (pi x), with the removable singularity filled in.
double sinc(double x);

/// Centered cardinal B-spline of the given order (order-fold convolution of the
/// indicator of [-1/2, 1/2)); support [-order/2, order/2).
double centered_bspline(int order, double t);

/// e^{i theta}
inline cplx expi(double theta) { return {std::cos(theta), std::sin(theta)}; }

/// Composite 20-point Gauss-Legendre rule on [a, b] split into `pieces` equal parts.
template <class F>
auto gauss_legendre(F&& f, double a, double b, int pieces = 1) -> decltype(f(a)) {
  using Rule = boost::math::quadrature::gauss<double, 20>;
  using R = decltype(f(a));
  const auto& x = Rule::abscissa();
  const auto& w = Rule::weights();
  R total{};
  const double h = (b - a) / pieces;
  for (int p = 0; p < pieces; ++p) {
    const double lo = a + p * h;
    const double mid = lo + 0.5 * h;
    const double half = 0.5 * h;
    R part{};
    for (std::size_t i = 0; i < x.size(); ++i) {
      part += w[i] * (f(mid + half * x[i]) + f(mid - half * x[i]));
    }
    total += half * part;
  }
  return total;
}

/// Brent maximization of g on [lo, hi]; returns {argmax, max}. Never worse than the endpoints.
std::pair<double, double> polish_max(const std::function<double(double)>& g, double lo, double hi);

/// Brent minimization of g on [lo, hi]; returns {argmin, min}.
std::pair<double, double> polish_min(const std::function<double(double)>& g, double lo, double hi);

/// Bisection on a predicate that is true at `inside` and false at `outside`; returns the
/// boundary point to within `tol`.
double bisect_boundary(const std::function<bool(double)>& pred, double inside, double outside,
                       double tol = 1e-12);

/// Sign-change bisection of a real function with f(lo) and f(hi) of opposite signs.
double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                   double tol = 1e-12);

}  // namespace shiftstab
