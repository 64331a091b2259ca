#pragma once

// Independent reference computations for the tests. Nothing here calls into the
// library: eigenvalues come from a cyclic Jacobi sweep, integrals from Simpson's rule,
// convolutions and zero sets from brute-force grids.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cplx = std::complex<double>;
inline constexpr double pi = std::numbers::pi;

inline double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(pi * x) / (pi * x); }

inline double triangle(double t) { return std::max(0.0, 1.0 - std::abs(t)); }

/// Eigenvalues (ascending) of a Hermitian matrix via the real symmetric embedding
/// [[A, -B], [B, A]] and cyclic Jacobi rotations. Each eigenvalue appears twice in the
/// embedding; one copy of each is returned.
inline std::vector<double> jacobi_eigenvalues(const Eigen::MatrixXcd& h, double tol = 1e-15) {
  const auto n = h.rows();
  Eigen::MatrixXd m(2 * n, 2 * n);
  m << h.real(), -h.imag(), h.imag(), h.real();
  const auto N = m.rows();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < N; ++p)
      for (Eigen::Index q = p + 1; q < N; ++q) off += m(p, q) * m(p, q);
    if (std::sqrt(off) < tol * std::max(1.0, m.norm())) break;
    for (Eigen::Index p = 0; p < N; ++p) {
      for (Eigen::Index q = p + 1; q < N; ++q) {
        if (std::abs(m(p, q)) < 1e-300) continue;
        const double theta = (m(q, q) - m(p, p)) / (2.0 * m(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (Eigen::Index k = 0; k < N; ++k) {
          const double mkp = m(k, p), mkq = m(k, q);
          m(k, p) = c * mkp - s * mkq;
          m(k, q) = s * mkp + c * mkq;
        }
        for (Eigen::Index k = 0; k < N; ++k) {
          const double mpk = m(p, k), mqk = m(q, k);
          m(p, k) = c * mpk - s * mqk;
          m(q, k) = s * mpk + c * mqk;
        }
      }
    }
  }
  std::vector<double> ev(static_cast<std::size_t>(N));
  for (Eigen::Index i = 0; i < N; ++i) ev[static_cast<std::size_t>(i)] = m(i, i);
  std::sort(ev.begin(), ev.end());
  std::vector<double> out;
  for (std::size_t i = 0; i < ev.size(); i += 2) out.push_back(ev[i]);
  return out;
}

/// Composite Simpson rule with n (even) panels.
template <class F>
auto simpson(F&& f, double a, double b, int n) -> decltype(f(a)) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  auto s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * (h / 3.0);
}

/// n-fold convolution of the indicator of [-1/2, 1/2), sampled on a grid of step h
/// by discrete midpoint convolution; linear interpolation between grid values.
class IndicatorConvolution {
 public:
  IndicatorConvolution(int n, double h) : h_(h) {
    const int w = static_cast<int>(std::lround(1.0 / h));
    std::vector<double> box(static_cast<std::size_t>(w), 1.0);
    values_ = box;
    origin_ = -0.5 + 0.5 * h;  // first midpoint
    for (int k = 1; k < n; ++k) {
      std::vector<double> next(values_.size() + box.size() - 1, 0.0);
      for (std::size_t i = 0; i < values_.size(); ++i)
        for (std::size_t j = 0; j < box.size(); ++j) next[i + j] += values_[i] * h;
      values_ = std::move(next);
      origin_ += -0.5 + 0.5 * h;
    }
  }
  double operator()(double t) const {
    const double u = (t - origin_) / h_;
    if (u < 0.0 || u > static_cast<double>(values_.size() - 1)) return 0.0;
    const auto i = static_cast<std::size_t>(std::floor(u));
    if (i + 1 >= values_.size()) return values_.back();
    const double f = u - static_cast<double>(i);
    return (1 - f) * values_[i] + f * values_[i + 1];
  }

 private:
  double h_;
  double origin_ = 0.0;
  std::vector<double> values_;
};

/// sum_k Lambda(t + k)^2 (the periodized |F^|^2 of sinc^2).
inline double periodized_triangle_sq(double t) {
  double s = 0.0;
  for (int k = -3; k <= 3; ++k) s += triangle(t + k) * triangle(t + k);
  return s;
}

/// sum_{|k| <= K} sinc^4(t + k)
inline double periodized_sinc4(double t, int K = 4000) {
  double s = 0.0;
  for (int k = -K; k <= K; ++k) s += std::pow(sinc(t + k), 4);
  return s;
}

/// integral of f(y) conj(f(y - x)) over [-L, L] by Simpson.
inline cplx autocorrelation(const std::function<cplx(double)>& f, double x, double L, int panels) {
  return simpson([&](double y) { return f(y) * std::conj(f(y - x)); }, -L, L, panels);
}

inline double h_ab(double a, double b, double z) { return std::sin(pi * z + a) - 0.5 * std::sin(z + b); }

/// Sign-change scan plus bisection on a uniform grid; returns sorted zeros.
inline std::vector<double> trig_zeros(double a, double b, double lo, double hi, double step = 1e-4) {
  std::vector<double> z;
  double x0 = lo, f0 = h_ab(a, b, x0);
  if (f0 == 0.0) z.push_back(x0);
  const auto n = static_cast<long>(std::ceil((hi - lo) / step));
  for (long i = 1; i <= n; ++i) {
    const double x1 = std::min(hi, lo + i * step), f1 = h_ab(a, b, x1);
    if (f1 == 0.0) {
      z.push_back(x1);
    } else if (f0 != 0.0 && (f0 < 0) != (f1 < 0)) {
      double l = x0, r = x1, fl = f0;
      for (int it = 0; it < 200 && r - l > 1e-15; ++it) {
        const double m = 0.5 * (l + r), fm = h_ab(a, b, m);
        if ((fm < 0) == (fl < 0)) {
          l = m;
          fl = fm;
        } else {
          r = m;
        }
      }
      z.push_back(0.5 * (l + r));
    }
    x0 = x1;
    f0 = f1;
  }
  return z;
}

/// sum_n e^{-pi s^2 n^2} shifted by u: sum_n e^{-pi (n + u)^2 / s^2}.
inline double theta_shifted(double u, double s, int K = 60) {
  double t = 0.0;
  for (int n = -K; n <= K; ++n) t += std::exp(-pi * (n + u) * (n + u) / (s * s));
  return t;
}

}  // namespace oracle
