#include <algorithm>
#include <cmath>

#include "shiftstab/kernels.hpp"

namespace shiftstab::kernels {

namespace detail {

double cell_maximum(const RealFn& g, int cell, int probes, bool polish) {
  const double h = 1.0 / probes;
  double best = -1.0;
  int best_i = 0;
  for (int i = 0; i <= probes; ++i) {
    const double v = g(cell + i * h);
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  if (polish) {
    const double lo = cell + std::max(0, best_i - 1) * h;
    const double hi = cell + std::min(probes, best_i + 1) * h;
    best = std::max(best, polish_max(g, lo, hi).second);
  }
  return best;
}

double periodization_at(const ComplexFn& fhat, double alpha, double t, int cells) {
  double s = 0.0;
  for (int k = -cells; k <= cells; ++k) s += std::norm(fhat(t + alpha * k));
  return s;
}

cplx synthesis_at(const ComplexFn& f, std::span<const double> points,
                  std::span<const cplx> coefficients, double x) {
  cplx s{};
  for (std::size_t j = 0; j < points.size(); ++j) {
    if (coefficients[j] != cplx{}) s += coefficients[j] * f(x - points[j]);
  }
  return s;
}

}  // namespace detail

namespace serial {

std::vector<double> cell_maxima(const RealFn& g, int first_cell, int cells, int probes, bool polish) {
  std::vector<double> out(cells);
  for (int c = 0; c < cells; ++c) out[c] = detail::cell_maximum(g, first_cell + c, probes, polish);
  return out;
}

std::vector<double> periodization_values(const ComplexFn& fhat, double alpha,
                                         std::span<const double> grid, int cells) {
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    out[i] = detail::periodization_at(fhat, alpha, grid[i], cells);
  return out;
}

Eigen::MatrixXcd hermitian_fill(std::span<const double> points, const ComplexFn& entry) {
  const auto n = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXcd h(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    h(i, i) = cplx(entry(0.0).real(), 0.0);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const cplx v = entry(points[i] - points[j]);
      h(i, j) = v;
      h(j, i) = std::conj(v);
    }
  }
  return h;
}

std::vector<cplx> synthesize(const ComplexFn& f, std::span<const double> points,
                             std::span<const cplx> coefficients, std::span<const double> grid) {
  std::vector<cplx> out(grid.size());
  for (std::size_t g = 0; g < grid.size(); ++g)
    out[g] = detail::synthesis_at(f, points, coefficients, grid[g]);
  return out;
}

Eigen::MatrixXcd sample_matrix(const ComplexFn& f, std::span<const double> grid,
                               std::span<const double> points) {
  Eigen::MatrixXcd phi(grid.size(), points.size());
  for (std::size_t g = 0; g < grid.size(); ++g)
    for (std::size_t j = 0; j < points.size(); ++j) phi(g, j) = f(grid[g] - points[j]);
  return phi;
}

}  // namespace serial
}  // namespace shiftstab::kernels
