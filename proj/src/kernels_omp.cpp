#include <omp.h>

#include "shiftstab/kernels.hpp"

namespace shiftstab::kernels {

void set_threads(int n) {
  if (n > 0) omp_set_num_threads(n);
}

int max_threads() { return omp_get_max_threads(); }

std::vector<double> cell_maxima(const RealFn& g, int first_cell, int cells, int probes, bool polish) {
  std::vector<double> out(cells);
#pragma omp parallel for schedule(dynamic)
  for (int c = 0; c < cells; ++c) out[c] = detail::cell_maximum(g, first_cell + c, probes, polish);
  return out;
}

std::vector<double> periodization_values(const ComplexFn& fhat, double alpha,
                                         std::span<const double> grid, int cells) {
  const auto n = static_cast<long>(grid.size());
  std::vector<double> out(grid.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) out[i] = detail::periodization_at(fhat, alpha, grid[i], cells);
  return out;
}

Eigen::MatrixXcd hermitian_fill(std::span<const double> points, const ComplexFn& entry) {
  const auto n = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXcd h(n, n);
  const double diag = entry(0.0).real();
#pragma omp parallel for schedule(dynamic)
  for (Eigen::Index i = 0; i < n; ++i) {
    h(i, i) = cplx(diag, 0.0);
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
  const auto n = static_cast<long>(grid.size());
  std::vector<cplx> out(grid.size());
#pragma omp parallel for schedule(static)
  for (long g = 0; g < n; ++g) out[g] = detail::synthesis_at(f, points, coefficients, grid[g]);
  return out;
}

Eigen::MatrixXcd sample_matrix(const ComplexFn& f, std::span<const double> grid,
                               std::span<const double> points) {
  const auto rows = static_cast<long>(grid.size());
  Eigen::MatrixXcd phi(grid.size(), points.size());
#pragma omp parallel for schedule(static)
  for (long g = 0; g < rows; ++g)
    for (std::size_t j = 0; j < points.size(); ++j) phi(g, j) = f(grid[g] - points[j]);
  return phi;
}

}  // namespace shiftstab::kernels
