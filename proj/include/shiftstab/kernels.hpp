#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "shiftstab/numerics.hpp"

// Data-parallel inner loops. Every kernel has an OpenMP version (namespace
// `kernels`) and a serial reference (namespace `kernels::serial`). Each output
// element is computed by the same expression in both, and all reductions run in a
// fixed order inside one element, so the two agree bit for bit.

namespace shiftstab::kernels {

using RealFn = std::function<double(double)>;
using ComplexFn = std::function<cplx(double)>;

/// Sets the OpenMP thread count; n <= 0 leaves the runtime default.
void set_threads(int n);
int max_threads();

/// Per-cell maxima of g over cells [first_cell + c, first_cell + c + 1): probes
/// at k + i/probes (i = 0..probes, both edges included), then a Brent polish around
/// the best probe when `polish` is set.
std::vector<double> cell_maxima(const RealFn& g, int first_cell, int cells, int probes, bool polish);

/// sum_{k=-cells..cells} |fhat(t + alpha k)|^2 at each grid point.
std::vector<double> periodization_values(const ComplexFn& fhat, double alpha,
                                         std::span<const double> grid, int cells);

/// Hermitian matrix H[i][j] = entry(points[i] - points[j]); the lower triangle is
/// the conjugate of the upper one and the diagonal is real.
Eigen::MatrixXcd hermitian_fill(std::span<const double> points, const ComplexFn& entry);

/// f(x_g) = sum_j c_j F(x_g - p_j).
std::vector<cplx> synthesize(const ComplexFn& f, std::span<const double> points,
                             std::span<const cplx> coefficients, std::span<const double> grid);

/// Phi[g][j] = F(x_g - p_j).
Eigen::MatrixXcd sample_matrix(const ComplexFn& f, std::span<const double> grid,
                               std::span<const double> points);

namespace serial {
std::vector<double> cell_maxima(const RealFn& g, int first_cell, int cells, int probes, bool polish);
std::vector<double> periodization_values(const ComplexFn& fhat, double alpha,
                                         std::span<const double> grid, int cells);
Eigen::MatrixXcd hermitian_fill(std::span<const double> points, const ComplexFn& entry);
std::vector<cplx> synthesize(const ComplexFn& f, std::span<const double> points,
                             std::span<const cplx> coefficients, std::span<const double> grid);
Eigen::MatrixXcd sample_matrix(const ComplexFn& f, std::span<const double> grid,
                               std::span<const double> points);
}  // namespace serial

namespace detail {
// Shared per-element bodies; both variants call exactly these.
double cell_maximum(const RealFn& g, int cell, int probes, bool polish);
double periodization_at(const ComplexFn& fhat, double alpha, double t, int cells);
cplx synthesis_at(const ComplexFn& f, std::span<const double> points,
                  std::span<const cplx> coefficients, double x);
}  // namespace detail

}  // namespace shiftstab::kernels
