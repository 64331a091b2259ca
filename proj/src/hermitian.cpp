#include "shiftstab/hermitian.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "shiftstab/error.hpp"

namespace shiftstab {

ExtremalEigen extremal_eigenvalues(const Eigen::MatrixXcd& h) {
  if (h.rows() == 0 || h.rows() != h.cols())
    throw Error(ErrorCode::invalid_argument, "eigenvalues need a nonempty square matrix");
  const Eigen::Index n = h.rows();
  const bool vectors = n <= kResidualCheckLimit;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      h, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::invalid_argument, "Hermitian eigensolver did not converge");

  ExtremalEigen out;
  const auto& ev = solver.eigenvalues();
  out.lambda_min = ev(0);
  out.lambda_max = ev(n - 1);
  out.norm = std::max(std::abs(out.lambda_min), std::abs(out.lambda_max));
  if (vectors) {
    out.v_min = solver.eigenvectors().col(0);
    const Eigen::VectorXcd v_max = solver.eigenvectors().col(n - 1);
    const double r_min = (h * out.v_min - out.lambda_min * out.v_min).norm();
    const double r_max = (h * v_max - out.lambda_max * v_max).norm();
    out.relative_residual = out.norm > 0.0 ? std::max(r_min, r_max) / out.norm : std::max(r_min, r_max);
  }
  return out;
}

double hermitian_defect(const Eigen::MatrixXcd& h) {
  return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace shiftstab
