#pragma once

#include <vector>

#include <Eigen/Dense>

namespace shiftstab {

/// Sections up to this size get eigenvectors and a residual check.
inline constexpr Eigen::Index kResidualCheckLimit = 1024;
/// Largest section the tool builds.
inline constexpr std::size_t kMaxSectionPoints = 4096;
/// Residual contract ||Hv - lambda v|| <= kResidualTolerance * ||H||.
inline constexpr double kResidualTolerance = 1e-8;

struct ExtremalEigen {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  /// Unit eigenvector for lambda_min (empty when the section is too large).
  Eigen::VectorXcd v_min;
  /// max over both extremal pairs of ||Hv - lambda v|| / ||H||; negative when not checked.
  double relative_residual = -1.0;
  /// Spectral norm max(|lambda_min|, |lambda_max|).
  double norm = 0.0;

  bool residual_checked() const { return relative_residual >= 0.0; }
  bool residual_ok() const { return !residual_checked() || relative_residual <= kResidualTolerance; }
};

ExtremalEigen extremal_eigenvalues(const Eigen::MatrixXcd& h);

/// Finite Hermitian section: Gramian of translates or exponential Gram.
struct GramianSection {
  std::vector<double> points;
  Eigen::MatrixXcd entries;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  ExtremalEigen eigen;
};

/// max_{i,j} |H_ij - conj(H_ji)|
double hermitian_defect(const Eigen::MatrixXcd& h);

}  // namespace shiftstab
