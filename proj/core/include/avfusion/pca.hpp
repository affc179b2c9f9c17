#pragma once

#include <Eigen/Core>

namespace avf {

struct PcaModel {
  Eigen::VectorXd mean;         // d
  Eigen::MatrixXd components;   // q x d, orthonormal rows
  Eigen::VectorXd eigenvalues;  // q, non-increasing, >= 0

  Eigen::Index input_dim() const noexcept { return mean.size(); }
  Eigen::Index output_dim() const noexcept { return components.rows(); }
};

/// Top-q eigenvectors of the sample covariance (divisor n-1) of the rows of X.
/// Each component is signed so its largest-magnitude entry (first on ties) is
/// positive. When q exceeds the covariance rank the trailing rows are an
/// orthonormal completion with eigenvalue 0.
/// Throws kTooFewSamples (n < 2), kInvalidArgument (q outside 1..min(n-1, d)).
PcaModel pca_fit(const Eigen::MatrixXd& X, Eigen::Index q);

/// components * (x - mean). Throws kDimensionMismatch.
Eigen::VectorXd pca_transform(const PcaModel& model, const Eigen::VectorXd& x);
/// Row-wise transform of an n x d matrix.
Eigen::MatrixXd pca_transform_rows(const PcaModel& model, const Eigen::MatrixXd& X);
/// components^T * y + mean.
Eigen::VectorXd pca_reconstruct(const PcaModel& model, const Eigen::VectorXd& y);

}  // namespace avf
