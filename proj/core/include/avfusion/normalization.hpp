#pragma once

#include <vector>

#include <Eigen/Core>

namespace avf {

/// Training-split statistics for the first (per-dimension) normalization stage.
struct NormalizationModel {
  Eigen::VectorXd per_dim_mean;
  Eigen::VectorXd per_dim_std;   // population std (divisor n); 0 for constant columns
  std::vector<bool> zero_std;    // true where the training column was constant

  Eigen::Index dim() const noexcept { return per_dim_mean.size(); }
};

/// Throws kTooFewSamples when X has fewer than 2 rows.
NormalizationModel normalize_fit(const Eigen::MatrixXd& X);

/// (x_j - mean_j) / std_j, or 0 for constant training columns.
Eigen::VectorXd normalize_stage1(const NormalizationModel& model, const Eigen::VectorXd& x);

/// Standardizes a vector across its own entries (population std). A vector
/// whose entries are all equal maps to zeros.
Eigen::VectorXd standardize_within(const Eigen::VectorXd& v);

/// Stage 1 followed by stage 2. Throws kDimensionMismatch.
Eigen::VectorXd normalize_apply(const NormalizationModel& model, const Eigen::VectorXd& x);
Eigen::MatrixXd normalize_apply_rows(const NormalizationModel& model, const Eigen::MatrixXd& X);

}  // namespace avf
