#pragma once

#include <span>

#include <Eigen/Core>

namespace avf {

/// One row per class: row j is the learnable center c_j.
using Centers = Eigen::MatrixXd;

struct IslandLossParams {
  double lambda1 = 10.0;  // weight of the pairwise center-similarity term
  double lambda = 0.01;   // weight of the island loss against the softmax loss
  double alpha = 0.5;     // center learning rate, in (0, 1]

  /// Throws kInvalidArgument.
  void validate() const;
};

/// 1/2 sum_i ||x_i - c_{y_i}||^2 + lambda1 * sum_j sum_{k != j} (cos(c_k, c_j) + 1).
/// The double sum runs over ordered pairs. The pairwise term, and the
/// zero-norm check it needs, are skipped when lambda1 == 0.
/// Throws kDimensionMismatch, kLengthMismatch, kUnknownLabel, kZeroNormCenter.
double island_loss(const Eigen::MatrixXd& X, std::span<const int> labels,
                   const Centers& centers, double lambda1);

struct IslandLossGradient {
  Eigen::MatrixXd dX;  // m x d
  Eigen::MatrixXd dC;  // classes x d
};

IslandLossGradient island_loss_grad(const Eigen::MatrixXd& X, std::span<const int> labels,
                                    const Centers& centers, double lambda1);

/// Gradient of sum_j sum_{k != j} (cos(c_k, c_j) + 1) with respect to every
/// center (unweighted by lambda1). Throws kZeroNormCenter.
Eigen::MatrixXd pairwise_cosine_grad(const Centers& centers);

/// c_j <- c_j - alpha * (sum_{i: y_i = j} (c_j - x_i) / (1 + n_j) + lambda1 * g_j)
/// with g_j the pairwise cosine gradient. Classes absent from the batch only
/// move through the pairwise term.
Centers update_centers(const Centers& centers, const Eigen::MatrixXd& X,
                       std::span<const int> labels, double alpha, double lambda1);

}  // namespace avf
