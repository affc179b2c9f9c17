#include "avfusion/island_loss.hpp"

#include <string>

#include "avfusion/error.hpp"

namespace avf {
namespace {

void check_batch(const Eigen::MatrixXd& X, std::span<const int> labels, const Centers& centers) {
  if (X.cols() != centers.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "features have " + std::to_string(X.cols()) +
                                                   " dims, centers " +
                                                   std::to_string(centers.cols()));
  }
  if (static_cast<Eigen::Index>(labels.size()) != X.rows()) {
    throw Error(ErrorCode::kLengthMismatch, std::to_string(labels.size()) + " labels for " +
                                                std::to_string(X.rows()) + " rows");
  }
  for (int y : labels) {
    if (y < 0 || y >= centers.rows()) {
      throw Error(ErrorCode::kUnknownLabel, "class " + std::to_string(y) + " has no center");
    }
  }
}

Eigen::VectorXd center_norms(const Centers& centers) {
  Eigen::VectorXd norms = centers.rowwise().norm();
  for (Eigen::Index j = 0; j < norms.size(); ++j) {
    if (!(norms[j] > 0.0)) {
      throw Error(ErrorCode::kZeroNormCenter, "center " + std::to_string(j));
    }
  }
  return norms;
}

}  // namespace

void IslandLossParams::validate() const {
  if (!(lambda1 >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "lambda1 must be >= 0");
  if (!(lambda >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "lambda must be >= 0");
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "alpha must be in (0, 1]");
  }
}

double island_loss(const Eigen::MatrixXd& X, std::span<const int> labels,
                   const Centers& centers, double lambda1) {
  check_batch(X, labels, centers);
  double center_term = 0.0;
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    center_term += (X.row(i) - centers.row(labels[static_cast<std::size_t>(i)])).squaredNorm();
  }
  center_term *= 0.5;
  if (lambda1 == 0.0) return center_term;

  const Eigen::VectorXd norms = center_norms(centers);
  double pair_term = 0.0;
  for (Eigen::Index j = 0; j < centers.rows(); ++j) {
    for (Eigen::Index k = 0; k < centers.rows(); ++k) {
      if (k == j) continue;
      pair_term += centers.row(k).dot(centers.row(j)) / (norms[k] * norms[j]) + 1.0;
    }
  }
  return center_term + lambda1 * pair_term;
}

Eigen::MatrixXd pairwise_cosine_grad(const Centers& centers) {
  const Eigen::VectorXd norms = center_norms(centers);
  Eigen::MatrixXd grad = Eigen::MatrixXd::Zero(centers.rows(), centers.cols());
  for (Eigen::Index j = 0; j < centers.rows(); ++j) {
    for (Eigen::Index k = 0; k < centers.rows(); ++k) {
      if (k == j) continue;
      const double cos = centers.row(k).dot(centers.row(j)) / (norms[k] * norms[j]);
      // d cos(c_k, c_j) / d c_j; both orderings (j,k) and (k,j) contribute it.
      grad.row(j) += 2.0 * (centers.row(k) / (norms[k] * norms[j]) -
                            cos * centers.row(j) / (norms[j] * norms[j]));
    }
  }
  return grad;
}

IslandLossGradient island_loss_grad(const Eigen::MatrixXd& X, std::span<const int> labels,
                                    const Centers& centers, double lambda1) {
  check_batch(X, labels, centers);
  IslandLossGradient g;
  g.dX.resize(X.rows(), X.cols());
  g.dC = Eigen::MatrixXd::Zero(centers.rows(), centers.cols());
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    const int y = labels[static_cast<std::size_t>(i)];
    g.dX.row(i) = X.row(i) - centers.row(y);
    g.dC.row(y) -= g.dX.row(i);
  }
  if (lambda1 != 0.0) g.dC += lambda1 * pairwise_cosine_grad(centers);
  return g;
}

Centers update_centers(const Centers& centers, const Eigen::MatrixXd& X,
                       std::span<const int> labels, double alpha, double lambda1) {
  check_batch(X, labels, centers);
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "alpha must be in (0, 1]");
  }
  Eigen::MatrixXd delta = Eigen::MatrixXd::Zero(centers.rows(), centers.cols());
  Eigen::VectorXd counts = Eigen::VectorXd::Zero(centers.rows());
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    const int y = labels[static_cast<std::size_t>(i)];
    delta.row(y) += centers.row(y) - X.row(i);
    counts[y] += 1.0;
  }
  for (Eigen::Index j = 0; j < centers.rows(); ++j) delta.row(j) /= 1.0 + counts[j];
  if (lambda1 != 0.0) delta += lambda1 * pairwise_cosine_grad(centers);
  return centers - alpha * delta;
}

}  // namespace avf
