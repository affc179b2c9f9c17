#include "avfusion/pca.hpp"

#include <algorithm>
#include <string>

#include <Eigen/Eigenvalues>

#include "avfusion/error.hpp"
#include "avfusion/types.hpp"

namespace avf {

PcaModel pca_fit(const Eigen::MatrixXd& X, Eigen::Index q) {
  const Eigen::Index n = X.rows();
  const Eigen::Index d = X.cols();
  if (n < 2) throw Error(ErrorCode::kTooFewSamples, "PCA needs >= 2 rows, got " + std::to_string(n));
  if (q < 1 || q > std::min(n - 1, d)) {
    throw Error(ErrorCode::kInvalidArgument,
                "PCA components " + std::to_string(q) + " outside 1.." +
                    std::to_string(std::min(n - 1, d)));
  }
  require_finite(X, "PCA input");

  PcaModel model;
  model.mean = X.colwise().mean().transpose();
  const Eigen::MatrixXd centered = X.rowwise() - model.mean.transpose();
  Eigen::MatrixXd cov = (centered.transpose() * centered) / static_cast<double>(n - 1);
  cov = 0.5 * (cov + cov.transpose());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::kDegenerateInput, "covariance eigendecomposition failed");
  }
  // Eigen returns ascending eigenvalues; take the last q columns in reverse.
  model.components.resize(q, d);
  model.eigenvalues.resize(q);
  for (Eigen::Index i = 0; i < q; ++i) {
    const Eigen::Index col = d - 1 - i;
    Eigen::VectorXd v = solver.eigenvectors().col(col);
    Eigen::Index arg = 0;
    double best = -1.0;
    for (Eigen::Index j = 0; j < d; ++j) {
      if (std::abs(v[j]) > best) {
        best = std::abs(v[j]);
        arg = j;
      }
    }
    if (v[arg] < 0.0) v = -v;
    model.components.row(i) = v.transpose();
    model.eigenvalues[i] = std::max(0.0, solver.eigenvalues()[col]);
  }
  return model;
}

Eigen::VectorXd pca_transform(const PcaModel& model, const Eigen::VectorXd& x) {
  if (x.size() != model.input_dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "PCA expects " + std::to_string(model.input_dim()) +
                                                   " dims, got " + std::to_string(x.size()));
  }
  return model.components * (x - model.mean);
}

Eigen::MatrixXd pca_transform_rows(const PcaModel& model, const Eigen::MatrixXd& X) {
  if (X.cols() != model.input_dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "PCA expects " + std::to_string(model.input_dim()) +
                                                   " columns, got " + std::to_string(X.cols()));
  }
  return (X.rowwise() - model.mean.transpose()) * model.components.transpose();
}

Eigen::VectorXd pca_reconstruct(const PcaModel& model, const Eigen::VectorXd& y) {
  if (y.size() != model.output_dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "PCA reconstruct expects " +
                                                   std::to_string(model.output_dim()) + " dims");
  }
  return model.components.transpose() * y + model.mean;
}

}  // namespace avf
