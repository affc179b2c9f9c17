#include "avfusion/normalization.hpp"

#include <cmath>
#include <string>

#include "avfusion/error.hpp"
#include "avfusion/types.hpp"

namespace avf {

NormalizationModel normalize_fit(const Eigen::MatrixXd& X) {
  if (X.rows() < 2) {
    throw Error(ErrorCode::kTooFewSamples,
                "normalization needs >= 2 rows, got " + std::to_string(X.rows()));
  }
  require_finite(X, "normalization input");
  const auto n = static_cast<double>(X.rows());
  NormalizationModel model;
  model.per_dim_mean = X.colwise().mean().transpose();
  model.per_dim_std.resize(X.cols());
  model.zero_std.assign(static_cast<std::size_t>(X.cols()), false);
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    const auto col = X.col(j);
    if (col.maxCoeff() == col.minCoeff()) {
      model.per_dim_std[j] = 0.0;
      model.zero_std[static_cast<std::size_t>(j)] = true;
      continue;
    }
    const double var = (col.array() - model.per_dim_mean[j]).square().sum() / n;
    model.per_dim_std[j] = std::sqrt(var);
  }
  return model;
}

Eigen::VectorXd normalize_stage1(const NormalizationModel& model, const Eigen::VectorXd& x) {
  if (x.size() != model.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "normalization expects " +
                                                   std::to_string(model.dim()) + " dims, got " +
                                                   std::to_string(x.size()));
  }
  Eigen::VectorXd out(x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    out[j] = model.zero_std[static_cast<std::size_t>(j)]
                 ? 0.0
                 : (x[j] - model.per_dim_mean[j]) / model.per_dim_std[j];
  }
  return out;
}

Eigen::VectorXd standardize_within(const Eigen::VectorXd& v) {
  if (v.size() == 0 || v.maxCoeff() == v.minCoeff()) return Eigen::VectorXd::Zero(v.size());
  const Eigen::VectorXd centered = v.array() - v.mean();
  const double sd = std::sqrt(centered.squaredNorm() / static_cast<double>(v.size()));
  return centered / sd;
}

Eigen::VectorXd normalize_apply(const NormalizationModel& model, const Eigen::VectorXd& x) {
  return standardize_within(normalize_stage1(model, x));
}

Eigen::MatrixXd normalize_apply_rows(const NormalizationModel& model, const Eigen::MatrixXd& X) {
  Eigen::MatrixXd out(X.rows(), X.cols());
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    out.row(i) = normalize_apply(model, X.row(i).transpose()).transpose();
  }
  return out;
}

}  // namespace avf
