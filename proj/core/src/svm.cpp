#include "avfusion/svm.hpp"

#include <cmath>
#include <set>
#include <string>

#include "avfusion/error.hpp"
#include "avfusion/types.hpp"

namespace avf {

int argmax_lowest(const Eigen::Ref<const Eigen::VectorXd>& v) noexcept {
  int best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i) {
    if (v[i] > v[best]) best = static_cast<int>(i);
  }
  return best;
}

LinearSvmModel svm_train(const Eigen::MatrixXd& X, std::span<const EmotionLabel> labels,
                         const SvmParams& params) {
  const Eigen::Index n = X.rows();
  const Eigen::Index D = X.cols();
  if (static_cast<Eigen::Index>(labels.size()) != n) {
    throw Error(ErrorCode::kLengthMismatch, std::to_string(labels.size()) + " labels for " +
                                                std::to_string(n) + " rows");
  }
  if (n < 2) throw Error(ErrorCode::kTooFewSamples, "SVM needs >= 2 rows");
  if (!(params.C > 0.0) || params.epochs < 1) {
    throw Error(ErrorCode::kInvalidArgument, "SVM needs C > 0 and epochs >= 1");
  }
  std::set<int> present;
  for (auto l : labels) present.insert(l.index());
  if (present.size() < 2) throw Error(ErrorCode::kSingleClass, "only one class in training labels");
  require_finite(X, "SVM input");

  // Augmented design matrix [X, 1] and +/-1 targets per class.
  Eigen::MatrixXd Xa(n, D + 1);
  Xa.leftCols(D) = X;
  Xa.col(D).setOnes();
  Eigen::MatrixXd Y = -Eigen::MatrixXd::Ones(n, kNumEmotions);
  for (Eigen::Index i = 0; i < n; ++i) Y(i, labels[static_cast<std::size_t>(i)].index()) = 1.0;

  const double lambda = 1.0 / (params.C * static_cast<double>(n));
  const double radius = 1.0 / std::sqrt(lambda);
  Eigen::MatrixXd Wa = Eigen::MatrixXd::Zero(kNumEmotions, D + 1);

  for (int t = 1; t <= params.epochs; ++t) {
    const double eta = 1.0 / (lambda * t);
    const Eigen::MatrixXd margins = (Xa * Wa.transpose()).cwiseProduct(Y);
    const Eigen::MatrixXd active = (margins.array() < 1.0).cast<double>().matrix().cwiseProduct(Y);
    const Eigen::MatrixXd grad = lambda * Wa - (active.transpose() * Xa) / static_cast<double>(n);
    Wa -= eta * grad;
    for (Eigen::Index c = 0; c < kNumEmotions; ++c) {
      const double norm = Wa.row(c).norm();
      if (norm > radius) Wa.row(c) *= radius / norm;
    }
  }

  LinearSvmModel model;
  model.weights = Wa.leftCols(D);
  model.bias = Wa.col(D);
  model.params = params;
  return model;
}

SvmPrediction svm_predict(const LinearSvmModel& model, const Eigen::VectorXd& x) {
  if (x.size() != model.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "SVM expects " + std::to_string(model.dim()) +
                                                   " dims, got " + std::to_string(x.size()));
  }
  Eigen::VectorXd scores = model.weights * x + model.bias;
  return {EmotionLabel(argmax_lowest(scores)), std::move(scores)};
}

std::vector<EmotionLabel> svm_predict_rows(const LinearSvmModel& model, const Eigen::MatrixXd& X) {
  if (X.cols() != model.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "SVM expects " + std::to_string(model.dim()) +
                                                   " columns, got " + std::to_string(X.cols()));
  }
  std::vector<EmotionLabel> out;
  out.reserve(static_cast<std::size_t>(X.rows()));
  for (Eigen::Index i = 0; i < X.rows(); ++i) out.push_back(svm_predict(model, X.row(i).transpose()).label);
  return out;
}

}  // namespace avf
