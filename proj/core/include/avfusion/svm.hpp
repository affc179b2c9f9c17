#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "avfusion/emotion.hpp"

namespace avf {

struct SvmParams {
  double C = 0.1;
  int epochs = 500;
  std::uint64_t seed = 0;
};

/// One-vs-rest linear SVM over the seven emotions: scores = W x + b.
struct LinearSvmModel {
  Eigen::MatrixXd weights;  // 7 x D
  Eigen::VectorXd bias;     // 7
  SvmParams params;

  Eigen::Index dim() const noexcept { return weights.cols(); }
};

struct SvmPrediction {
  EmotionLabel label;
  Eigen::VectorXd scores;
};

/// L2-regularized hinge loss per class (lambda_reg = 1 / (C n)), minimized by
/// full-batch subgradient steps of size 1 / (lambda_reg t) with the Pegasos
/// projection onto the ball of radius 1 / sqrt(lambda_reg). The bias is an
/// extra constant-1 input and is regularized with the weights. Every epoch
/// uses all rows in a fixed order, so the result is a pure function of the
/// inputs; the seed is only recorded in the model.
/// Throws kTooFewSamples, kSingleClass, kLengthMismatch, kInvalidArgument.
LinearSvmModel svm_train(const Eigen::MatrixXd& X, std::span<const EmotionLabel> labels,
                         const SvmParams& params = {});

/// Argmax of W x + b with ties toward the lowest index. Throws kDimensionMismatch.
SvmPrediction svm_predict(const LinearSvmModel& model, const Eigen::VectorXd& x);
std::vector<EmotionLabel> svm_predict_rows(const LinearSvmModel& model, const Eigen::MatrixXd& X);

/// First index of the maximum entry.
int argmax_lowest(const Eigen::Ref<const Eigen::VectorXd>& v) noexcept;

}  // namespace avf
