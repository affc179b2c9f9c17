#pragma once

#include <array>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "avfusion/emotion.hpp"
#include "avfusion/normalization.hpp"
#include "avfusion/svm.hpp"

namespace avf {

/// Segment sizes and order of the joint feature vector.
struct JointVectorLayout {
  static constexpr Eigen::Index kAudio = 20;
  static constexpr Eigen::Index kLbpTop = 150;
  static constexpr Eigen::Index kCnn = 49;
  static constexpr Eigen::Index kBlstm = 50;
  static constexpr Eigen::Index kTotal = kAudio + kLbpTop + kCnn + kBlstm;

  static constexpr Eigen::Index dim(Channel c) noexcept {
    switch (c) {
      case Channel::kAudio: return kAudio;
      case Channel::kLbpTop: return kLbpTop;
      case Channel::kCnn: return kCnn;
      case Channel::kBlstm: return kBlstm;
      case Channel::kJoint: return kTotal;
    }
    return 0;
  }
  static constexpr Eigen::Index offset(Channel c) noexcept {
    switch (c) {
      case Channel::kAudio: return 0;
      case Channel::kLbpTop: return kAudio;
      case Channel::kCnn: return kAudio + kLbpTop;
      case Channel::kBlstm: return kAudio + kLbpTop + kCnn;
      case Channel::kJoint: return 0;
    }
    return 0;
  }
};
static_assert(JointVectorLayout::kTotal == 269);

/// Concatenates audio, LBP-TOP, CNN and BLSTM features. Throws
/// kDimensionMismatch whose detail names the offending channel.
Eigen::VectorXd build_joint_vector(const Eigen::VectorXd& audio, const Eigen::VectorXd& lbptop,
                                   const Eigen::VectorXd& cnn, const Eigen::VectorXd& blstm);

/// Row-wise concatenation of per-channel matrices with the same row count.
Eigen::MatrixXd build_joint_matrix(const Eigen::MatrixXd& audio, const Eigen::MatrixXd& lbptop,
                                   const Eigen::MatrixXd& cnn, const Eigen::MatrixXd& blstm);

struct FeatureFusionModel {
  NormalizationModel normalization;
  LinearSvmModel svm;
};

/// normalize_fit on the joint vectors, normalize_apply to each row, svm_train.
FeatureFusionModel feature_fusion_train(const Eigen::MatrixXd& joint,
                                        std::span<const EmotionLabel> labels,
                                        const SvmParams& params = {});

SvmPrediction feature_fusion_predict(const FeatureFusionModel& model, const Eigen::VectorXd& joint);
std::vector<EmotionLabel> feature_fusion_predict_rows(const FeatureFusionModel& model,
                                                      const Eigen::MatrixXd& joint);

}  // namespace avf
