#include "avfusion/fusion.hpp"

#include <string>

#include "avfusion/error.hpp"

namespace avf {
namespace {

void check_segment(Channel c, Eigen::Index got) {
  const Eigen::Index want = JointVectorLayout::dim(c);
  if (got != want) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(channel_name(c)) + ": expected " + std::to_string(want) +
                    " dims, got " + std::to_string(got));
  }
}

}  // namespace

Eigen::VectorXd build_joint_vector(const Eigen::VectorXd& audio, const Eigen::VectorXd& lbptop,
                                   const Eigen::VectorXd& cnn, const Eigen::VectorXd& blstm) {
  check_segment(Channel::kAudio, audio.size());
  check_segment(Channel::kLbpTop, lbptop.size());
  check_segment(Channel::kCnn, cnn.size());
  check_segment(Channel::kBlstm, blstm.size());
  Eigen::VectorXd joint(JointVectorLayout::kTotal);
  joint << audio, lbptop, cnn, blstm;
  return joint;
}

Eigen::MatrixXd build_joint_matrix(const Eigen::MatrixXd& audio, const Eigen::MatrixXd& lbptop,
                                   const Eigen::MatrixXd& cnn, const Eigen::MatrixXd& blstm) {
  check_segment(Channel::kAudio, audio.cols());
  check_segment(Channel::kLbpTop, lbptop.cols());
  check_segment(Channel::kCnn, cnn.cols());
  check_segment(Channel::kBlstm, blstm.cols());
  const Eigen::Index n = audio.rows();
  if (lbptop.rows() != n || cnn.rows() != n || blstm.rows() != n) {
    throw Error(ErrorCode::kLengthMismatch, "channel matrices have different row counts");
  }
  Eigen::MatrixXd joint(n, JointVectorLayout::kTotal);
  joint << audio, lbptop, cnn, blstm;
  return joint;
}

FeatureFusionModel feature_fusion_train(const Eigen::MatrixXd& joint,
                                        std::span<const EmotionLabel> labels,
                                        const SvmParams& params) {
  FeatureFusionModel model;
  model.normalization = normalize_fit(joint);
  model.svm = svm_train(normalize_apply_rows(model.normalization, joint), labels, params);
  return model;
}

SvmPrediction feature_fusion_predict(const FeatureFusionModel& model, const Eigen::VectorXd& joint) {
  return svm_predict(model.svm, normalize_apply(model.normalization, joint));
}

std::vector<EmotionLabel> feature_fusion_predict_rows(const FeatureFusionModel& model,
                                                      const Eigen::MatrixXd& joint) {
  return svm_predict_rows(model.svm, normalize_apply_rows(model.normalization, joint));
}

}  // namespace avf
