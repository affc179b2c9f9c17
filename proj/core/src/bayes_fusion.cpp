#include "avfusion/bayes_fusion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "avfusion/error.hpp"

namespace avf {
namespace {

void check_pairs(std::span<const EmotionLabel> predictions, std::span<const EmotionLabel> truths) {
  if (predictions.size() != truths.size()) {
    throw Error(ErrorCode::kLengthMismatch, std::to_string(predictions.size()) +
                                                " predictions for " +
                                                std::to_string(truths.size()) + " truths");
  }
  if (predictions.empty()) throw Error(ErrorCode::kEmpty, "no predictions");
}

bool is_probability(const Eigen::Ref<const Eigen::RowVectorXd>& v, double tol) {
  return (v.array() >= 0.0).all() && std::abs(v.sum() - 1.0) <= tol;
}

}  // namespace

MeasurementModel fit_measurement_cpt(Channel channel, std::span<const EmotionLabel> predictions,
                                     std::span<const EmotionLabel> truths, double alpha) {
  check_pairs(predictions, truths);
  if (!(alpha >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "smoothing alpha must be >= 0");
  Cpt counts = Cpt::Zero();
  for (std::size_t i = 0; i < truths.size(); ++i) {
    counts(truths[i].index(), predictions[i].index()) += 1.0;
  }
  MeasurementModel m;
  m.channel = channel;
  for (int e = 0; e < kNumEmotions; ++e) {
    const double row_total = counts.row(e).sum();
    if (row_total == 0.0 && alpha == 0.0) {
      throw Error(ErrorCode::kEmptyClassRow,
                  std::string(EmotionLabel(e).name()) + " never occurs in the truths");
    }
    m.cpt.row(e) = (counts.row(e).array() + alpha) / (row_total + kNumEmotions * alpha);
  }
  return m;
}

MeasurementModel measurement_from_accuracy(Channel channel, double accuracy) {
  if (!(accuracy >= 0.0 && accuracy <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "accuracy must be in [0, 1]");
  }
  MeasurementModel m;
  m.channel = channel;
  m.cpt.setConstant((1.0 - accuracy) / (kNumEmotions - 1));
  m.cpt.diagonal().setConstant(accuracy);
  return m;
}

MeasurementModel fit_measurement_accuracy(Channel channel,
                                          std::span<const EmotionLabel> predictions,
                                          std::span<const EmotionLabel> truths) {
  check_pairs(predictions, truths);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < truths.size(); ++i) correct += predictions[i] == truths[i];
  return measurement_from_accuracy(channel,
                                   static_cast<double>(correct) / static_cast<double>(truths.size()));
}

void BnFusionModel::validate() const {
  if (!is_probability(prior.transpose(), 1e-12)) {
    throw Error(ErrorCode::kInvalidArgument, "prior is not a probability vector");
  }
  if (measurements.empty()) throw Error(ErrorCode::kInvalidArgument, "BN has no measurement nodes");
  std::array<bool, 4> seen{};
  for (const auto& m : measurements) {
    if (m.channel == Channel::kJoint) {
      throw Error(ErrorCode::kInvalidArgument, "joint is not a measurement channel");
    }
    auto& flag = seen[static_cast<std::size_t>(m.channel)];
    if (flag) {
      throw Error(ErrorCode::kInvalidArgument,
                  "channel " + std::string(channel_name(m.channel)) + " repeated");
    }
    flag = true;
    for (int e = 0; e < kNumEmotions; ++e) {
      if (!is_probability(m.cpt.row(e), 1e-12)) {
        throw Error(ErrorCode::kInvalidArgument,
                    std::string(channel_name(m.channel)) + " CPT row " + std::to_string(e) +
                        " is not a distribution");
      }
    }
  }
}

const MeasurementModel* BnFusionModel::find(Channel channel) const noexcept {
  for (const auto& m : measurements) {
    if (m.channel == channel) return &m;
  }
  return nullptr;
}

BnPosterior bn_infer(const BnFusionModel& model, std::span<const ChannelObservation> observed) {
  if (observed.empty()) throw Error(ErrorCode::kNoObservations, "no channel observed");
  std::array<const ChannelObservation*, 5> by_channel{};
  for (const auto& o : observed) {
    if (model.find(o.channel) == nullptr) {
      throw Error(ErrorCode::kUnknownChannel,
                  std::string(channel_name(o.channel)) + " is not in the model");
    }
    auto& slot = by_channel[static_cast<std::size_t>(o.channel)];
    if (slot != nullptr) {
      throw Error(ErrorCode::kInvalidArgument,
                  "channel " + std::string(channel_name(o.channel)) + " observed twice");
    }
    slot = &o;
  }

  EmotionVector joint = model.prior;
  for (const ChannelObservation* o : by_channel) {
    if (o == nullptr) continue;
    joint = joint.cwiseProduct(model.find(o->channel)->cpt.col(o->label.index()));
  }
  const double evidence = joint.sum();
  if (!(evidence > 0.0)) {
    throw Error(ErrorCode::kAllZeroPosterior, "every emotion has zero probability");
  }
  BnPosterior out{EmotionLabel(0), joint / evidence};
  out.label = EmotionLabel(static_cast<int>(std::max_element(out.posterior.begin(),
                                                             out.posterior.end()) -
                                            out.posterior.begin()));
  return out;
}

EmotionLabel bn_fusion_predict(const BnFusionModel& model, const ClipDecisions& decisions) {
  std::vector<ChannelObservation> observed;
  for (std::size_t c = 0; c < decisions.size(); ++c) {
    if (decisions[c]) observed.push_back({kMeasurementChannels[c], *decisions[c]});
  }
  return bn_infer(model, observed).label;
}

BnFusionModel fit_bn_model(std::span<const ClipDecisions> decisions,
                           std::span<const EmotionLabel> truths, const BnFitOptions& options) {
  if (decisions.size() != truths.size()) {
    throw Error(ErrorCode::kLengthMismatch, "decisions and truths differ in length");
  }
  if (truths.empty()) throw Error(ErrorCode::kEmpty, "no validation clips");
  BnFusionModel model;
  model.mode = options.mode;
  model.smoothing = options.alpha;
  for (std::size_t c = 0; c < kMeasurementChannels.size(); ++c) {
    std::vector<EmotionLabel> preds;
    preds.reserve(decisions.size());
    for (const auto& d : decisions) {
      if (!d[c]) break;
      preds.push_back(*d[c]);
    }
    if (preds.size() != decisions.size()) continue;
    model.measurements.push_back(
        options.mode == CptMode::kConfusion
            ? fit_measurement_cpt(kMeasurementChannels[c], preds, truths, options.alpha)
            : fit_measurement_accuracy(kMeasurementChannels[c], preds, truths));
  }
  if (options.prior == PriorMode::kEmpirical) {
    EmotionVector counts = EmotionVector::Zero();
    for (auto t : truths) counts[t.index()] += 1.0;
    model.prior = counts / counts.sum();
  }
  model.validate();
  return model;
}

}  // namespace avf
