#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "avfusion/emotion.hpp"

namespace avf {

using EmotionVector = Eigen::Matrix<double, kNumEmotions, 1>;
/// cpt(e, m) = P(M = m | Emotion = e); rows indexed by the true emotion.
using Cpt = Eigen::Matrix<double, kNumEmotions, kNumEmotions, Eigen::RowMajor>;

enum class CptMode { kConfusion, kAccuracy };

struct MeasurementModel {
  Channel channel = Channel::kAudio;
  Cpt cpt = Cpt::Constant(1.0 / kNumEmotions);
};

/// Laplace-smoothed confusion rows:
/// cpt[e][m] = (count(e, m) + alpha) / (count(e) + 7 alpha).
/// Throws kLengthMismatch, kEmpty, kInvalidArgument (alpha < 0) and
/// kEmptyClassRow when a true class never occurs and alpha == 0.
MeasurementModel fit_measurement_cpt(Channel channel, std::span<const EmotionLabel> predictions,
                                     std::span<const EmotionLabel> truths, double alpha);

/// Scalar-accuracy CPT: p on the diagonal, (1 - p) / 6 elsewhere.
MeasurementModel measurement_from_accuracy(Channel channel, double accuracy);

/// measurement_from_accuracy with p = fraction of correct predictions.
MeasurementModel fit_measurement_accuracy(Channel channel,
                                          std::span<const EmotionLabel> predictions,
                                          std::span<const EmotionLabel> truths);

/// Hidden Emotion node with one measurement child per classifier channel.
struct BnFusionModel {
  EmotionVector prior = EmotionVector::Constant(1.0 / kNumEmotions);
  std::vector<MeasurementModel> measurements;
  CptMode mode = CptMode::kConfusion;
  double smoothing = 1.0;

  /// Throws kInvalidArgument when the prior or a CPT row is not a probability
  /// vector (1e-12), a channel repeats or is Joint, or no measurement exists.
  void validate() const;
  const MeasurementModel* find(Channel channel) const noexcept;
};

struct ChannelObservation {
  Channel channel;
  EmotionLabel label;
};

struct BnPosterior {
  EmotionLabel label;
  EmotionVector posterior;
};

/// posterior(e) ~ prior(e) * prod_i cpt_i[e][m_i] over the observed channels
/// (unobserved channels marginalize out). Factors multiply in channel order,
/// so the result does not depend on the order of `observed`. Label is the
/// first maximum. Throws kNoObservations, kUnknownChannel, kInvalidArgument
/// (channel observed twice), kAllZeroPosterior.
BnPosterior bn_infer(const BnFusionModel& model, std::span<const ChannelObservation> observed);

/// Per-clip decisions of the four channel classifiers; nullopt when missing.
using ClipDecisions = std::array<std::optional<EmotionLabel>, 4>;

/// MAP emotion given one clip's available channel decisions.
EmotionLabel bn_fusion_predict(const BnFusionModel& model, const ClipDecisions& decisions);

enum class PriorMode { kUniform, kEmpirical };

struct BnFitOptions {
  CptMode mode = CptMode::kConfusion;
  double alpha = 1.0;
  PriorMode prior = PriorMode::kUniform;
};

/// Fits one measurement per channel that has a decision for every clip
/// (typically on the validation split) and the prior from `truths`.
BnFusionModel fit_bn_model(std::span<const ClipDecisions> decisions,
                           std::span<const EmotionLabel> truths, const BnFitOptions& options = {});

}  // namespace avf
