#include "avfusion/experiment.hpp"

#include <algorithm>
#include <span>

#include "avfusion/evaluation.hpp"
#include "avfusion/fusion.hpp"

namespace avf {

double FusionExperimentResult::best_channel_accuracy() const noexcept {
  return *std::max_element(channel_accuracy.begin(), channel_accuracy.end());
}

FusionExperimentConfig baseline_experiment_config(std::uint64_t seed) {
  FusionExperimentConfig config;
  config.synth.informativeness = kBaselineInformativeness;
  config.synth.seed = seed;
  return config;
}

FusionExperimentResult run_fusion_experiment(const FusionExperimentConfig& config) {
  SynthConfig synth = config.synth;
  synth.n_clips = config.n_train + config.n_val + config.n_test;
  const auto clips = synth_generate(synth);
  const std::span<const SynthClip> all(clips);

  const auto train = extract_features(all.subspan(0, config.n_train), config.pooling);
  const auto val = extract_features(all.subspan(config.n_train, config.n_val), config.pooling);
  const auto test = extract_features(all.subspan(config.n_train + config.n_val), config.pooling);
  const auto y_train = train.require_labels();
  const auto y_val = val.require_labels();
  const auto y_test = test.require_labels();

  FusionExperimentResult result;
  std::vector<ClipDecisions> val_decisions(y_val.size());
  std::vector<ClipDecisions> test_decisions(y_test.size());
  for (std::size_t c = 0; c < kMeasurementChannels.size(); ++c) {
    const Channel ch = kMeasurementChannels[c];
    const auto model = svm_train(train.channel(ch), y_train, config.svm);
    const auto val_pred = svm_predict_rows(model, val.channel(ch));
    const auto test_pred = svm_predict_rows(model, test.channel(ch));
    for (std::size_t i = 0; i < val_pred.size(); ++i) val_decisions[i][c] = val_pred[i];
    for (std::size_t i = 0; i < test_pred.size(); ++i) test_decisions[i][c] = test_pred[i];
    result.channel_accuracy[c] = evaluate(test_pred, y_test).overall_accuracy;
  }

  const auto bn = fit_bn_model(val_decisions, y_val, config.bn);
  std::vector<EmotionLabel> bn_pred;
  bn_pred.reserve(test_decisions.size());
  for (const auto& d : test_decisions) bn_pred.push_back(bn_fusion_predict(bn, d));
  result.model_fusion_accuracy = evaluate(bn_pred, y_test).overall_accuracy;

  const auto feature_model = feature_fusion_train(train.joint(), y_train, config.svm);
  result.feature_fusion_accuracy =
      evaluate(feature_fusion_predict_rows(feature_model, test.joint()), y_test).overall_accuracy;
  return result;
}

}  // namespace avf
