#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "avfusion/bayes_fusion.hpp"
#include "avfusion/emotion.hpp"
#include "avfusion/fusion.hpp"
#include "avfusion/normalization.hpp"
#include "avfusion/pca.hpp"
#include "avfusion/svm.hpp"

namespace avf {

// Model files are a JSON sidecar naming FVT1 tensors that sit next to it
// (<stem>.<name>.fvt). Tensors are f32 on disk, so a reloaded model matches
// the in-memory one to single precision.

void save_pca(const std::filesystem::path& sidecar, const PcaModel& model);
PcaModel load_pca(const std::filesystem::path& sidecar);

void save_normalization(const std::filesystem::path& sidecar, const NormalizationModel& model);
NormalizationModel load_normalization(const std::filesystem::path& sidecar);

void save_svm(const std::filesystem::path& sidecar, const LinearSvmModel& model);
LinearSvmModel load_svm(const std::filesystem::path& sidecar);

void save_feature_fusion(const std::filesystem::path& sidecar, const FeatureFusionModel& model);
FeatureFusionModel load_feature_fusion(const std::filesystem::path& sidecar);

/// Plain JSON: prior, CPT mode, smoothing and per-channel 7x7 CPTs row-major.
void save_bn(const std::filesystem::path& path, const BnFusionModel& model);
BnFusionModel load_bn(const std::filesystem::path& path);

struct LabelRow {
  std::string clip_id;
  std::optional<EmotionLabel> label;
};

/// `clip_id,label` with an optional empty label.
void write_labels_csv(const std::filesystem::path& path, std::span<const LabelRow> rows);
std::vector<LabelRow> read_labels_csv(const std::filesystem::path& path);

struct DecisionRow {
  std::string clip_id;
  Channel channel;
  EmotionLabel predicted;
};

/// `clip_id,channel,predicted_label`, labels written by name.
void write_decisions_csv(const std::filesystem::path& path, std::span<const DecisionRow> rows);
/// Also accepts two-column `clip_id,predicted_label` files, tagging rows as joint.
std::vector<DecisionRow> read_decisions_csv(const std::filesystem::path& path);

}  // namespace avf
