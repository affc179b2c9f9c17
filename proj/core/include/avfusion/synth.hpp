#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "avfusion/emotion.hpp"
#include "avfusion/manifest.hpp"
#include "avfusion/pooling.hpp"
#include "avfusion/types.hpp"

namespace avf {

/// Synthetic stand-in for the four extracted channels of a labelled clip set.
struct SynthConfig {
  std::size_t n_clips = 100;
  /// Per channel (audio, lbptop, cnn, blstm), in [0, 1]; scales class separation.
  std::array<double, 4> informativeness = {1.0, 1.0, 1.0, 1.0};
  /// Failed channels emit label-independent noise.
  std::array<bool, 4> failed = {false, false, false, false};
  std::uint64_t seed = 0;
  /// Distance scale between class means at informativeness 1.
  double separation = 6.0;
  /// Clip length range for the CNN per-frame score matrices.
  int min_frames = 4;
  int max_frames = 40;
  std::string id_prefix = "clip";

  /// Throws kInvalidArgument.
  void validate() const;
};

struct SynthClip {
  std::string clip_id;
  EmotionLabel label;
  Eigen::VectorXd audio;   // 20
  Eigen::VectorXd lbptop;  // 150
  ScoreMatrix cnn_scores;  // T x 7, row-stochastic
  Eigen::VectorXd blstm;   // 50
};

/// Class-conditional Gaussians: a channel's sample is
/// informativeness * separation * u_{label} + N(0, I) where the u_e are
/// random orthonormal directions. The CNN channel draws one clip-level logit
/// vector that way, adds fresh N(0, I) noise per frame and emits the softmax
/// rows. Deterministic in the seed;
/// class structure depends on the seed only, so a single call should produce
/// all splits of one experiment.
std::vector<SynthClip> synth_generate(const SynthConfig& config);

/// Writes one FVT1 file per clip and channel under dir/clips/ and the
/// manifest at dir/<manifest_name>.
std::filesystem::path write_synth_split(const std::filesystem::path& dir,
                                        const std::string& manifest_name,
                                        std::span<const SynthClip> clips);

/// Row-per-clip channel matrices ready for classification.
struct ChannelFeatures {
  std::vector<std::string> clip_ids;
  std::vector<std::optional<EmotionLabel>> labels;
  std::array<std::optional<Eigen::MatrixXd>, 4> channels;

  const Eigen::MatrixXd& channel(Channel c) const;
  /// Throws kInvalidArgument if any clip lacks a label.
  std::vector<EmotionLabel> require_labels() const;
  /// Joint 269-dim matrix; throws kDimensionMismatch / kMissingFile.
  Eigen::MatrixXd joint() const;
};

/// CNN scores pooled with k-average pooling; other channels copied.
ChannelFeatures extract_features(std::span<const SynthClip> clips, const PoolingParams& pooling = {});

/// Reads every channel listed in the manifest. Rank-3 LBP-TOP inputs are
/// video volumes and go through the LBP-TOP descriptor; rank-2 CNN inputs
/// are pooled; rank-1 files are taken as finished feature vectors. A channel
/// is kept only when every clip provides it.
ChannelFeatures load_channel_features(const DatasetManifest& manifest,
                                      const PoolingParams& pooling = {});

/// Points and integer labels for a planar toy problem.
struct BlobSet {
  Eigen::MatrixXd points;  // n x 2
  std::vector<int> labels;
};

/// `classes` isotropic 2-D Gaussians with standard deviation sigma, centred at
/// radius * (cos, sin)(2 pi c / classes); per_class points each, grouped by class.
BlobSet gaussian_blobs(int classes, int per_class, double radius, double sigma, std::uint64_t seed);

}  // namespace avf
