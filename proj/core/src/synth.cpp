#include "avfusion/synth.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include <Eigen/QR>

#include "avfusion/error.hpp"
#include "avfusion/fusion.hpp"
#include "avfusion/lbptop.hpp"
#include "avfusion/tensor_io.hpp"

namespace avf {
namespace {

// Rows are orthonormal, so every pair of class means sits at the same distance.
Eigen::MatrixXd unit_directions(std::mt19937_64& rng, Eigen::Index dim) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXd raw(dim, kNumEmotions);
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index e = 0; e < kNumEmotions; ++e) raw(j, e) = normal(rng);
  }
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(raw);
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(dim, kNumEmotions);
  return q.transpose();
}

Eigen::VectorXd gaussian(std::mt19937_64& rng, Eigen::Index dim) {
  std::normal_distribution<double> normal;
  Eigen::VectorXd v(dim);
  for (Eigen::Index j = 0; j < dim; ++j) v[j] = normal(rng);
  return v;
}

}  // namespace

void SynthConfig::validate() const {
  for (double v : informativeness) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, "informativeness must be in [0, 1]");
    }
  }
  if (!(separation >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "separation must be >= 0");
  if (min_frames < 1 || max_frames < min_frames) {
    throw Error(ErrorCode::kInvalidArgument, "frame range must satisfy 1 <= min <= max");
  }
}

std::vector<SynthClip> synth_generate(const SynthConfig& config) {
  config.validate();
  std::mt19937_64 rng(config.seed);

  const Eigen::Index cnn_dim = kNumEmotions;
  std::array<Eigen::MatrixXd, 4> dirs = {
      unit_directions(rng, JointVectorLayout::kAudio), unit_directions(rng, JointVectorLayout::kLbpTop),
      unit_directions(rng, cnn_dim), unit_directions(rng, JointVectorLayout::kBlstm)};

  std::array<double, 4> scale{};
  for (std::size_t c = 0; c < 4; ++c) {
    scale[c] = config.failed[c] ? 0.0 : config.informativeness[c] * config.separation;
  }

  std::uniform_int_distribution<int> label_dist(0, kNumEmotions - 1);
  std::uniform_int_distribution<int> frame_dist(config.min_frames, config.max_frames);

  auto sample = [&](std::size_t c, int label) -> Eigen::VectorXd {
    return scale[c] * dirs[c].row(label).transpose() + gaussian(rng, dirs[c].cols());
  };

  std::vector<SynthClip> clips;
  clips.reserve(config.n_clips);
  for (std::size_t i = 0; i < config.n_clips; ++i) {
    const int label = label_dist(rng);
    char id[64];
    std::snprintf(id, sizeof id, "%s%06zu", config.id_prefix.c_str(), i);

    Eigen::VectorXd audio = sample(0, label);
    Eigen::VectorXd lbptop = sample(1, label);

    const int frames = frame_dist(rng);
    const Eigen::VectorXd clip_logits = sample(2, label);
    Eigen::MatrixXd scores(frames, kNumEmotions);
    for (int t = 0; t < frames; ++t) {
      Eigen::VectorXd logits = clip_logits + gaussian(rng, cnn_dim);
      logits.array() -= logits.maxCoeff();
      logits = logits.array().exp();
      scores.row(t) = (logits / logits.sum()).transpose();
    }

    Eigen::VectorXd blstm = sample(3, label);
    clips.push_back(SynthClip{id, EmotionLabel(label), std::move(audio), std::move(lbptop),
                              ScoreMatrix(std::move(scores)), std::move(blstm)});
  }
  return clips;
}

std::filesystem::path write_synth_split(const std::filesystem::path& dir,
                                        const std::string& manifest_name,
                                        std::span<const SynthClip> clips) {
  const auto clip_dir = dir / "clips";
  std::filesystem::create_directories(clip_dir);
  DatasetManifest manifest;
  for (const auto& clip : clips) {
    ManifestEntry e;
    e.clip_id = clip.clip_id;
    e.label = clip.label;
    const auto stem = clip_dir / clip.clip_id;
    e.paths[0] = stem.string() + ".audio.fvt";
    e.paths[1] = stem.string() + ".lbptop.fvt";
    e.paths[2] = stem.string() + ".cnn.fvt";
    e.paths[3] = stem.string() + ".blstm.fvt";
    write_vector(e.paths[0], clip.audio);
    write_vector(e.paths[1], clip.lbptop);
    write_matrix(e.paths[2], clip.cnn_scores.rows());
    write_vector(e.paths[3], clip.blstm);
    manifest.entries.push_back(std::move(e));
  }
  const auto path = dir / manifest_name;
  write_manifest(path, manifest);
  return path;
}

const Eigen::MatrixXd& ChannelFeatures::channel(Channel c) const {
  const auto& m = channels.at(static_cast<std::size_t>(c));
  if (!m) {
    throw Error(ErrorCode::kMissingFile, std::string(channel_name(c)) + " features not available");
  }
  return *m;
}

std::vector<EmotionLabel> ChannelFeatures::require_labels() const {
  std::vector<EmotionLabel> out;
  out.reserve(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!labels[i]) throw Error(ErrorCode::kInvalidArgument, "clip " + clip_ids[i] + " has no label");
    out.push_back(*labels[i]);
  }
  return out;
}

Eigen::MatrixXd ChannelFeatures::joint() const {
  return build_joint_matrix(channel(Channel::kAudio), channel(Channel::kLbpTop),
                            channel(Channel::kCnn), channel(Channel::kBlstm));
}

ChannelFeatures extract_features(std::span<const SynthClip> clips, const PoolingParams& pooling) {
  ChannelFeatures out;
  const auto n = static_cast<Eigen::Index>(clips.size());
  Eigen::MatrixXd audio(n, JointVectorLayout::kAudio), lbptop(n, JointVectorLayout::kLbpTop),
      cnn(n, static_cast<Eigen::Index>(pooling.k) * kNumEmotions), blstm(n, JointVectorLayout::kBlstm);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& clip = clips[static_cast<std::size_t>(i)];
    out.clip_ids.push_back(clip.clip_id);
    out.labels.push_back(clip.label);
    audio.row(i) = clip.audio.transpose();
    lbptop.row(i) = clip.lbptop.transpose();
    cnn.row(i) = k_average_pool(clip.cnn_scores, pooling).transpose();
    blstm.row(i) = clip.blstm.transpose();
  }
  out.channels = {std::move(audio), std::move(lbptop), std::move(cnn), std::move(blstm)};
  return out;
}

ChannelFeatures load_channel_features(const DatasetManifest& manifest, const PoolingParams& pooling) {
  ChannelFeatures out;
  const std::size_t n = manifest.entries.size();
  std::array<std::vector<Eigen::VectorXd>, 4> rows;
  for (const auto& e : manifest.entries) {
    out.clip_ids.push_back(e.clip_id);
    out.labels.push_back(e.label);
    for (std::size_t c = 0; c < 4; ++c) {
      if (e.paths[c].empty()) continue;
      const Tensor t = read_tensor(e.paths[c]);
      const Channel ch = kMeasurementChannels[c];
      Eigen::VectorXd v;
      if (t.rank() == 1) {
        v = tensor_to_vector(t);
      } else if (ch == Channel::kLbpTop && t.rank() == 3) {
        VideoVolume volume(t.dims[0], t.dims[1], t.dims[2], t.values);
        v = lbp_top_descriptor(volume);
      } else if (ch == Channel::kCnn && t.rank() == 2) {
        v = k_average_pool(ScoreMatrix(tensor_to_matrix(t)), pooling);
      } else {
        throw Error(ErrorCode::kShapeMismatch, std::string(channel_name(ch)) + " file " +
                                                   e.paths[c].string() + " has rank " +
                                                   std::to_string(t.rank()));
      }
      if (!rows[c].empty() && rows[c].front().size() != v.size()) {
        throw Error(ErrorCode::kDimensionMismatch,
                    std::string(channel_name(ch)) + " dims differ at clip " + e.clip_id);
      }
      rows[c].push_back(std::move(v));
    }
  }
  for (std::size_t c = 0; c < 4; ++c) {
    if (n == 0 || rows[c].size() != n) continue;
    Eigen::MatrixXd m(static_cast<Eigen::Index>(n), rows[c].front().size());
    for (std::size_t i = 0; i < n; ++i) m.row(static_cast<Eigen::Index>(i)) = rows[c][i].transpose();
    out.channels[c] = std::move(m);
  }
  return out;
}

BlobSet gaussian_blobs(int classes, int per_class, double radius, double sigma, std::uint64_t seed) {
  if (classes < 1 || per_class < 1 || !(sigma >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "blob set needs classes, points and sigma >= 0");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, sigma);
  BlobSet out;
  out.points.resize(static_cast<Eigen::Index>(classes) * per_class, 2);
  out.labels.reserve(static_cast<std::size_t>(classes) * per_class);
  Eigen::Index row = 0;
  for (int c = 0; c < classes; ++c) {
    const double angle = 2.0 * std::numbers::pi * c / classes;
    for (int i = 0; i < per_class; ++i, ++row) {
      out.points(row, 0) = radius * std::cos(angle) + normal(rng);
      out.points(row, 1) = radius * std::sin(angle) + normal(rng);
      out.labels.push_back(c);
    }
  }
  return out;
}

}  // namespace avf
