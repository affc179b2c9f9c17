#include "avfusion_cli/pipeline.hpp"

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "avfusion/bayes_fusion.hpp"
#include "avfusion/emotion.hpp"
#include "avfusion/error.hpp"
#include "avfusion/evaluation.hpp"
#include "avfusion/experiment.hpp"
#include "avfusion/fusion.hpp"
#include "avfusion/lbptop.hpp"
#include "avfusion/manifest.hpp"
#include "avfusion/pca.hpp"
#include "avfusion/pooling.hpp"
#include "avfusion/serialization.hpp"
#include "avfusion/softmax_probe.hpp"
#include "avfusion/svm.hpp"
#include "avfusion/synth.hpp"
#include "avfusion/tensor_io.hpp"

namespace avf::cli {
namespace fs = std::filesystem;

namespace {

Eigen::MatrixXd read_matrix(const fs::path& path) { return tensor_to_matrix(read_tensor(path)); }

void ensure_parent(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
}

std::vector<EmotionLabel> require_labels(const std::vector<LabelRow>& rows, const fs::path& source) {
  std::vector<EmotionLabel> labels;
  labels.reserve(rows.size());
  for (const auto& r : rows) {
    if (!r.label) {
      throw Error(ErrorCode::kInvalidArgument,
                  "clip " + r.clip_id + " has no label in " + source.string());
    }
    labels.push_back(*r.label);
  }
  return labels;
}

std::vector<LabelRow> label_rows(const ChannelFeatures& f) {
  std::vector<LabelRow> rows;
  rows.reserve(f.clip_ids.size());
  for (std::size_t i = 0; i < f.clip_ids.size(); ++i) rows.push_back({f.clip_ids[i], f.labels[i]});
  return rows;
}

// Feature directories hold <channel>.fvt matrices plus labels.csv, as
// written by `extract`.
ChannelFeatures read_feature_dir(const fs::path& dir) {
  ChannelFeatures f;
  for (const auto& row : read_labels_csv(dir / "labels.csv")) {
    f.clip_ids.push_back(row.clip_id);
    f.labels.push_back(row.label);
  }
  for (std::size_t c = 0; c < 4; ++c) {
    const fs::path p = dir / (std::string(channel_name(kMeasurementChannels[c])) + ".fvt");
    if (!fs::exists(p)) continue;
    Eigen::MatrixXd m = read_matrix(p);
    if (static_cast<std::size_t>(m.rows()) != f.clip_ids.size()) {
      throw Error(ErrorCode::kLengthMismatch, p.string() + " has " + std::to_string(m.rows()) +
                                                  " rows for " + std::to_string(f.clip_ids.size()) +
                                                  " clips");
    }
    f.channels[c] = std::move(m);
  }
  return f;
}

struct FeatureSource {
  std::string manifest;
  std::string dir;
  int k = 7;

  void add_to(CLI::App* app) {
    auto* m = app->add_option("--manifest", manifest, "Dataset manifest CSV");
    auto* d = app->add_option("--in", dir, "Feature directory written by `extract`");
    m->excludes(d);
    app->add_option("--k", k, "Temporal pooling bins for CNN score matrices")->check(CLI::PositiveNumber);
  }

  ChannelFeatures load() const {
    if (!dir.empty()) return read_feature_dir(dir);
    if (manifest.empty()) throw Error(ErrorCode::kInvalidArgument, "need --manifest or --in");
    return load_channel_features(load_manifest(manifest), PoolingParams{k});
  }
};

std::vector<DecisionRow> read_all_decisions(const std::vector<std::string>& paths) {
  std::vector<DecisionRow> rows;
  for (const auto& p : paths) {
    auto part = read_decisions_csv(p);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  return rows;
}

// Clip order of first appearance, with each clip's decisions by channel.
struct GroupedDecisions {
  std::vector<std::string> clip_ids;
  std::vector<std::vector<ChannelObservation>> observations;
};

GroupedDecisions group_decisions(const std::vector<DecisionRow>& rows) {
  GroupedDecisions g;
  std::map<std::string, std::size_t> index;
  for (const auto& r : rows) {
    auto [it, inserted] = index.emplace(r.clip_id, g.clip_ids.size());
    if (inserted) {
      g.clip_ids.push_back(r.clip_id);
      g.observations.emplace_back();
    }
    g.observations[it->second].push_back({r.channel, r.predicted});
  }
  return g;
}

CptMode parse_cpt_mode(const std::string& s) {
  if (s == "confusion") return CptMode::kConfusion;
  if (s == "accuracy") return CptMode::kAccuracy;
  throw Error(ErrorCode::kInvalidArgument, "unknown CPT mode " + s);
}

PriorMode parse_prior_mode(const std::string& s) {
  if (s == "uniform") return PriorMode::kUniform;
  if (s == "empirical") return PriorMode::kEmpirical;
  throw Error(ErrorCode::kInvalidArgument, "unknown prior mode " + s);
}

struct SynthArgs {
  std::string out;
  std::uint64_t seed = 1;
  std::vector<double> info{kBaselineInformativeness.begin(), kBaselineInformativeness.end()};
  std::vector<std::string> fail;
  std::vector<std::string> splits{"train:2000", "val:1000", "test:2000"};
  double separation = 6.0;
  int min_frames = 4;
  int max_frames = 40;
};

void cmd_synth(const SynthArgs& a, std::ostream& out) {
  SynthConfig cfg;
  cfg.seed = a.seed;
  cfg.separation = a.separation;
  cfg.min_frames = a.min_frames;
  cfg.max_frames = a.max_frames;
  if (a.info.size() != 4) {
    throw Error(ErrorCode::kInvalidArgument, "--info needs 4 values (audio,lbptop,cnn,blstm)");
  }
  std::copy(a.info.begin(), a.info.end(), cfg.informativeness.begin());
  for (const auto& name : a.fail) {
    const Channel c = parse_channel(name);
    if (c == Channel::kJoint) throw Error(ErrorCode::kUnknownChannel, "joint is not a measurement channel");
    cfg.failed[static_cast<std::size_t>(c)] = true;
  }

  std::vector<std::pair<std::string, std::size_t>> parts;
  std::size_t total = 0;
  for (const auto& s : a.splits) {
    const auto colon = s.find(':');
    if (colon == std::string::npos || colon == 0) {
      throw Error(ErrorCode::kInvalidArgument, "split must look like name:count, got " + s);
    }
    std::size_t count = 0;
    try {
      count = std::stoul(s.substr(colon + 1));
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidArgument, "bad split count in " + s);
    }
    parts.emplace_back(s.substr(0, colon), count);
    total += count;
  }
  cfg.n_clips = total;
  const auto clips = synth_generate(cfg);

  std::size_t begin = 0;
  for (const auto& [name, count] : parts) {
    const std::span<const SynthClip> slice(clips.data() + begin, count);
    const auto manifest = write_synth_split(a.out, name + ".csv", slice);
    out << name << ": " << count << " clips -> " << manifest.string() << "\n";
    begin += count;
  }
}

void cmd_extract(const FeatureSource& src, const std::string& out_dir, std::ostream& out) {
  const ChannelFeatures f = src.load();
  fs::create_directories(out_dir);
  const auto rows = label_rows(f);
  write_labels_csv(fs::path(out_dir) / "labels.csv", rows);
  for (std::size_t c = 0; c < 4; ++c) {
    if (!f.channels[c]) continue;
    const std::string name(channel_name(kMeasurementChannels[c]));
    write_matrix(fs::path(out_dir) / (name + ".fvt"), *f.channels[c]);
    out << name << ": " << f.channels[c]->rows() << " x " << f.channels[c]->cols() << "\n";
  }
}

void cmd_lbptop(const std::string& in, const std::string& out_path, const LbpTopParams& params,
                std::ostream& out) {
  const Tensor t = read_tensor(in);
  if (t.rank() != 3) {
    throw Error(ErrorCode::kShapeMismatch,
                in + " has rank " + std::to_string(t.rank()) + ", expected [T,H,W]");
  }
  const VideoVolume volume(t.dims[0], t.dims[1], t.dims[2], t.values);
  const Eigen::VectorXd d = lbp_top_descriptor(volume, params);
  ensure_parent(out_path);
  write_vector(out_path, d);
  out << "descriptor length " << d.size() << "\n";
}

void cmd_pca_fit(const std::string& in, int q, const std::string& model_path, std::ostream& out) {
  const Eigen::MatrixXd X = read_matrix(in);
  const PcaModel m = pca_fit(X, q);
  ensure_parent(model_path);
  save_pca(model_path, m);
  const double total = m.eigenvalues.sum();
  out << "kept " << q << " of " << X.cols() << " dims";
  if (total > 0.0) out << ", leading eigenvalues sum " << total;
  out << "\n";
}

void cmd_pca_apply(const std::string& model_path, const std::string& in, const std::string& out_path) {
  const PcaModel m = load_pca(model_path);
  const Tensor t = read_tensor(in);
  ensure_parent(out_path);
  if (t.rank() == 1) {
    write_vector(out_path, pca_transform(m, tensor_to_vector(t)));
  } else {
    write_matrix(out_path, pca_transform_rows(m, tensor_to_matrix(t)));
  }
}

void cmd_pool(const std::vector<std::string>& inputs, int k, const std::string& out_path) {
  std::vector<ScoreMatrix> stack;
  stack.reserve(inputs.size());
  for (const auto& p : inputs) stack.emplace_back(read_matrix(p));
  const ScoreMatrix avg = average_scores(stack);
  ensure_parent(out_path);
  write_vector(out_path, k_average_pool(avg, PoolingParams{k}));
}

void cmd_train_svm(const std::string& in, const std::string& labels_path, const SvmParams& params,
                   const std::string& model_path, std::ostream& out) {
  const Eigen::MatrixXd X = read_matrix(in);
  const auto labels = require_labels(read_labels_csv(labels_path), labels_path);
  const LinearSvmModel m = svm_train(X, labels, params);
  ensure_parent(model_path);
  save_svm(model_path, m);
  const auto pred = svm_predict_rows(m, X);
  out << "train accuracy " << std::setprecision(4) << evaluate(pred, labels).overall_accuracy << "\n";
}

void write_predictions(const std::string& out_path, const std::vector<std::string>& ids,
                       const std::vector<EmotionLabel>& pred, Channel channel) {
  std::vector<DecisionRow> rows;
  rows.reserve(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) rows.push_back({ids[i], channel, pred[i]});
  ensure_parent(out_path);
  write_decisions_csv(out_path, rows);
}

void cmd_predict_svm(const std::string& model_path, const std::string& in, const std::string& labels_path,
                     const std::string& channel, const std::string& out_path) {
  const LinearSvmModel m = load_svm(model_path);
  const Eigen::MatrixXd X = read_matrix(in);
  const auto ids = read_labels_csv(labels_path);
  if (ids.size() != static_cast<std::size_t>(X.rows())) {
    throw Error(ErrorCode::kLengthMismatch, std::to_string(ids.size()) + " clip ids for " +
                                                std::to_string(X.rows()) + " feature rows");
  }
  std::vector<std::string> names;
  for (const auto& r : ids) names.push_back(r.clip_id);
  write_predictions(out_path, names, svm_predict_rows(m, X), parse_channel(channel));
}

void cmd_fuse_feat_train(const FeatureSource& src, const SvmParams& params, const std::string& model_path,
                         std::ostream& out) {
  const ChannelFeatures f = src.load();
  const auto labels = f.require_labels();
  const Eigen::MatrixXd joint = f.joint();
  const FeatureFusionModel m = feature_fusion_train(joint, labels, params);
  ensure_parent(model_path);
  save_feature_fusion(model_path, m);
  out << "joint dims " << joint.cols() << ", train accuracy " << std::setprecision(4)
      << evaluate(feature_fusion_predict_rows(m, joint), labels).overall_accuracy << "\n";
}

void cmd_fuse_feat_predict(const FeatureSource& src, const std::string& model_path,
                           const std::string& out_path) {
  const ChannelFeatures f = src.load();
  const FeatureFusionModel m = load_feature_fusion(model_path);
  write_predictions(out_path, f.clip_ids, feature_fusion_predict_rows(m, f.joint()), Channel::kJoint);
}

void cmd_fuse_bn_fit(const std::vector<std::string>& inputs, const std::string& labels_path,
                     const BnFitOptions& options, const std::string& model_path, std::ostream& out) {
  const auto truth_rows = read_labels_csv(labels_path);
  const auto truths = require_labels(truth_rows, labels_path);
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < truth_rows.size(); ++i) index.emplace(truth_rows[i].clip_id, i);

  std::vector<ClipDecisions> decisions(truth_rows.size());
  for (const auto& r : read_all_decisions(inputs)) {
    if (r.channel == Channel::kJoint) {
      throw Error(ErrorCode::kUnknownChannel, "joint decisions cannot feed a measurement node");
    }
    const auto it = index.find(r.clip_id);
    if (it == index.end()) {
      throw Error(ErrorCode::kMalformedRow, "clip " + r.clip_id + " is missing from " + labels_path);
    }
    auto& slot = decisions[it->second][static_cast<std::size_t>(r.channel)];
    if (slot) {
      throw Error(ErrorCode::kInvalidArgument, "clip " + r.clip_id + " has two " +
                                                   std::string(channel_name(r.channel)) + " decisions");
    }
    slot = r.predicted;
  }
  const BnFusionModel m = fit_bn_model(decisions, truths, options);
  ensure_parent(model_path);
  save_bn(model_path, m);
  out << "channels:";
  for (const auto& meas : m.measurements) out << " " << channel_name(meas.channel);
  out << "\n";
}

void cmd_fuse_bn_infer(const std::string& model_path, const std::vector<std::string>& inputs,
                       const std::string& out_path) {
  const BnFusionModel m = load_bn(model_path);
  const GroupedDecisions g = group_decisions(read_all_decisions(inputs));
  std::vector<EmotionLabel> fused;
  fused.reserve(g.clip_ids.size());
  for (std::size_t i = 0; i < g.clip_ids.size(); ++i) {
    try {
      fused.push_back(bn_infer(m, g.observations[i]).label);
    } catch (const Error& e) {
      throw Error(e.code(), "clip " + g.clip_ids[i] + ": " + e.detail());
    }
  }
  write_predictions(out_path, g.clip_ids, fused, Channel::kJoint);
}

struct IslandDemoArgs {
  std::uint64_t seed = 0;
  IslandLossParams loss;
  int per_class = 100;
  int epochs = 400;
  std::string out;
};

void cmd_island_demo(const IslandDemoArgs& a, std::ostream& out) {
  a.loss.validate();
  const BlobSet blobs = gaussian_blobs(kNumEmotions, a.per_class, 3.0, 1.0, a.seed);

  struct Run {
    const char* name;
    double lambda;
    double ratio;
    double accuracy;
  };
  std::vector<Run> runs = {{"softmax", 0.0, 0.0, 0.0}, {"island", a.loss.lambda, 0.0, 0.0}};
  for (auto& r : runs) {
    SoftmaxProbeConfig cfg;
    cfg.loss = a.loss;
    cfg.loss.lambda = r.lambda;
    cfg.epochs = a.epochs;
    cfg.seed = a.seed;
    const auto res = softmax_probe_train(blobs.points, blobs.labels, cfg);
    r.ratio = compactness_ratio(res.probe.features(blobs.points), blobs.labels);
    const auto pred = res.probe.predict(blobs.points);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < pred.size(); ++i) hits += pred[i] == blobs.labels[i];
    r.accuracy = static_cast<double>(hits) / static_cast<double>(pred.size());
  }

  out << std::left << std::setw(10) << "run" << std::setw(10) << "lambda" << std::setw(14)
      << "compactness" << "accuracy\n";
  for (const auto& r : runs) {
    out << std::setw(10) << r.name << std::setw(10) << r.lambda << std::setw(14) << std::setprecision(6)
        << r.ratio << r.accuracy << "\n";
  }
  if (!a.out.empty()) {
    ensure_parent(a.out);
    std::ofstream f(a.out, std::ios::binary);
    if (!f) throw Error(ErrorCode::kIo, "cannot write " + a.out);
    f << "run,lambda,lambda1,compactness_ratio,train_accuracy\n" << std::setprecision(17);
    for (const auto& r : runs) {
      f << r.name << "," << r.lambda << "," << a.loss.lambda1 << "," << r.ratio << "," << r.accuracy << "\n";
    }
    if (!f) throw Error(ErrorCode::kIo, "cannot write " + a.out);
  }
}

void cmd_evaluate(const std::vector<std::string>& inputs, const std::string& labels_path,
                  const std::string& channel, const std::string& out_path, std::ostream& out) {
  const auto truth_rows = read_labels_csv(labels_path);
  std::map<std::string, std::optional<EmotionLabel>> truth;
  for (const auto& r : truth_rows) truth.emplace(r.clip_id, r.label);

  auto rows = read_all_decisions(inputs);
  if (!channel.empty()) {
    const Channel want = parse_channel(channel);
    std::erase_if(rows, [&](const DecisionRow& r) { return r.channel != want; });
  } else {
    for (const auto& r : rows) {
      if (r.channel != rows.front().channel) {
        throw Error(ErrorCode::kInvalidArgument, "predictions mix channels; pick one with --channel");
      }
    }
  }

  std::vector<EmotionLabel> pred;
  std::vector<EmotionLabel> truths;
  for (const auto& r : rows) {
    const auto it = truth.find(r.clip_id);
    if (it == truth.end() || !it->second) {
      throw Error(ErrorCode::kMalformedRow, "no true label for clip " + r.clip_id);
    }
    pred.push_back(r.predicted);
    truths.push_back(*it->second);
  }
  const EvalReport report = evaluate(pred, truths);
  print_report(out, report);
  if (!out_path.empty()) {
    ensure_parent(out_path);
    write_report_csv(out_path, report);
  }
}

struct ExperimentArgs {
  std::uint64_t seed = 1;
  std::size_t replicates = 1;
  std::vector<std::string> fail;
  std::string out;
};

void cmd_experiment(const ExperimentArgs& a, std::ostream& out) {
  std::ofstream csv;
  if (!a.out.empty()) {
    ensure_parent(a.out);
    csv.open(a.out, std::ios::binary);
    if (!csv) throw Error(ErrorCode::kIo, "cannot write " + a.out);
    csv << "seed,audio,lbptop,cnn,blstm,feature_fusion,model_fusion\n" << std::setprecision(17);
  }
  out << std::left << std::setw(6) << "seed";
  for (const auto c : kMeasurementChannels) out << std::setw(9) << channel_name(c);
  out << std::setw(9) << "feature" << "model\n" << std::fixed << std::setprecision(4);
  for (std::size_t r = 0; r < a.replicates; ++r) {
    FusionExperimentConfig cfg = baseline_experiment_config(a.seed + r);
    for (const auto& name : a.fail) {
      const Channel c = parse_channel(name);
      if (c == Channel::kJoint) throw Error(ErrorCode::kUnknownChannel, "joint is not a measurement channel");
      cfg.synth.failed[static_cast<std::size_t>(c)] = true;
    }
    const auto res = run_fusion_experiment(cfg);
    out << std::setw(6) << cfg.synth.seed;
    for (const double v : res.channel_accuracy) out << std::setw(9) << v;
    out << std::setw(9) << res.feature_fusion_accuracy << res.model_fusion_accuracy << "\n";
    if (csv.is_open()) {
      csv << cfg.synth.seed;
      for (const double v : res.channel_accuracy) csv << "," << v;
      csv << "," << res.feature_fusion_accuracy << "," << res.model_fusion_accuracy << "\n";
    }
  }
  out.unsetf(std::ios::fixed);
}

}  // namespace

int run_pipeline(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Audio-visual emotion fusion pipeline"};
  app.name("avfusion");
  app.require_subcommand(1, 1);

  SynthArgs synth;
  auto* c_synth = app.add_subcommand("synth", "Generate a synthetic four-channel dataset");
  c_synth->add_option("--out", synth.out, "Output directory")->required();
  c_synth->add_option("--seed", synth.seed, "Random seed");
  c_synth->add_option("--info", synth.info, "Informativeness per channel (audio,lbptop,cnn,blstm)")
      ->delimiter(',')
      ->expected(4);
  c_synth->add_option("--fail", synth.fail, "Channels that emit label-independent noise")->delimiter(',');
  c_synth->add_option("--split", synth.splits, "name:count, repeatable; manifests are <name>.csv");
  c_synth->add_option("--separation", synth.separation, "Class-mean distance at informativeness 1");
  c_synth->add_option("--min-frames", synth.min_frames, "Shortest CNN clip");
  c_synth->add_option("--max-frames", synth.max_frames, "Longest CNN clip");

  FeatureSource extract_src;
  std::string extract_out;
  auto* c_extract = app.add_subcommand("extract", "Turn a manifest into per-channel feature matrices");
  extract_src.add_to(c_extract);
  c_extract->add_option("--out", extract_out, "Output directory")->required();

  std::string lbp_in, lbp_out;
  LbpTopParams lbp;
  auto* c_lbptop = app.add_subcommand("lbptop", "LBP-TOP descriptor of a [T,H,W] volume");
  c_lbptop->add_option("--in", lbp_in, "Volume tensor")->required();
  c_lbptop->add_option("--out", lbp_out, "Descriptor tensor")->required();
  c_lbptop->add_option("--grid-rows", lbp.grid_rows, "Block rows");
  c_lbptop->add_option("--grid-cols", lbp.grid_cols, "Block columns");
  c_lbptop->add_option("--radius-x", lbp.radius_x, "Radius along x");
  c_lbptop->add_option("--radius-y", lbp.radius_y, "Radius along y");
  c_lbptop->add_option("--radius-t", lbp.radius_t, "Radius along t");

  auto* c_pca = app.add_subcommand("pca", "Fit or apply a PCA projection");
  c_pca->require_subcommand(1, 1);
  std::string pca_in, pca_out, pca_model;
  int pca_q = 20;
  auto* c_pca_fit = c_pca->add_subcommand("fit", "Fit on the rows of a matrix");
  c_pca_fit->add_option("--in", pca_in, "Row-per-sample matrix")->required();
  c_pca_fit->add_option("--components", pca_q, "Components to keep")->check(CLI::PositiveNumber);
  c_pca_fit->add_option("--out", pca_model, "Model sidecar (.json)")->required();
  auto* c_pca_apply = c_pca->add_subcommand("apply", "Project a vector or matrix rows");
  c_pca_apply->add_option("--model", pca_model, "Model sidecar")->required();
  c_pca_apply->add_option("--in", pca_in, "Input tensor")->required();
  c_pca_apply->add_option("--out", pca_out, "Projected tensor")->required();

  std::vector<std::string> pool_in;
  std::string pool_out;
  int pool_k = 7;
  auto* c_pool = app.add_subcommand("pool", "Average frame-score matrices and k-average pool them");
  c_pool->add_option("--in", pool_in, "Score matrices, one per network")->required();
  c_pool->add_option("--k", pool_k, "Bins")->check(CLI::PositiveNumber);
  c_pool->add_option("--out", pool_out, "Pooled vector")->required();

  std::string svm_in, svm_labels, svm_model, svm_out, svm_channel;
  SvmParams svm;
  auto* c_train_svm = app.add_subcommand("train-svm", "Train a one-vs-rest linear SVM");
  c_train_svm->add_option("--in", svm_in, "Row-per-clip features")->required();
  c_train_svm->add_option("--labels", svm_labels, "clip_id,label CSV in row order")->required();
  c_train_svm->add_option("--out", svm_model, "Model sidecar (.json)")->required();
  c_train_svm->add_option("--C", svm.C, "Soft-margin constant")->check(CLI::PositiveNumber);
  c_train_svm->add_option("--epochs", svm.epochs, "Subgradient passes")->check(CLI::PositiveNumber);
  c_train_svm->add_option("--seed", svm.seed, "Recorded in the model");

  auto* c_predict_svm = app.add_subcommand("predict-svm", "Write per-clip SVM decisions");
  c_predict_svm->add_option("--model", svm_model, "Model sidecar")->required();
  c_predict_svm->add_option("--in", svm_in, "Row-per-clip features")->required();
  c_predict_svm->add_option("--labels", svm_labels, "CSV giving the clip ids in row order")->required();
  c_predict_svm->add_option("--channel", svm_channel, "Channel name for the decisions")->required();
  c_predict_svm->add_option("--out", svm_out, "Decisions CSV")->required();

  auto* c_fuse_feat = app.add_subcommand("fuse-feat", "Feature-level fusion");
  c_fuse_feat->require_subcommand(1, 1);
  FeatureSource ff_src;
  std::string ff_model, ff_out;
  SvmParams ff_svm;
  auto* c_ff_train = c_fuse_feat->add_subcommand("train", "Normalize joint vectors and train the SVM");
  ff_src.add_to(c_ff_train);
  c_ff_train->add_option("--out", ff_model, "Model sidecar (.json)")->required();
  c_ff_train->add_option("--C", ff_svm.C, "Soft-margin constant")->check(CLI::PositiveNumber);
  c_ff_train->add_option("--epochs", ff_svm.epochs, "Subgradient passes")->check(CLI::PositiveNumber);
  c_ff_train->add_option("--seed", ff_svm.seed, "Recorded in the model");
  auto* c_ff_predict = c_fuse_feat->add_subcommand("predict", "Write joint decisions");
  ff_src.add_to(c_ff_predict);
  c_ff_predict->add_option("--model", ff_model, "Model sidecar")->required();
  c_ff_predict->add_option("--out", ff_out, "Decisions CSV")->required();

  auto* c_fuse_bn = app.add_subcommand("fuse-bn", "Model-level fusion with a Bayesian network");
  c_fuse_bn->require_subcommand(1, 1);
  std::vector<std::string> bn_in;
  std::string bn_labels, bn_model, bn_out, bn_mode = "confusion", bn_prior = "uniform";
  double bn_alpha = 1.0;
  auto* c_bn_fit = c_fuse_bn->add_subcommand("fit", "Fit CPTs from channel decisions");
  c_bn_fit->add_option("--in", bn_in, "Decisions CSVs")->required();
  c_bn_fit->add_option("--labels", bn_labels, "clip_id,label CSV with the truths")->required();
  c_bn_fit->add_option("--out", bn_model, "Model JSON")->required();
  c_bn_fit->add_option("--mode", bn_mode, "confusion or accuracy");
  c_bn_fit->add_option("--alpha", bn_alpha, "Laplace smoothing count")->check(CLI::NonNegativeNumber);
  c_bn_fit->add_option("--prior", bn_prior, "uniform or empirical");
  auto* c_bn_infer = c_fuse_bn->add_subcommand("infer", "MAP emotion per clip");
  c_bn_infer->add_option("--model", bn_model, "Model JSON")->required();
  c_bn_infer->add_option("--in", bn_in, "Decisions CSVs")->required();
  c_bn_infer->add_option("--out", bn_out, "Fused decisions CSV")->required();

  IslandDemoArgs island;
  auto* c_island = app.add_subcommand("island-demo", "Compare softmax and island-loss probes on 2-D blobs");
  c_island->add_option("--seed", island.seed, "Random seed");
  c_island->add_option("--lambda", island.loss.lambda, "Island loss weight");
  c_island->add_option("--lambda1", island.loss.lambda1, "Pairwise center term weight");
  c_island->add_option("--alpha", island.loss.alpha, "Center learning rate");
  c_island->add_option("--per-class", island.per_class, "Points per class")->check(CLI::PositiveNumber);
  c_island->add_option("--epochs", island.epochs, "Training epochs")->check(CLI::PositiveNumber);
  c_island->add_option("--out", island.out, "Result CSV");

  std::vector<std::string> eval_in;
  std::string eval_labels, eval_channel, eval_out;
  auto* c_evaluate = app.add_subcommand("evaluate", "Accuracy and confusion of decisions against truths");
  c_evaluate->add_option("--in", eval_in, "Decisions CSVs")->required();
  c_evaluate->add_option("--labels", eval_labels, "clip_id,label CSV")->required();
  c_evaluate->add_option("--channel", eval_channel, "Only rows of this channel");
  c_evaluate->add_option("--out", eval_out, "Report CSV");

  ExperimentArgs experiment;
  auto* c_experiment = app.add_subcommand("experiment", "Run both fusion paths on fresh synthetic splits");
  c_experiment->add_option("--seed", experiment.seed, "First seed");
  c_experiment->add_option("--replicates", experiment.replicates, "Consecutive seeds to run")
      ->check(CLI::PositiveNumber);
  c_experiment->add_option("--fail", experiment.fail, "Channels forced uninformative")->delimiter(',');
  c_experiment->add_option("--out", experiment.out, "Result CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsageError;
  }

  try {
    if (*c_synth) {
      cmd_synth(synth, out);
    } else if (*c_extract) {
      cmd_extract(extract_src, extract_out, out);
    } else if (*c_lbptop) {
      cmd_lbptop(lbp_in, lbp_out, lbp, out);
    } else if (*c_pca_fit) {
      cmd_pca_fit(pca_in, pca_q, pca_model, out);
    } else if (*c_pca_apply) {
      cmd_pca_apply(pca_model, pca_in, pca_out);
    } else if (*c_pool) {
      cmd_pool(pool_in, pool_k, pool_out);
    } else if (*c_train_svm) {
      cmd_train_svm(svm_in, svm_labels, svm, svm_model, out);
    } else if (*c_predict_svm) {
      cmd_predict_svm(svm_model, svm_in, svm_labels, svm_channel, svm_out);
    } else if (*c_ff_train) {
      cmd_fuse_feat_train(ff_src, ff_svm, ff_model, out);
    } else if (*c_ff_predict) {
      cmd_fuse_feat_predict(ff_src, ff_model, ff_out);
    } else if (*c_bn_fit) {
      cmd_fuse_bn_fit(bn_in, bn_labels,
                      BnFitOptions{parse_cpt_mode(bn_mode), bn_alpha, parse_prior_mode(bn_prior)}, bn_model,
                      out);
    } else if (*c_bn_infer) {
      cmd_fuse_bn_infer(bn_model, bn_in, bn_out);
    } else if (*c_island) {
      cmd_island_demo(island, out);
    } else if (*c_evaluate) {
      cmd_evaluate(eval_in, eval_labels, eval_channel, eval_out, out);
    } else if (*c_experiment) {
      cmd_experiment(experiment, out);
    }
  } catch (const Error& e) {
    err << "avfusion: " << e.what() << "\n";
    return kExitDataError;
  } catch (const std::exception& e) {
    err << "avfusion: " << e.what() << "\n";
    return kExitDataError;
  }
  return kExitOk;
}

}  // namespace avf::cli
