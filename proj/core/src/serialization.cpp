#include "avfusion/serialization.hpp"

#include <fstream>
#include <string>

#include <json.hpp>

#include "avfusion/error.hpp"
#include "avfusion/manifest.hpp"
#include "avfusion/tensor_io.hpp"

namespace avf {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string tensor_name(const fs::path& sidecar, const std::string& key) {
  return sidecar.stem().string() + "." + key + ".fvt";
}

fs::path resolve(const fs::path& sidecar, const std::string& name) {
  return sidecar.parent_path() / name;
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  out << j.dump(2) << '\n';
  if (!out) throw Error(ErrorCode::kIo, "write failed: " + path.string());
}

json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kMalformed, path.string() + ": " + e.what());
  }
}

void expect_type(const json& j, const char* type, const fs::path& path) {
  if (!j.is_object() || j.value("type", "") != type) {
    throw Error(ErrorCode::kMalformed, path.string() + " is not a " + type + " model");
  }
}

template <typename F>
auto guarded(const fs::path& path, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kMalformed, path.string() + ": " + e.what());
  }
}

// Tensor-backed sections are written with a key prefix so that composite
// models (feature fusion) can share one sidecar.
json normalization_section(const fs::path& sidecar, const std::string& prefix,
                           const NormalizationModel& m) {
  json j;
  j["dim"] = m.dim();
  j["tensors"] = {{"mean", tensor_name(sidecar, prefix + "mean")},
                  {"std", tensor_name(sidecar, prefix + "std")}};
  std::vector<Eigen::Index> zero;
  for (std::size_t i = 0; i < m.zero_std.size(); ++i) {
    if (m.zero_std[i]) zero.push_back(static_cast<Eigen::Index>(i));
  }
  j["zero_std"] = zero;
  write_vector(resolve(sidecar, j["tensors"]["mean"]), m.per_dim_mean);
  write_vector(resolve(sidecar, j["tensors"]["std"]), m.per_dim_std);
  return j;
}

NormalizationModel parse_normalization(const fs::path& sidecar, const json& j) {
  NormalizationModel m;
  m.per_dim_mean = tensor_to_vector(read_tensor(resolve(sidecar, j.at("tensors").at("mean"))));
  m.per_dim_std = tensor_to_vector(read_tensor(resolve(sidecar, j.at("tensors").at("std"))));
  if (m.per_dim_mean.size() != m.per_dim_std.size()) {
    throw Error(ErrorCode::kMalformed, "normalization mean/std sizes differ");
  }
  m.zero_std.assign(static_cast<std::size_t>(m.per_dim_mean.size()), false);
  for (const auto& idx : j.at("zero_std")) {
    const auto i = idx.get<std::size_t>();
    if (i >= m.zero_std.size()) throw Error(ErrorCode::kMalformed, "zero_std index out of range");
    m.zero_std[i] = true;
  }
  return m;
}

json svm_section(const fs::path& sidecar, const std::string& prefix, const LinearSvmModel& m) {
  json j;
  j["dim"] = m.dim();
  j["C"] = m.params.C;
  j["epochs"] = m.params.epochs;
  j["seed"] = m.params.seed;
  j["tensors"] = {{"weights", tensor_name(sidecar, prefix + "weights")},
                  {"bias", tensor_name(sidecar, prefix + "bias")}};
  write_matrix(resolve(sidecar, j["tensors"]["weights"]), m.weights);
  write_vector(resolve(sidecar, j["tensors"]["bias"]), m.bias);
  return j;
}

LinearSvmModel parse_svm(const fs::path& sidecar, const json& j) {
  LinearSvmModel m;
  m.params.C = j.at("C").get<double>();
  m.params.epochs = j.at("epochs").get<int>();
  m.params.seed = j.at("seed").get<std::uint64_t>();
  m.weights = tensor_to_matrix(read_tensor(resolve(sidecar, j.at("tensors").at("weights"))));
  m.bias = tensor_to_vector(read_tensor(resolve(sidecar, j.at("tensors").at("bias"))));
  if (m.weights.rows() != kNumEmotions || m.bias.size() != kNumEmotions) {
    throw Error(ErrorCode::kMalformed, "SVM model must have 7 classes");
  }
  return m;
}

std::string_view cpt_mode_name(CptMode mode) {
  return mode == CptMode::kConfusion ? "confusion" : "accuracy";
}

}  // namespace

void save_pca(const fs::path& sidecar, const PcaModel& model) {
  json j;
  j["type"] = "pca";
  j["input_dim"] = model.input_dim();
  j["components"] = model.output_dim();
  j["tensors"] = {{"mean", tensor_name(sidecar, "mean")},
                  {"components", tensor_name(sidecar, "components")},
                  {"eigenvalues", tensor_name(sidecar, "eigenvalues")}};
  write_vector(resolve(sidecar, j["tensors"]["mean"]), model.mean);
  write_matrix(resolve(sidecar, j["tensors"]["components"]), model.components);
  write_vector(resolve(sidecar, j["tensors"]["eigenvalues"]), model.eigenvalues);
  write_json(sidecar, j);
}

PcaModel load_pca(const fs::path& sidecar) {
  const json j = read_json(sidecar);
  expect_type(j, "pca", sidecar);
  return guarded(sidecar, [&] {
    PcaModel m;
    const auto& t = j.at("tensors");
    m.mean = tensor_to_vector(read_tensor(resolve(sidecar, t.at("mean"))));
    m.components = tensor_to_matrix(read_tensor(resolve(sidecar, t.at("components"))));
    m.eigenvalues = tensor_to_vector(read_tensor(resolve(sidecar, t.at("eigenvalues"))));
    if (m.components.cols() != m.mean.size() || m.components.rows() != m.eigenvalues.size()) {
      throw Error(ErrorCode::kMalformed, sidecar.string() + ": inconsistent PCA tensor shapes");
    }
    return m;
  });
}

void save_normalization(const fs::path& sidecar, const NormalizationModel& model) {
  json j = normalization_section(sidecar, "", model);
  j["type"] = "normalization";
  write_json(sidecar, j);
}

NormalizationModel load_normalization(const fs::path& sidecar) {
  const json j = read_json(sidecar);
  expect_type(j, "normalization", sidecar);
  return guarded(sidecar, [&] { return parse_normalization(sidecar, j); });
}

void save_svm(const fs::path& sidecar, const LinearSvmModel& model) {
  json j = svm_section(sidecar, "", model);
  j["type"] = "linear_svm";
  write_json(sidecar, j);
}

LinearSvmModel load_svm(const fs::path& sidecar) {
  const json j = read_json(sidecar);
  expect_type(j, "linear_svm", sidecar);
  return guarded(sidecar, [&] { return parse_svm(sidecar, j); });
}

void save_feature_fusion(const fs::path& sidecar, const FeatureFusionModel& model) {
  json j;
  j["type"] = "feature_fusion";
  j["normalization"] = normalization_section(sidecar, "norm_", model.normalization);
  j["svm"] = svm_section(sidecar, "svm_", model.svm);
  write_json(sidecar, j);
}

FeatureFusionModel load_feature_fusion(const fs::path& sidecar) {
  const json j = read_json(sidecar);
  expect_type(j, "feature_fusion", sidecar);
  return guarded(sidecar, [&] {
    FeatureFusionModel m;
    m.normalization = parse_normalization(sidecar, j.at("normalization"));
    m.svm = parse_svm(sidecar, j.at("svm"));
    if (m.svm.dim() != m.normalization.dim()) {
      throw Error(ErrorCode::kMalformed, "feature fusion normalization/SVM dims differ");
    }
    return m;
  });
}

void save_bn(const fs::path& path, const BnFusionModel& model) {
  model.validate();
  json j;
  j["type"] = "bn_fusion";
  j["prior"] = std::vector<double>(model.prior.begin(), model.prior.end());
  j["cpt_mode"] = cpt_mode_name(model.mode);
  j["smoothing"] = model.smoothing;
  j["measurements"] = json::array();
  for (const auto& m : model.measurements) {
    j["measurements"].push_back(
        {{"channel", channel_name(m.channel)},
         {"cpt", std::vector<double>(m.cpt.data(), m.cpt.data() + m.cpt.size())}});
  }
  write_json(path, j);
}

BnFusionModel load_bn(const fs::path& path) {
  const json j = read_json(path);
  expect_type(j, "bn_fusion", path);
  BnFusionModel model = guarded(path, [&] {
    BnFusionModel m;
    const auto prior = j.at("prior").get<std::vector<double>>();
    if (prior.size() != kNumEmotions) throw Error(ErrorCode::kMalformed, "prior needs 7 entries");
    for (int e = 0; e < kNumEmotions; ++e) m.prior[e] = prior[static_cast<std::size_t>(e)];
    const auto mode = j.at("cpt_mode").get<std::string>();
    if (mode == "confusion") {
      m.mode = CptMode::kConfusion;
    } else if (mode == "accuracy") {
      m.mode = CptMode::kAccuracy;
    } else {
      throw Error(ErrorCode::kMalformed, "unknown cpt_mode '" + mode + "'");
    }
    m.smoothing = j.at("smoothing").get<double>();
    for (const auto& entry : j.at("measurements")) {
      MeasurementModel mm;
      mm.channel = parse_channel(entry.at("channel").get<std::string>());
      const auto cpt = entry.at("cpt").get<std::vector<double>>();
      if (cpt.size() != kNumEmotions * kNumEmotions) {
        throw Error(ErrorCode::kMalformed, "CPT needs 49 entries");
      }
      std::copy(cpt.begin(), cpt.end(), mm.cpt.data());
      m.measurements.push_back(mm);
    }
    return m;
  });
  model.validate();
  return model;
}

void write_labels_csv(const fs::path& path, std::span<const LabelRow> rows) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  out << "clip_id,label\n";
  for (const auto& r : rows) {
    out << r.clip_id << ',' << (r.label ? r.label->name() : std::string_view{}) << '\n';
  }
  if (!out) throw Error(ErrorCode::kIo, "write failed: " + path.string());
}

std::vector<LabelRow> read_labels_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || split_csv_line(line) != std::vector<std::string>{"clip_id", "label"}) {
    throw Error(ErrorCode::kMalformedRow, path.string() + ": expected header clip_id,label");
  }
  std::vector<LabelRow> rows;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    auto cells = split_csv_line(line);
    if (cells.size() != 2 || cells[0].empty()) {
      throw Error(ErrorCode::kMalformedRow, path.string() + ": '" + line + "'");
    }
    LabelRow r{cells[0], std::nullopt};
    if (!cells[1].empty()) r.label = EmotionLabel::parse(cells[1]);
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_decisions_csv(const fs::path& path, std::span<const DecisionRow> rows) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  out << "clip_id,channel,predicted_label\n";
  for (const auto& r : rows) {
    out << r.clip_id << ',' << channel_name(r.channel) << ',' << r.predicted.name() << '\n';
  }
  if (!out) throw Error(ErrorCode::kIo, "write failed: " + path.string());
}

std::vector<DecisionRow> read_decisions_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kMalformedRow, path.string() + ": empty file");
  const auto header = split_csv_line(line);
  const bool with_channel = header == std::vector<std::string>{"clip_id", "channel", "predicted_label"};
  if (!with_channel && header != std::vector<std::string>{"clip_id", "predicted_label"}) {
    throw Error(ErrorCode::kMalformedRow, path.string() + ": unexpected header '" + line + "'");
  }
  std::vector<DecisionRow> rows;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != (with_channel ? 3u : 2u) || cells[0].empty()) {
      throw Error(ErrorCode::kMalformedRow, path.string() + ": '" + line + "'");
    }
    rows.push_back(with_channel
                       ? DecisionRow{cells[0], parse_channel(cells[1]), EmotionLabel::parse(cells[2])}
                       : DecisionRow{cells[0], Channel::kJoint, EmotionLabel::parse(cells[1])});
  }
  return rows;
}

}  // namespace avf
