#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "avfusion/emotion.hpp"

namespace avf {

struct ManifestEntry {
  std::string clip_id;
  std::optional<EmotionLabel> label;  // absent in test-set mode
  // Indexed by Channel (audio, lbptop, cnn, blstm); empty when the channel is absent.
  std::array<std::filesystem::path, 4> paths;

  const std::filesystem::path& path(Channel c) const { return paths.at(static_cast<std::size_t>(c)); }
};

struct DatasetManifest {
  std::vector<ManifestEntry> entries;
};

inline constexpr std::string_view kManifestHeader =
    "clip_id,label,audio,lbptop_video,cnn_scores,blstm_feat";

/// Parses the manifest CSV. Relative paths resolve against the manifest's
/// directory and must exist. Throws kMalformedRow, kDuplicateClipId,
/// kUnknownLabel, kMissingFile or kIo.
DatasetManifest load_manifest(const std::filesystem::path& path);

/// Writes paths relative to the manifest's directory when they live below it.
void write_manifest(const std::filesystem::path& path, const DatasetManifest& manifest);

/// Splits one CSV line on commas; cells are unquoted.
std::vector<std::string> split_csv_line(std::string_view line);

}  // namespace avf
