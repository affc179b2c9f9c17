#include "avfusion/manifest.hpp"

#include <fstream>
#include <unordered_set>

#include "avfusion/error.hpp"

namespace avf {

std::vector<std::string> split_csv_line(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.emplace_back(line.substr(start));
      break;
    }
    cells.emplace_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return cells;
}

DatasetManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open manifest " + path.string());
  const auto base = path.parent_path();

  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kMalformedRow, "manifest has no header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kManifestHeader) {
    throw Error(ErrorCode::kMalformedRow, "unexpected manifest header '" + line + "'");
  }

  DatasetManifest manifest;
  std::unordered_set<std::string> seen;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != 6 || cells[0].empty()) {
      throw Error(ErrorCode::kMalformedRow, "line " + std::to_string(line_no));
    }
    ManifestEntry entry;
    entry.clip_id = cells[0];
    if (!seen.insert(entry.clip_id).second) {
      throw Error(ErrorCode::kDuplicateClipId, "'" + entry.clip_id + "'");
    }
    if (!cells[1].empty()) entry.label = EmotionLabel::parse(cells[1]);
    for (std::size_t c = 0; c < 4; ++c) {
      if (cells[c + 2].empty()) continue;
      std::filesystem::path p = cells[c + 2];
      if (p.is_relative()) p = base / p;
      if (!std::filesystem::exists(p)) {
        throw Error(ErrorCode::kMissingFile, p.string() + " (clip " + entry.clip_id + ")");
      }
      entry.paths[c] = p;
    }
    manifest.entries.push_back(std::move(entry));
  }
  return manifest;
}

void write_manifest(const std::filesystem::path& path, const DatasetManifest& manifest) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  const auto base = path.parent_path();
  out << kManifestHeader << '\n';
  for (const auto& e : manifest.entries) {
    out << e.clip_id << ',' << (e.label ? e.label->name() : std::string_view{});
    for (const auto& p : e.paths) {
      out << ',';
      if (p.empty()) continue;
      auto rel = p.lexically_relative(base.empty() ? std::filesystem::path(".") : base);
      out << ((rel.empty() || *rel.begin() == "..") ? p : rel).generic_string();
    }
    out << '\n';
  }
  if (!out) throw Error(ErrorCode::kIo, "write failed: " + path.string());
}

}  // namespace avf
