#include "avfusion/lbptop.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <future>
#include <numbers>
#include <string>
#include <thread>

#include "avfusion/error.hpp"

namespace avf {
namespace {

struct Tap {
  std::ptrdiff_t offset;  // linear index delta from the center voxel
  double weight;
};

// Up to four bilinear taps for one neighbor; lattice samples use a single tap.
struct NeighborTaps {
  std::array<Tap, 4> taps{};
  int count = 0;
};

double snap(double v) {
  const double r = std::round(v);
  return std::abs(v - r) < 1e-6 ? r : v;
}

std::array<NeighborTaps, 8> plane_taps(int radius_u, int radius_v, std::ptrdiff_t stride_u,
                                       std::ptrdiff_t stride_v) {
  std::array<NeighborTaps, 8> out;
  for (int k = 0; k < 8; ++k) {
    const double angle = 2.0 * std::numbers::pi * k / 8.0;
    const double du = snap(radius_u * std::cos(angle));
    const double dv = snap(-radius_v * std::sin(angle));
    const double fu = std::floor(du);
    const double fv = std::floor(dv);
    const double tu = du - fu;
    const double tv = dv - fv;
    const auto base = static_cast<std::ptrdiff_t>(fu) * stride_u +
                      static_cast<std::ptrdiff_t>(fv) * stride_v;
    auto& n = out[static_cast<std::size_t>(k)];
    auto add = [&](std::ptrdiff_t off, double w) {
      if (w != 0.0) n.taps[static_cast<std::size_t>(n.count++)] = {off, w};
    };
    // Fixed corner order: (0,0), (1,0), (0,1), (1,1).
    add(base, (1.0 - tu) * (1.0 - tv));
    add(base + stride_u, tu * (1.0 - tv));
    add(base + stride_v, (1.0 - tu) * tv);
    add(base + stride_u + stride_v, tu * tv);
  }
  return out;
}

inline std::uint8_t code_at(const double* center, const std::array<NeighborTaps, 8>& taps) {
  const double c = *center;
  unsigned code = 0;
  for (unsigned k = 0; k < 8; ++k) {
    const auto& n = taps[k];
    double d = 0.0;
    for (int i = 0; i < n.count; ++i) d += n.taps[i].weight * (center[n.taps[i].offset] - c);
    code |= static_cast<unsigned>(d >= 0.0) << k;
  }
  return static_cast<std::uint8_t>(code);
}

}  // namespace

void LbpTopParams::validate() const {
  if (neighbors != 8) {
    throw Error(ErrorCode::kInvalidArgument,
                "LBP-TOP uses 8 neighbors, got " + std::to_string(neighbors));
  }
  if (radius_x < 1 || radius_y < 1 || radius_t < 1) {
    throw Error(ErrorCode::kInvalidArgument, "LBP radii must be >= 1");
  }
  if (grid_rows < 1 || grid_cols < 1) {
    throw Error(ErrorCode::kInvalidArgument, "block grid dims must be >= 1");
  }
}

int circular_transitions(std::uint8_t code) noexcept {
  const auto rotated = static_cast<std::uint8_t>((code >> 1) | (code << 7));
  return std::popcount(static_cast<unsigned>(code ^ rotated));
}

UniformMapping build_uniform_mapping() {
  UniformMapping map{};
  std::uint8_t next = 0;
  for (int c = 0; c < 256; ++c) {
    const auto code = static_cast<std::uint8_t>(c);
    map[static_cast<std::size_t>(c)] = circular_transitions(code) <= 2 ? next++ : 58;
  }
  return map;
}

std::vector<std::pair<std::size_t, std::size_t>> partition_extent(std::size_t extent,
                                                                  std::size_t parts) {
  std::vector<std::pair<std::size_t, std::size_t>> ranges;
  ranges.reserve(parts);
  const std::size_t base = extent / parts;
  const std::size_t extra = extent % parts;
  std::size_t begin = 0;
  for (std::size_t i = 0; i < parts; ++i) {
    const std::size_t len = base + (i < extra ? 1 : 0);
    ranges.emplace_back(begin, begin + len);
    begin += len;
  }
  return ranges;
}

std::vector<std::uint64_t> lbp_top_histograms(const VideoVolume& volume,
                                              const LbpTopParams& params) {
  params.validate();
  const std::size_t T = volume.frames();
  const std::size_t H = volume.height();
  const std::size_t W = volume.width();
  const auto rows = static_cast<std::size_t>(params.grid_rows);
  const auto cols = static_cast<std::size_t>(params.grid_cols);
  if (H < rows || W < cols) {
    throw Error(ErrorCode::kGridLargerThanFrame,
                std::to_string(rows) + "x" + std::to_string(cols) + " grid on " +
                    std::to_string(H) + "x" + std::to_string(W) + " frames");
  }

  const auto sx = std::ptrdiff_t{1};
  const auto sy = static_cast<std::ptrdiff_t>(W);
  const auto st = static_cast<std::ptrdiff_t>(H * W);
  const std::array<std::array<NeighborTaps, 8>, 3> taps = {
      plane_taps(params.radius_x, params.radius_y, sx, sy),
      plane_taps(params.radius_x, params.radius_t, sx, st),
      plane_taps(params.radius_y, params.radius_t, sy, st)};
  const UniformMapping map = build_uniform_mapping();

  auto block_index = [](std::size_t extent, std::size_t parts) {
    std::vector<std::size_t> index(extent);
    const auto ranges = partition_extent(extent, parts);
    for (std::size_t i = 0; i < parts; ++i) {
      for (std::size_t v = ranges[i].first; v < ranges[i].second; ++v) index[v] = i;
    }
    return index;
  };
  const auto block_row = block_index(H, rows);
  const auto block_col = block_index(W, cols);

  auto interior = [](std::size_t v, std::size_t extent, int radius) {
    const auto r = static_cast<std::size_t>(radius);
    return v >= r && v + r < extent;
  };

  const std::size_t hist_len = rows * cols * kLbpPlanes * kUniformBins;
  const double* data = volume.data().data();

  // Each worker owns a frame range and its own integer counts; merging sums
  // is order-independent, so the result does not depend on the split.
  auto count_frames = [&](std::size_t t0, std::size_t t1) {
    std::vector<std::uint64_t> hist(hist_len, 0);
    for (std::size_t t = t0; t < t1; ++t) {
      const bool t_ok = interior(t, T, params.radius_t);
      for (std::size_t y = 0; y < H; ++y) {
        const bool y_ok = interior(y, H, params.radius_y);
        if (!y_ok && !t_ok) continue;
        const std::size_t row_base = block_row[y] * cols;
        const double* line = data + (t * H + y) * W;
        for (std::size_t x = 0; x < W; ++x) {
          const bool x_ok = interior(x, W, params.radius_x);
          const std::size_t block = (row_base + block_col[x]) * kLbpPlanes * kUniformBins;
          const double* center = line + x;
          if (x_ok && y_ok) ++hist[block + map[code_at(center, taps[0])]];
          if (x_ok && t_ok) ++hist[block + kUniformBins + map[code_at(center, taps[1])]];
          if (y_ok && t_ok) ++hist[block + 2 * kUniformBins + map[code_at(center, taps[2])]];
        }
      }
    }
    return hist;
  };

  const std::size_t voxels = T * H * W;
  const std::size_t hw_threads = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = voxels < (1u << 16) ? 1 : std::min<std::size_t>(hw_threads, T);
  if (workers <= 1) return count_frames(0, T);

  std::vector<std::future<std::vector<std::uint64_t>>> parts;
  for (auto [t0, t1] : partition_extent(T, workers)) {
    parts.push_back(std::async(std::launch::async, count_frames, t0, t1));
  }
  std::vector<std::uint64_t> hist(hist_len, 0);
  for (auto& f : parts) {
    const auto part = f.get();
    for (std::size_t i = 0; i < hist_len; ++i) hist[i] += part[i];
  }
  return hist;
}

Eigen::VectorXd lbp_top_descriptor(const VideoVolume& volume, const LbpTopParams& params) {
  const auto counts = lbp_top_histograms(volume, params);
  Eigen::VectorXd out(static_cast<Eigen::Index>(counts.size()));
  for (std::size_t seg = 0; seg < counts.size(); seg += kUniformBins) {
    std::uint64_t total = 0;
    for (int b = 0; b < kUniformBins; ++b) total += counts[seg + static_cast<std::size_t>(b)];
    const double scale =
        (params.normalize_histograms && total > 0) ? 1.0 / static_cast<double>(total) : 1.0;
    for (int b = 0; b < kUniformBins; ++b) {
      const std::size_t i = seg + static_cast<std::size_t>(b);
      out[static_cast<Eigen::Index>(i)] = static_cast<double>(counts[i]) * scale;
    }
  }
  return out;
}

}  // namespace avf
