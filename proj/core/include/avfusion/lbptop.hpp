#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "avfusion/types.hpp"

namespace avf {

inline constexpr int kUniformBins = 59;
inline constexpr int kLbpPlanes = 3;

enum class LbpPlane { kXY = 0, kXT = 1, kYT = 2 };

struct LbpTopParams {
  int neighbors = 8;  // the 59-bin mapping only exists for 8 neighbors
  int radius_x = 1;
  int radius_y = 1;
  int radius_t = 1;
  int grid_rows = 4;
  int grid_cols = 4;
  bool normalize_histograms = true;

  /// Throws kInvalidArgument when neighbors != 8, a radius < 1 or a grid dim < 1.
  void validate() const;
  std::size_t descriptor_length() const noexcept {
    return static_cast<std::size_t>(grid_rows * grid_cols * kLbpPlanes * kUniformBins);
  }
};

/// Maps an 8-bit code to its histogram bin: the 58 uniform codes take bins
/// 0..57 in ascending code order, everything else shares bin 58.
using UniformMapping = std::array<std::uint8_t, 256>;

UniformMapping build_uniform_mapping();
/// Number of 0<->1 changes walking the 8 bits circularly.
int circular_transitions(std::uint8_t code) noexcept;

/// Splits [0, extent) into `parts` contiguous ranges; the first
/// extent % parts ranges get one extra element.
std::vector<std::pair<std::size_t, std::size_t>> partition_extent(std::size_t extent,
                                                                  std::size_t parts);

/// Raw per-(block, plane) bin counts in descriptor layout: blocks row-major,
/// then planes XY, XT, YT, then bins 0..58.
///
/// Sampling: neighbor k sits at angle 2*pi*k/8 on the plane's ellipse,
/// offset (r_u cos, -r_v sin) along the plane's (u, v) axes, where XY is
/// (x, y), XT is (x, t) and YT is (y, t). Offsets within 1e-6 of an integer
/// are snapped. Off-lattice samples are bilinear in the differences to the
/// center; bit k is set when the interpolated difference is >= 0. A center is
/// counted for a plane only when its whole circle lies inside the volume.
std::vector<std::uint64_t> lbp_top_histograms(const VideoVolume& volume,
                                              const LbpTopParams& params = {});

/// The LBP-TOP descriptor (length grid_rows*grid_cols*3*59). With
/// normalization each 59-bin segment sums to 1, or stays all-zero when the
/// (block, plane) had no valid center.
/// Throws kGridLargerThanFrame when the grid exceeds the frame size.
Eigen::VectorXd lbp_top_descriptor(const VideoVolume& volume, const LbpTopParams& params = {});

}  // namespace avf
