#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "avfusion/emotion.hpp"

namespace avf {

/// Grayscale clip, frame-major then row-major: value(t, y, x) lives at
/// data[(t * height + y) * width + x]. Intensities are in [0, 255].
class VideoVolume {
 public:
  /// Throws Error(kEmptyVolume) for a zero extent, kLengthMismatch when
  /// data.size() != frames*height*width, kNonFinite / kInvalidArgument for
  /// values that are not finite or fall outside [0, 255].
  VideoVolume(std::size_t frames, std::size_t height, std::size_t width,
              std::vector<double> data);

  std::size_t frames() const noexcept { return frames_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t width() const noexcept { return width_; }
  std::span<const double> data() const noexcept { return data_; }

  double at(std::size_t t, std::size_t y, std::size_t x) const noexcept {
    return data_[(t * height_ + y) * width_ + x];
  }

 private:
  std::size_t frames_;
  std::size_t height_;
  std::size_t width_;
  std::vector<double> data_;
};

/// A channel-tagged real vector. Construction rejects NaN/Inf.
class FeatureVector {
 public:
  FeatureVector(Channel channel, Eigen::VectorXd values);

  Channel channel() const noexcept { return channel_; }
  const Eigen::VectorXd& values() const noexcept { return values_; }
  Eigen::Index size() const noexcept { return values_.size(); }

 private:
  Channel channel_;
  Eigen::VectorXd values_;
};

/// Per-frame class scores, one row of kNumEmotions entries per frame.
class ScoreMatrix {
 public:
  /// Throws kShapeMismatch when cols != 7, kNonFinite on NaN/Inf.
  explicit ScoreMatrix(Eigen::MatrixXd rows);

  const Eigen::MatrixXd& rows() const noexcept { return rows_; }
  Eigen::Index frames() const noexcept { return rows_.rows(); }

  /// True when every row is non-negative and sums to 1 within tol.
  bool is_row_stochastic(double tol = 1e-9) const noexcept;

 private:
  Eigen::MatrixXd rows_;
};

/// Throws Error(kNonFinite) naming `what` if any entry is NaN/Inf.
void require_finite(const Eigen::Ref<const Eigen::MatrixXd>& m, const char* what);

}  // namespace avf
