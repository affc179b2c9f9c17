#include "avfusion/types.hpp"

#include <cmath>
#include <string>

#include "avfusion/error.hpp"

namespace avf {

VideoVolume::VideoVolume(std::size_t frames, std::size_t height, std::size_t width,
                         std::vector<double> data)
    : frames_(frames), height_(height), width_(width), data_(std::move(data)) {
  if (frames == 0 || height == 0 || width == 0) {
    throw Error(ErrorCode::kEmptyVolume, "volume " + std::to_string(frames) + "x" +
                                             std::to_string(height) + "x" +
                                             std::to_string(width));
  }
  if (data_.size() != frames * height * width) {
    throw Error(ErrorCode::kLengthMismatch,
                "volume expects " + std::to_string(frames * height * width) +
                    " values, got " + std::to_string(data_.size()));
  }
  for (double v : data_) {
    if (!std::isfinite(v)) throw Error(ErrorCode::kNonFinite, "video volume");
    if (v < 0.0 || v > 255.0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "intensity " + std::to_string(v) + " outside [0,255]");
    }
  }
}

FeatureVector::FeatureVector(Channel channel, Eigen::VectorXd values)
    : channel_(channel), values_(std::move(values)) {
  require_finite(values_, "feature vector");
}

ScoreMatrix::ScoreMatrix(Eigen::MatrixXd rows) : rows_(std::move(rows)) {
  if (rows_.cols() != kNumEmotions) {
    throw Error(ErrorCode::kShapeMismatch,
                "score matrix needs 7 columns, got " + std::to_string(rows_.cols()));
  }
  require_finite(rows_, "score matrix");
}

bool ScoreMatrix::is_row_stochastic(double tol) const noexcept {
  for (Eigen::Index r = 0; r < rows_.rows(); ++r) {
    if ((rows_.row(r).array() < 0.0).any()) return false;
    if (std::abs(rows_.row(r).sum() - 1.0) > tol) return false;
  }
  return true;
}

void require_finite(const Eigen::Ref<const Eigen::MatrixXd>& m, const char* what) {
  if (!m.allFinite()) throw Error(ErrorCode::kNonFinite, what);
}

}  // namespace avf
