#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "avfusion/types.hpp"

namespace avf {

struct PoolingParams {
  int k = 7;
};

/// Elementwise mean of same-shaped score matrices (ensemble averaging).
/// Throws kEmptyList, kShapeMismatch.
ScoreMatrix average_scores(std::span<const ScoreMatrix> stack);

/// Frame indices that feed the k bins, in order; size is a multiple of k.
/// Clips shorter than k repeat each frame in place (the first k % T frames
/// once more than the rest). Longer clips drop T % k frames, ceil half from
/// the head and floor half from the tail.
std::vector<Eigen::Index> pooling_frame_plan(Eigen::Index frames, int k);

/// k-average temporal pooling: bin means concatenated bin by bin, length 7k.
/// Throws kEmptyScores for T == 0, kInvalidArgument for k < 1.
Eigen::VectorXd k_average_pool(const ScoreMatrix& scores, const PoolingParams& params = {});

}  // namespace avf
