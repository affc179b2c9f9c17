#include "avfusion/pooling.hpp"

#include <string>

#include "avfusion/error.hpp"

namespace avf {

ScoreMatrix average_scores(std::span<const ScoreMatrix> stack) {
  if (stack.empty()) throw Error(ErrorCode::kEmptyList, "no score matrices to average");
  const Eigen::Index frames = stack.front().frames();
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(frames, kNumEmotions);
  for (const auto& m : stack) {
    if (m.frames() != frames) {
      throw Error(ErrorCode::kShapeMismatch, "score matrices have " + std::to_string(frames) +
                                                 " and " + std::to_string(m.frames()) + " frames");
    }
    sum += m.rows();
  }
  return ScoreMatrix(sum / static_cast<double>(stack.size()));
}

std::vector<Eigen::Index> pooling_frame_plan(Eigen::Index frames, int k) {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "pooling k must be >= 1");
  if (frames < 1) throw Error(ErrorCode::kEmptyScores, "score matrix has no frames");
  std::vector<Eigen::Index> plan;
  const Eigen::Index bins = k;
  if (frames < bins) {
    const Eigen::Index base = bins / frames;
    const Eigen::Index extra = bins % frames;
    for (Eigen::Index f = 0; f < frames; ++f) {
      const Eigen::Index copies = base + (f < extra ? 1 : 0);
      plan.insert(plan.end(), static_cast<std::size_t>(copies), f);
    }
    return plan;
  }
  const Eigen::Index dropped = frames % bins;
  const Eigen::Index head = (dropped + 1) / 2;
  const Eigen::Index tail = dropped / 2;
  for (Eigen::Index f = head; f < frames - tail; ++f) plan.push_back(f);
  return plan;
}

Eigen::VectorXd k_average_pool(const ScoreMatrix& scores, const PoolingParams& params) {
  const auto plan = pooling_frame_plan(scores.frames(), params.k);
  const auto per_bin = static_cast<Eigen::Index>(plan.size()) / params.k;
  Eigen::VectorXd out(static_cast<Eigen::Index>(params.k) * kNumEmotions);
  for (Eigen::Index b = 0; b < params.k; ++b) {
    Eigen::RowVectorXd acc = Eigen::RowVectorXd::Zero(kNumEmotions);
    for (Eigen::Index i = 0; i < per_bin; ++i) {
      acc += scores.rows().row(plan[static_cast<std::size_t>(b * per_bin + i)]);
    }
    out.segment(b * kNumEmotions, kNumEmotions) = (acc / static_cast<double>(per_bin)).transpose();
  }
  return out;
}

}  // namespace avf
