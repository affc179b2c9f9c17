#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "avfusion/island_loss.hpp"

namespace avf {

struct SoftmaxProbeConfig {
  IslandLossParams loss;
  int num_classes = 7;
  int hidden_dim = 16;
  int feature_dim = 2;
  int epochs = 400;
  double learning_rate = 0.5;
  std::uint64_t seed = 0;
};

/// A small feature extractor with a linear softmax head:
///   h = tanh(A x + a),  f = B h + b,  logits = W f + w.
/// The island loss supervises f, the layer a CNN would expose as its feature.
struct SoftmaxProbe {
  Eigen::MatrixXd hidden_weights;   // hidden x d
  Eigen::VectorXd hidden_bias;      // hidden
  Eigen::MatrixXd feature_weights;  // feature x hidden
  Eigen::VectorXd feature_bias;     // feature
  Eigen::MatrixXd head_weights;     // classes x feature
  Eigen::VectorXd head_bias;        // classes

  Eigen::MatrixXd features(const Eigen::MatrixXd& X) const;
  Eigen::MatrixXd logits(const Eigen::MatrixXd& X) const;
  /// Argmax of the logits, ties toward the lowest class.
  std::vector<int> predict(const Eigen::MatrixXd& X) const;
};

struct SoftmaxProbeResult {
  SoftmaxProbe probe;
  Centers centers;
  std::vector<double> loss_trace;  // total loss before each epoch's update
};

/// Full-batch gradient descent on summed cross-entropy + lambda * island loss
/// with step learning_rate / n. Centers follow update_centers after every
/// step, with the pairwise weight lambda * lambda1 it carries in the total
/// objective. Deterministic in the seed.
/// Throws kDegenerateInput when n < num_classes, kLengthMismatch, kUnknownLabel.
SoftmaxProbeResult softmax_probe_train(const Eigen::MatrixXd& X, std::span<const int> labels,
                                       const SoftmaxProbeConfig& config);

/// Mean distance of samples to their class mean divided by the mean distance
/// between distinct class means. Smaller is more compact.
double compactness_ratio(const Eigen::MatrixXd& features, std::span<const int> labels);

}  // namespace avf
