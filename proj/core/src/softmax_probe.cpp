#include "avfusion/softmax_probe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "avfusion/error.hpp"

namespace avf {
namespace {

Eigen::MatrixXd softmax_rows(const Eigen::MatrixXd& logits) {
  Eigen::MatrixXd p(logits.rows(), logits.cols());
  for (Eigen::Index i = 0; i < logits.rows(); ++i) {
    const double m = logits.row(i).maxCoeff();
    p.row(i) = (logits.row(i).array() - m).exp();
    p.row(i) /= p.row(i).sum();
  }
  return p;
}

double summed_cross_entropy(const Eigen::MatrixXd& logits, std::span<const int> labels) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < logits.rows(); ++i) {
    const double m = logits.row(i).maxCoeff();
    const double lse = m + std::log((logits.row(i).array() - m).exp().sum());
    total += lse - logits(i, labels[static_cast<std::size_t>(i)]);
  }
  return total;
}

}  // namespace

Eigen::MatrixXd SoftmaxProbe::features(const Eigen::MatrixXd& X) const {
  const Eigen::MatrixXd H =
      ((X * hidden_weights.transpose()).rowwise() + hidden_bias.transpose()).array().tanh();
  return (H * feature_weights.transpose()).rowwise() + feature_bias.transpose();
}

Eigen::MatrixXd SoftmaxProbe::logits(const Eigen::MatrixXd& X) const {
  return (features(X) * head_weights.transpose()).rowwise() + head_bias.transpose();
}

std::vector<int> SoftmaxProbe::predict(const Eigen::MatrixXd& X) const {
  const Eigen::MatrixXd s = logits(X);
  std::vector<int> out(static_cast<std::size_t>(s.rows()));
  for (Eigen::Index i = 0; i < s.rows(); ++i) {
    Eigen::Index arg = 0;
    s.row(i).maxCoeff(&arg);  // first maximum
    out[static_cast<std::size_t>(i)] = static_cast<int>(arg);
  }
  return out;
}

SoftmaxProbeResult softmax_probe_train(const Eigen::MatrixXd& X, std::span<const int> labels,
                                       const SoftmaxProbeConfig& config) {
  config.loss.validate();
  const Eigen::Index n = X.rows();
  const Eigen::Index d = X.cols();
  const int classes = config.num_classes;
  if (static_cast<Eigen::Index>(labels.size()) != n) {
    throw Error(ErrorCode::kLengthMismatch, "labels do not match rows");
  }
  if (classes < 2 || n < classes) {
    throw Error(ErrorCode::kDegenerateInput, std::to_string(n) + " samples for " +
                                                 std::to_string(classes) + " classes");
  }
  for (int y : labels) {
    if (y < 0 || y >= classes) throw Error(ErrorCode::kUnknownLabel, std::to_string(y));
  }
  if (config.hidden_dim < 1 || config.feature_dim < 1 || config.epochs < 0 ||
      !(config.learning_rate > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "probe dims, epochs or learning_rate");
  }

  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto randn = [&](Eigen::Index rows, Eigen::Index cols) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(cols));
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = scale * normal(rng);
    return m;
  };

  SoftmaxProbeResult result;
  SoftmaxProbe& p = result.probe;
  p.hidden_weights = randn(config.hidden_dim, d);
  p.hidden_bias = Eigen::VectorXd::Zero(config.hidden_dim);
  p.feature_weights = randn(config.feature_dim, config.hidden_dim);
  p.feature_bias = Eigen::VectorXd::Zero(config.feature_dim);
  p.head_weights = randn(classes, config.feature_dim);
  p.head_bias = Eigen::VectorXd::Zero(classes);

  const double lambda = config.loss.lambda;
  const double lambda1 = config.loss.lambda1;

  // Centers start at the class means of the initial features.
  Eigen::MatrixXd F = p.features(X);
  result.centers = Eigen::MatrixXd::Zero(classes, config.feature_dim);
  {
    Eigen::VectorXd counts = Eigen::VectorXd::Zero(classes);
    for (Eigen::Index i = 0; i < n; ++i) {
      result.centers.row(labels[static_cast<std::size_t>(i)]) += F.row(i);
      counts[labels[static_cast<std::size_t>(i)]] += 1.0;
    }
    for (int j = 0; j < classes; ++j) {
      if (counts[j] > 0.0) result.centers.row(j) /= counts[j];
    }
  }

  // Both loss terms are sums over the batch; the step is scaled per sample.
  const double lr = config.learning_rate / static_cast<double>(n);
  result.loss_trace.reserve(static_cast<std::size_t>(config.epochs));
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    const Eigen::MatrixXd H =
        ((X * p.hidden_weights.transpose()).rowwise() + p.hidden_bias.transpose()).array().tanh();
    F = (H * p.feature_weights.transpose()).rowwise() + p.feature_bias.transpose();
    const Eigen::MatrixXd logits = (F * p.head_weights.transpose()).rowwise() + p.head_bias.transpose();

    double total = summed_cross_entropy(logits, labels);
    if (lambda > 0.0) total += lambda * island_loss(F, labels, result.centers, lambda1);
    result.loss_trace.push_back(total);

    Eigen::MatrixXd dlogits = softmax_rows(logits);
    for (Eigen::Index i = 0; i < n; ++i) dlogits(i, labels[static_cast<std::size_t>(i)]) -= 1.0;

    Eigen::MatrixXd dF = dlogits * p.head_weights;
    if (lambda > 0.0) dF += lambda * island_loss_grad(F, labels, result.centers, lambda1).dX;
    Eigen::MatrixXd dH = dF * p.feature_weights;
    dH.array() *= 1.0 - H.array().square();

    p.head_weights -= lr * dlogits.transpose() * F;
    p.head_bias -= lr * dlogits.colwise().sum().transpose();
    p.feature_weights -= lr * dF.transpose() * H;
    p.feature_bias -= lr * dF.colwise().sum().transpose();
    p.hidden_weights -= lr * dH.transpose() * X;
    p.hidden_bias -= lr * dH.colwise().sum().transpose();

    // The pairwise term enters the total objective as lambda * lambda1; with
    // lambda == 0 the centers only track the class means.
    result.centers = update_centers(result.centers, F, labels, config.loss.alpha, lambda * lambda1);
  }
  return result;
}

double compactness_ratio(const Eigen::MatrixXd& features, std::span<const int> labels) {
  if (static_cast<Eigen::Index>(labels.size()) != features.rows() || labels.empty()) {
    throw Error(ErrorCode::kLengthMismatch, "labels do not match feature rows");
  }
  int classes = 0;
  for (int y : labels) {
    if (y < 0) throw Error(ErrorCode::kUnknownLabel, std::to_string(y));
    classes = std::max(classes, y + 1);
  }
  Eigen::MatrixXd means = Eigen::MatrixXd::Zero(classes, features.cols());
  Eigen::VectorXd counts = Eigen::VectorXd::Zero(classes);
  for (Eigen::Index i = 0; i < features.rows(); ++i) {
    means.row(labels[static_cast<std::size_t>(i)]) += features.row(i);
    counts[labels[static_cast<std::size_t>(i)]] += 1.0;
  }
  std::vector<Eigen::Index> present;
  for (int j = 0; j < classes; ++j) {
    if (counts[j] > 0.0) {
      means.row(j) /= counts[j];
      present.push_back(j);
    }
  }
  if (present.size() < 2) throw Error(ErrorCode::kDegenerateInput, "need >= 2 classes present");

  double intra = 0.0;
  for (Eigen::Index i = 0; i < features.rows(); ++i) {
    intra += (features.row(i) - means.row(labels[static_cast<std::size_t>(i)])).norm();
  }
  intra /= static_cast<double>(features.rows());

  double inter = 0.0;
  std::size_t pairs = 0;
  for (std::size_t a = 0; a < present.size(); ++a) {
    for (std::size_t b = a + 1; b < present.size(); ++b, ++pairs) {
      inter += (means.row(present[a]) - means.row(present[b])).norm();
    }
  }
  inter /= static_cast<double>(pairs);
  return inter > 0.0 ? intra / inter : std::numeric_limits<double>::infinity();
}

}  // namespace avf
