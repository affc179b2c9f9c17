// Randomized invariants. Every generator is seeded so failures reproduce.
#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "avfusion/bayes_fusion.hpp"
#include "avfusion/fusion.hpp"
#include "avfusion/island_loss.hpp"
#include "avfusion/pca.hpp"
#include "avfusion/pooling.hpp"
#include "avfusion/tensor_io.hpp"
#include "oracles.hpp"

namespace avf {
namespace {

constexpr int kTrials = 50;

TEST(Property, TensorRoundTripOfF32Values) {
  std::mt19937_64 rng(100);
  std::uniform_int_distribution<int> rank_pick(0, 4), dim_pick(0, 6);
  std::normal_distribution<float> value(0.0f, 1e3f);
  for (int trial = 0; trial < kTrials; ++trial) {
    std::vector<std::uint32_t> dims(static_cast<std::size_t>(rank_pick(rng)));
    std::size_t count = 1;
    for (auto& d : dims) {
      d = static_cast<std::uint32_t>(dim_pick(rng));
      count *= d;
    }
    std::vector<double> values(count);
    for (auto& v : values) v = value(rng);
    const auto decoded = decode_tensor(encode_tensor(dims, values));
    EXPECT_EQ(decoded.dims, dims);
    EXPECT_EQ(decoded.values, values);
  }
}

TEST(Property, IslandLossNonNegativeAndRotationInvariant) {
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<int> d_pick(2, 8), k_pick(2, 7), m_pick(1, 30);
  for (int trial = 0; trial < kTrials; ++trial) {
    const int d = d_pick(rng), k = k_pick(rng), m = m_pick(rng);
    const Eigen::MatrixXd X = testing::random_matrix(rng, m, d, 2.0);
    const Eigen::MatrixXd C = testing::random_matrix(rng, k, d, 2.0);
    std::vector<int> y(static_cast<std::size_t>(m));
    std::uniform_int_distribution<int> label(0, k - 1);
    for (auto& v : y) v = label(rng);
    const double lambda1 = (trial % 3) * 5.0;
    const double base = island_loss(X, y, C, lambda1);
    EXPECT_GE(base, 0.0);
    const Eigen::MatrixXd R = testing::random_orthogonal(rng, d);
    const double rotated = island_loss(X * R, y, C * R, lambda1);
    EXPECT_NEAR(rotated, base, 1e-9 * std::max(1.0, base));
  }
}

TEST(Property, PoolingLengthAndConstantInput) {
  std::mt19937_64 rng(102);
  std::uniform_int_distribution<int> t_pick(1, 60), k_pick(1, 9);
  for (int trial = 0; trial < kTrials; ++trial) {
    const int T = t_pick(rng), k = k_pick(rng);
    const auto pooled = k_average_pool(ScoreMatrix(testing::random_stochastic(rng, T, 7)), {k});
    EXPECT_EQ(pooled.size(), 7 * k);

    Eigen::MatrixXd same(T, 7);
    same.rowwise() = testing::random_stochastic(rng, 1, 7).row(0);
    const auto flat = k_average_pool(ScoreMatrix(same), {k});
    for (int s = 0; s < k; ++s) {
      EXPECT_LT((flat.segment(7 * s, 7) - same.row(0).transpose()).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(Property, AverageScoresIgnoresStackOrder) {
  std::mt19937_64 rng(103);
  for (int trial = 0; trial < kTrials; ++trial) {
    std::vector<ScoreMatrix> stack;
    const int T = 3 + trial % 5;
    for (int i = 0; i < 2 + trial % 4; ++i) stack.emplace_back(testing::random_stochastic(rng, T, 7));
    const auto a = average_scores(stack);
    std::shuffle(stack.begin(), stack.end(), rng);
    const auto b = average_scores(stack);
    EXPECT_LT((a.rows() - b.rows()).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(Property, FullPcaPreservesCenteredInnerProducts) {
  std::mt19937_64 rng(104);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 2 + trial % 6;
    const Eigen::MatrixXd X = testing::random_matrix(rng, 30, d, 1.5);
    const auto model = pca_fit(X, d);
    const Eigen::VectorXd a = X.row(0).transpose(), b = X.row(1).transpose();
    const double expected = (a - model.mean).dot(b - model.mean);
    EXPECT_NEAR(pca_transform(model, a).dot(pca_transform(model, b)), expected, 1e-9);
  }
}

TEST(Property, BnPosteriorIsADistribution) {
  std::mt19937_64 rng(105);
  std::uniform_int_distribution<int> label(0, 6), coin(0, 1);
  for (int trial = 0; trial < kTrials; ++trial) {
    BnFusionModel m;
    m.prior = testing::random_stochastic(rng, 1, 7).row(0).transpose();
    for (auto c : kMeasurementChannels) m.measurements.push_back({c, testing::random_cpt(rng)});
    std::vector<ChannelObservation> obs;
    for (auto c : kMeasurementChannels) {
      if (coin(rng)) obs.push_back({c, EmotionLabel(label(rng))});
    }
    if (obs.empty()) obs.push_back({Channel::kCnn, EmotionLabel(label(rng))});
    const auto post = bn_infer(m, obs);
    EXPECT_NEAR(post.posterior.sum(), 1.0, 1e-12);
    EXPECT_GE(post.posterior.minCoeff(), 0.0);
    EXPECT_EQ(post.posterior[post.label.index()], post.posterior.maxCoeff());
  }
}

TEST(Property, FeatureFusionIgnoresPerColumnAffineMaps) {
  std::mt19937_64 rng(106);
  std::uniform_real_distribution<double> scale(0.5, 4.0), shift(-10.0, 10.0);
  const int n = 42;
  Eigen::MatrixXd J = testing::random_matrix(rng, n, JointVectorLayout::kTotal, 1.0);
  std::vector<EmotionLabel> y;
  for (int i = 0; i < n; ++i) {
    y.emplace_back(i % 7);
    J(i, i % 7) += 3.0;
  }
  Eigen::MatrixXd K = J;
  for (Eigen::Index c = 0; c < K.cols(); ++c) K.col(c) = K.col(c).array() * scale(rng) + shift(rng);
  SvmParams p;
  p.epochs = 60;
  const auto a = feature_fusion_train(J, y, p);
  const auto b = feature_fusion_train(K, y, p);
  for (int i = 0; i < n; ++i) {
    const auto pa = feature_fusion_predict(a, J.row(i).transpose());
    const auto pb = feature_fusion_predict(b, K.row(i).transpose());
    EXPECT_LT((pa.scores - pb.scores).cwiseAbs().maxCoeff(), 1e-8);
  }
}

}  // namespace
}  // namespace avf
