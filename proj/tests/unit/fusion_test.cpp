#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "avfusion/bayes_fusion.hpp"
#include "avfusion/error.hpp"
#include "avfusion/fusion.hpp"
#include "avfusion/normalization.hpp"
#include "avfusion/svm.hpp"
#include "oracles.hpp"

namespace avf {
namespace {

using testing::random_matrix;

template <typename Fn>
ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no avf::Error thrown";
  return ErrorCode::kIo;
}

std::vector<EmotionLabel> labels_of(const std::vector<int>& y) {
  std::vector<EmotionLabel> out;
  for (int v : y) out.emplace_back(v);
  return out;
}

// ---- joint vector ----------------------------------------------------------

TEST(JointVector, ZeroSegments) {
  const auto v = build_joint_vector(Eigen::VectorXd::Zero(20), Eigen::VectorXd::Zero(150),
                                    Eigen::VectorXd::Zero(49), Eigen::VectorXd::Zero(50));
  EXPECT_EQ(v, Eigen::VectorXd::Zero(269));
}

TEST(JointVector, LayoutOrder) {
  const auto v = build_joint_vector(Eigen::VectorXd::Constant(20, 1), Eigen::VectorXd::Constant(150, 2),
                                    Eigen::VectorXd::Constant(49, 3), Eigen::VectorXd::Constant(50, 4));
  ASSERT_EQ(v.size(), 269);
  EXPECT_EQ(v.segment(0, 20), Eigen::VectorXd::Constant(20, 1));
  EXPECT_EQ(v.segment(20, 150), Eigen::VectorXd::Constant(150, 2));
  EXPECT_EQ(v.segment(170, 49), Eigen::VectorXd::Constant(49, 3));
  EXPECT_EQ(v.segment(219, 50), Eigen::VectorXd::Constant(50, 4));
}

TEST(JointVector, WrongSegmentNamesChannel) {
  try {
    build_joint_vector(Eigen::VectorXd::Zero(21), Eigen::VectorXd::Zero(150), Eigen::VectorXd::Zero(49),
                       Eigen::VectorXd::Zero(50));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
    EXPECT_NE(e.detail().find("audio"), std::string::npos);
  }
  try {
    build_joint_matrix(Eigen::MatrixXd::Zero(2, 20), Eigen::MatrixXd::Zero(2, 150), Eigen::MatrixXd::Zero(2, 48),
                       Eigen::MatrixXd::Zero(2, 50));
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(e.detail().find("cnn"), std::string::npos);
  }
}

// ---- feature-level fusion --------------------------------------------------

struct TwoClassData {
  Eigen::MatrixXd X;
  std::vector<EmotionLabel> y;
};

TwoClassData two_classes(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  TwoClassData d{random_matrix(rng, n, 269), {}};
  for (int i = 0; i < n; ++i) {
    const bool pos = i % 2 == 1;
    d.X.block(i, 0, 1, 30).array() += pos ? 3.0 : -3.0;
    d.y.emplace_back(pos ? 4 : 1);
  }
  return d;
}

TEST(FeatureFusion, SeparableHeldOut) {
  const auto train = two_classes(31, 80);
  const auto test = two_classes(32, 40);
  const auto m = feature_fusion_train(train.X, train.y);
  EXPECT_EQ(feature_fusion_predict_rows(m, test.X), test.y);
}

TEST(FeatureFusion, EqualsManualComposition) {
  const auto d = two_classes(33, 60);
  const auto m = feature_fusion_train(d.X, d.y);
  const auto norm = normalize_fit(d.X);
  const auto svm = svm_train(normalize_apply_rows(norm, d.X), d.y, {});
  EXPECT_EQ(m.normalization.per_dim_mean, norm.per_dim_mean);
  EXPECT_EQ(m.normalization.per_dim_std, norm.per_dim_std);
  EXPECT_EQ(m.svm.weights, svm.weights);
  EXPECT_EQ(m.svm.bias, svm.bias);
  const Eigen::VectorXd x = d.X.row(3).transpose();
  EXPECT_EQ(feature_fusion_predict(m, x).scores, svm_predict(svm, normalize_apply(norm, x)).scores);
}

TEST(FeatureFusion, TrainingOrderDoesNotMatter) {
  const auto d = two_classes(34, 60);
  std::vector<int> perm(60);
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(5);
  std::shuffle(perm.begin(), perm.end(), rng);
  Eigen::MatrixXd Xs(60, 269);
  std::vector<EmotionLabel> ys;
  for (int i = 0; i < 60; ++i) {
    Xs.row(i) = d.X.row(perm[static_cast<std::size_t>(i)]);
    ys.push_back(d.y[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])]);
  }
  const auto a = feature_fusion_train(d.X, d.y);
  const auto b = feature_fusion_train(Xs, ys);
  EXPECT_LT((a.svm.weights - b.svm.weights).cwiseAbs().maxCoeff(), 1e-9);
  const auto test = two_classes(35, 40);
  EXPECT_EQ(feature_fusion_predict_rows(a, test.X), feature_fusion_predict_rows(b, test.X));
}

// ---- CPT fitting -----------------------------------------------------------

TEST(MeasurementCpt, PerfectPredictorIsIdentity) {
  std::vector<EmotionLabel> y;
  for (int i = 0; i < 21; ++i) y.emplace_back(i % 7);
  const auto m = fit_measurement_cpt(Channel::kCnn, y, y, 0.0);
  EXPECT_EQ(m.cpt, Cpt::Identity());
}

TEST(MeasurementCpt, ConstantPredictorWithLaplace) {
  std::vector<EmotionLabel> truths;
  for (int e = 0; e < 7; ++e) truths.emplace_back(e);
  const std::vector<EmotionLabel> preds(7, EmotionLabel(0));
  const auto m = fit_measurement_cpt(Channel::kAudio, preds, truths, 1.0);
  for (int e = 0; e < 7; ++e) {
    EXPECT_DOUBLE_EQ(m.cpt(e, 0), 2.0 / 8.0);
    for (int k = 1; k < 7; ++k) EXPECT_DOUBLE_EQ(m.cpt(e, k), 1.0 / 8.0);
  }
}

TEST(MeasurementCpt, RowsSumToOne) {
  std::mt19937_64 rng(36);
  std::uniform_int_distribution<int> pick(0, 6);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<EmotionLabel> p, t;
    for (int i = 0; i < 30; ++i) {
      p.emplace_back(pick(rng));
      t.emplace_back(pick(rng));
    }
    const auto m = fit_measurement_cpt(Channel::kBlstm, p, t, 0.5);
    for (int e = 0; e < 7; ++e) EXPECT_NEAR(m.cpt.row(e).sum(), 1.0, 1e-12);
  }
}

TEST(MeasurementCpt, AccuracyMode) {
  const auto m = measurement_from_accuracy(Channel::kAudio, 0.4);
  EXPECT_DOUBLE_EQ(m.cpt(2, 2), 0.4);
  EXPECT_DOUBLE_EQ(m.cpt(2, 3), 0.1);
}

TEST(MeasurementCpt, Errors) {
  const auto one = labels_of({0, 1});
  EXPECT_EQ(code_of([&] { fit_measurement_cpt(Channel::kAudio, one, one, 0.0); }), ErrorCode::kEmptyClassRow);
  EXPECT_EQ(code_of([&] { fit_measurement_cpt(Channel::kAudio, one, labels_of({0}), 1.0); }),
            ErrorCode::kLengthMismatch);
  EXPECT_EQ(code_of([&] { fit_measurement_cpt(Channel::kAudio, {}, {}, 1.0); }), ErrorCode::kEmpty);
}

// ---- BN inference ----------------------------------------------------------

BnFusionModel model_with(const std::array<testing::Cpt7, 4>& cpts) {
  BnFusionModel m;
  for (std::size_t c = 0; c < 4; ++c) m.measurements.push_back({kMeasurementChannels[c], cpts[c]});
  return m;
}

TEST(BnInfer, PerfectChannelsAgree) {
  const auto m = model_with({Cpt::Identity(), Cpt::Identity(), Cpt::Identity(), Cpt::Identity()});
  std::vector<ChannelObservation> obs;
  for (auto c : kMeasurementChannels) obs.push_back({c, EmotionLabel(3)});
  const auto post = bn_infer(m, obs);
  EXPECT_EQ(post.label.name(), "Happy");
  EXPECT_EQ(post.posterior, EmotionVector::Unit(3));
}

TEST(BnInfer, UninformativeChannel) {
  BnFusionModel m;
  m.measurements.push_back({Channel::kAudio, Cpt::Constant(1.0 / 7.0)});
  const std::vector<ChannelObservation> obs = {{Channel::kAudio, EmotionLabel(5)}};
  const auto post = bn_infer(m, obs);
  EXPECT_EQ(post.label.index(), 0);
  EXPECT_LT((post.posterior - EmotionVector::Constant(1.0 / 7.0)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(BnInfer, MatchesJointTableOnSampledTuples) {
  std::mt19937_64 rng(37);
  std::array<testing::Cpt7, 4> cpts;
  for (auto& c : cpts) c = testing::random_cpt(rng);
  auto m = model_with(cpts);
  m.prior = testing::random_stochastic(rng, 1, 7).transpose();
  const auto table = testing::bn_joint_table(m.prior, cpts);
  std::uniform_int_distribution<int> pick(-1, 6);
  for (int rep = 0; rep < 200; ++rep) {
    std::array<std::optional<int>, 4> obs;
    std::vector<ChannelObservation> list;
    for (std::size_t c = 0; c < 4; ++c) {
      const int v = pick(rng);
      if (v < 0) continue;
      obs[c] = v;
      list.push_back({kMeasurementChannels[c], EmotionLabel(v)});
    }
    if (list.empty()) continue;
    const auto expected = testing::bn_posterior_from_table(table, obs);
    const auto post = bn_infer(m, list);
    EXPECT_LT((post.posterior - expected).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(post.posterior.sum(), 1.0, 1e-12);
    EXPECT_GE(post.posterior.minCoeff(), 0.0);
    std::reverse(list.begin(), list.end());
    EXPECT_EQ(bn_infer(m, list).posterior, post.posterior);
  }
}

TEST(BnInfer, IdentityChannelReturnsObservation) {
  BnFusionModel m;
  m.measurements.push_back({Channel::kLbpTop, Cpt::Identity()});
  for (int e = 0; e < 7; ++e) {
    const std::vector<ChannelObservation> obs = {{Channel::kLbpTop, EmotionLabel(e)}};
    EXPECT_EQ(bn_infer(m, obs).label.index(), e);
  }
}

TEST(BnFusionPredict, ThreeAgreeingChannelsOutvoteUniformFourth) {
  std::array<testing::Cpt7, 4> cpts;
  for (int c = 0; c < 3; ++c) cpts[static_cast<std::size_t>(c)] = measurement_from_accuracy(Channel::kAudio, 0.5).cpt;
  cpts[3] = Cpt::Constant(1.0 / 7.0);
  const auto m = model_with(cpts);
  const auto table = testing::bn_joint_table(m.prior, cpts);
  for (int fourth = 0; fourth < 7; ++fourth) {
    const ClipDecisions d = {EmotionLabel(2), EmotionLabel(2), EmotionLabel(2), EmotionLabel(fourth)};
    EXPECT_EQ(bn_fusion_predict(m, d).index(), 2);
    const auto expected = testing::bn_posterior_from_table(table, {2, 2, 2, fourth});
    Eigen::Index arg = 0;
    expected.maxCoeff(&arg);
    EXPECT_EQ(arg, 2);
  }
}

TEST(BnFusionPredict, SingleChannelIsMapCorrection) {
  Cpt cpt = Cpt::Constant(0.05);
  cpt.diagonal().setConstant(0.7);
  // Class 1 is usually reported as class 4 by this channel.
  cpt.row(1).setConstant(0.05);
  cpt(1, 4) = 0.7;
  cpt.row(4).setConstant(0.05);
  cpt(4, 4) = 0.3;
  cpt(4, 1) = 0.45;
  BnFusionModel m;
  m.measurements.push_back({Channel::kCnn, cpt});
  const ClipDecisions d = {std::nullopt, std::nullopt, EmotionLabel(4), std::nullopt};
  EXPECT_EQ(bn_fusion_predict(m, d).index(), 1);
}

TEST(BnInfer, Errors) {
  BnFusionModel m;
  m.measurements.push_back({Channel::kAudio, Cpt::Identity()});
  EXPECT_EQ(code_of([&] { bn_infer(m, {}); }), ErrorCode::kNoObservations);
  EXPECT_EQ(code_of([&] { bn_fusion_predict(m, ClipDecisions{}); }), ErrorCode::kNoObservations);
  const std::vector<ChannelObservation> cnn = {{Channel::kCnn, EmotionLabel(0)}};
  EXPECT_EQ(code_of([&] { bn_infer(m, cnn); }), ErrorCode::kUnknownChannel);
  m.measurements.push_back({Channel::kBlstm, Cpt::Identity()});
  const std::vector<ChannelObservation> clash = {{Channel::kAudio, EmotionLabel(0)},
                                                 {Channel::kBlstm, EmotionLabel(1)}};
  EXPECT_EQ(code_of([&] { bn_infer(m, clash); }), ErrorCode::kAllZeroPosterior);
  const std::vector<ChannelObservation> twice = {{Channel::kAudio, EmotionLabel(0)},
                                                 {Channel::kAudio, EmotionLabel(0)}};
  EXPECT_EQ(code_of([&] { bn_infer(m, twice); }), ErrorCode::kInvalidArgument);
}

TEST(FitBnModel, FitsChannelsWithCompleteDecisions) {
  std::vector<ClipDecisions> decisions;
  std::vector<EmotionLabel> truths;
  for (int i = 0; i < 14; ++i) {
    truths.emplace_back(i % 7);
    decisions.push_back({EmotionLabel(i % 7), std::nullopt, EmotionLabel(0), EmotionLabel((i + 1) % 7)});
  }
  const auto m = fit_bn_model(decisions, truths);
  ASSERT_EQ(m.measurements.size(), 3u);
  EXPECT_EQ(m.find(Channel::kLbpTop), nullptr);
  EXPECT_EQ(m.prior, EmotionVector::Constant(1.0 / 7.0));
  EXPECT_DOUBLE_EQ(m.find(Channel::kAudio)->cpt(3, 3), 3.0 / 9.0);

  truths[0] = EmotionLabel(6);
  BnFitOptions opt;
  opt.prior = PriorMode::kEmpirical;
  opt.mode = CptMode::kAccuracy;
  const auto e = fit_bn_model(decisions, truths, opt);
  EXPECT_DOUBLE_EQ(e.prior[0], 1.0 / 14.0);
  EXPECT_DOUBLE_EQ(e.prior[6], 3.0 / 14.0);
  EXPECT_EQ(e.mode, CptMode::kAccuracy);
}

}  // namespace
}  // namespace avf
