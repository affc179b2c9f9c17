#include <cstring>
#include <fstream>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "avfusion/emotion.hpp"
#include "avfusion/error.hpp"
#include "avfusion/manifest.hpp"
#include "avfusion/tensor_io.hpp"
#include "avfusion/types.hpp"
#include "scratch_dir.hpp"

namespace avf {
namespace {

using testing::scratch_dir;

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

void write_bytes(const std::filesystem::path& p, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(p, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

TEST(EmotionLabel, CanonicalOrder) {
  EXPECT_EQ(EmotionLabel::parse("Angry").index(), 0);
  EXPECT_EQ(EmotionLabel::parse("Disgust").index(), 1);
  EXPECT_EQ(EmotionLabel::parse("Fear").index(), 2);
  EXPECT_EQ(EmotionLabel::parse("Happy").index(), 3);
  EXPECT_EQ(EmotionLabel::parse("Neutral").index(), 4);
  EXPECT_EQ(EmotionLabel::parse("Sad").index(), 5);
  EXPECT_EQ(EmotionLabel::parse("Surprise").index(), 6);
}

TEST(EmotionLabel, NameIndexBijection) {
  for (int i = 0; i < kNumEmotions; ++i) {
    const EmotionLabel l(i);
    EXPECT_EQ(EmotionLabel::parse(l.name()), l);
  }
  EXPECT_EQ(code_of([] { EmotionLabel::parse("Joy"); }), ErrorCode::kUnknownLabel);
  EXPECT_EQ(code_of([] { EmotionLabel::parse("happy"); }), ErrorCode::kUnknownLabel);
  EXPECT_EQ(code_of([] { EmotionLabel(7); }), ErrorCode::kUnknownLabel);
  EXPECT_EQ(code_of([] { EmotionLabel(-1); }), ErrorCode::kUnknownLabel);
}

TEST(Channel, NamesRoundTrip) {
  for (auto c : {Channel::kAudio, Channel::kLbpTop, Channel::kCnn, Channel::kBlstm, Channel::kJoint}) {
    EXPECT_EQ(parse_channel(channel_name(c)), c);
  }
  EXPECT_EQ(code_of([] { parse_channel("video"); }), ErrorCode::kUnknownChannel);
}

TEST(ErrorType, WhatCarriesCodeName) {
  const Error e(ErrorCode::kBadMagic, "XXXX");
  EXPECT_STREQ(e.what(), "BadMagic: XXXX");
  EXPECT_EQ(e.detail(), "XXXX");
}

TEST(VideoVolume, Validation) {
  EXPECT_EQ(code_of([] { VideoVolume(0, 2, 2, {}); }), ErrorCode::kEmptyVolume);
  EXPECT_EQ(code_of([] { VideoVolume(1, 2, 2, {1, 2, 3}); }), ErrorCode::kLengthMismatch);
  EXPECT_EQ(code_of([] { VideoVolume(1, 1, 1, {256}); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { VideoVolume(1, 1, 1, {std::numeric_limits<double>::quiet_NaN()}); }),
            ErrorCode::kNonFinite);
  const VideoVolume v(2, 2, 3, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11});
  EXPECT_EQ(v.at(1, 0, 2), 8.0);
  EXPECT_EQ(v.at(0, 1, 0), 3.0);
}

TEST(FeatureVector, RejectsNonFinite) {
  Eigen::VectorXd v(2);
  v << 1.0, std::numeric_limits<double>::infinity();
  EXPECT_EQ(code_of([&] { FeatureVector(Channel::kAudio, v); }), ErrorCode::kNonFinite);
}

TEST(ScoreMatrix, ShapeAndStochasticFlag) {
  EXPECT_EQ(code_of([] { ScoreMatrix(Eigen::MatrixXd::Zero(2, 6)); }), ErrorCode::kShapeMismatch);
  Eigen::MatrixXd m = Eigen::MatrixXd::Constant(3, 7, 1.0 / 7.0);
  EXPECT_TRUE(ScoreMatrix(m).is_row_stochastic());
  m(0, 0) += 0.5;
  EXPECT_FALSE(ScoreMatrix(m).is_row_stochastic());
}

TEST(TensorIo, TwoByTwoLayout) {
  const std::vector<std::uint32_t> dims = {2, 2};
  const std::vector<double> values = {1, 2, 3, 4};
  const auto bytes = encode_tensor(dims, values);
  ASSERT_EQ(bytes.size(), 4u + 4u + 8u + 16u);
  EXPECT_EQ(std::memcmp(bytes.data(), "FVT1", 4), 0);
  const std::uint8_t rank_le[4] = {2, 0, 0, 0};
  EXPECT_EQ(std::memcmp(bytes.data() + 4, rank_le, 4), 0);
  // 1.0f little-endian is 00 00 80 3f.
  const std::uint8_t one_le[4] = {0x00, 0x00, 0x80, 0x3f};
  EXPECT_EQ(std::memcmp(bytes.data() + 16, one_le, 4), 0);

  const auto dir = scratch_dir("tensor_layout");
  write_tensor(dir / "t.fvt", dims, values);
  const Tensor t = read_tensor(dir / "t.fvt");
  EXPECT_EQ(t.dims, dims);
  EXPECT_EQ(t.values, values);
}

TEST(TensorIo, OneHotAndEmpty) {
  const auto dir = scratch_dir("tensor_small");
  const std::vector<std::uint32_t> d7 = {7};
  const std::vector<double> onehot = {0, 0, 0, 0, 0, 0, 1};
  write_tensor(dir / "a.fvt", d7, onehot);
  EXPECT_EQ(read_tensor(dir / "a.fvt").values, onehot);

  const std::vector<std::uint32_t> d30 = {3, 0};
  write_tensor(dir / "b.fvt", d30, std::vector<double>{});
  const Tensor e = read_tensor(dir / "b.fvt");
  EXPECT_EQ(e.dims, d30);
  EXPECT_TRUE(e.values.empty());
}

TEST(TensorIo, Errors) {
  const auto dir = scratch_dir("tensor_errors");
  const std::vector<std::uint32_t> dims = {2, 3};
  const std::vector<double> values = {1, 2, 3, 4, 5, 6};
  auto bytes = encode_tensor(dims, values);

  auto bad = bytes;
  std::memcpy(bad.data(), "XXXX", 4);
  write_bytes(dir / "magic.fvt", bad);
  EXPECT_EQ(code_of([&] { read_tensor(dir / "magic.fvt"); }), ErrorCode::kBadMagic);

  auto cut = bytes;
  cut.resize(cut.size() - 6);
  write_bytes(dir / "cut.fvt", cut);
  EXPECT_EQ(code_of([&] { read_tensor(dir / "cut.fvt"); }), ErrorCode::kTruncated);

  auto header_only = bytes;
  header_only.resize(10);
  EXPECT_EQ(code_of([&] { decode_tensor(header_only); }), ErrorCode::kTruncated);

  auto longer = bytes;
  longer.push_back(0);
  EXPECT_EQ(code_of([&] { decode_tensor(longer); }), ErrorCode::kMalformed);

  EXPECT_EQ(code_of([&] { write_tensor(dir / "x.fvt", dims, std::vector<double>{1, 2}); }),
            ErrorCode::kLengthMismatch);
  EXPECT_EQ(code_of([&] {
              write_tensor(dir / "x.fvt", std::vector<std::uint32_t>{1},
                           std::vector<double>{std::numeric_limits<double>::quiet_NaN()});
            }),
            ErrorCode::kNonFinite);
  EXPECT_EQ(code_of([&] {
              write_tensor(dir / "x.fvt", std::vector<std::uint32_t>{1}, std::vector<double>{1e300});
            }),
            ErrorCode::kNonFinite);
  EXPECT_EQ(code_of([&] { read_tensor(dir / "absent.fvt"); }), ErrorCode::kIo);
}

TEST(TensorIo, MatrixHelpersAreRowMajor) {
  const auto dir = scratch_dir("tensor_matrix");
  Eigen::MatrixXd m(2, 3);
  m << 1, 2, 3, 4, 5, 6;
  write_matrix(dir / "m.fvt", m);
  const Tensor t = read_tensor(dir / "m.fvt");
  EXPECT_EQ(t.dims, (std::vector<std::uint32_t>{2, 3}));
  EXPECT_EQ(t.values, (std::vector<double>{1, 2, 3, 4, 5, 6}));
  EXPECT_EQ(tensor_to_matrix(t), m);
  EXPECT_EQ(code_of([&] { tensor_to_vector(t); }), ErrorCode::kShapeMismatch);
}

class ManifestTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = scratch_dir("manifest");
    const std::vector<std::uint32_t> dims = {2};
    const std::vector<double> values = {1, 2};
    write_tensor(dir_ / "a.fvt", dims, values);
    write_tensor(dir_ / "b.fvt", dims, values);
  }
  std::filesystem::path write(const std::string& body) {
    const auto p = dir_ / "m.csv";
    std::ofstream(p) << kManifestHeader << "\n" << body;
    return p;
  }
  std::filesystem::path dir_;
};

TEST_F(ManifestTest, LabelsFollowCanonicalOrder) {
  const auto m = load_manifest(write("c1,Happy,a.fvt,,,\nc2,Fear,b.fvt,,,b.fvt\n"));
  ASSERT_EQ(m.entries.size(), 2u);
  EXPECT_EQ(m.entries[0].label->index(), 3);
  EXPECT_EQ(m.entries[1].label->index(), 2);
  EXPECT_EQ(m.entries[0].path(Channel::kAudio), dir_ / "a.fvt");
  EXPECT_TRUE(m.entries[0].path(Channel::kBlstm).empty());
  EXPECT_EQ(m.entries[1].path(Channel::kBlstm), dir_ / "b.fvt");
}

TEST_F(ManifestTest, MissingLabelAllowed) {
  const auto m = load_manifest(write("c1,,a.fvt,,,\n"));
  EXPECT_FALSE(m.entries[0].label.has_value());
}

TEST_F(ManifestTest, Errors) {
  EXPECT_EQ(code_of([&] { load_manifest(write("c1,Happy,a.fvt,,,\nc1,Sad,b.fvt,,,\n")); }),
            ErrorCode::kDuplicateClipId);
  EXPECT_EQ(code_of([&] { load_manifest(write("c1,Joy,a.fvt,,,\n")); }), ErrorCode::kUnknownLabel);
  EXPECT_EQ(code_of([&] { load_manifest(write("c1,Happy,a.fvt\n")); }), ErrorCode::kMalformedRow);
  EXPECT_EQ(code_of([&] { load_manifest(write("c1,Happy,zzz.fvt,,,\n")); }), ErrorCode::kMissingFile);
  const auto p = dir_ / "bad_header.csv";
  std::ofstream(p) << "id,label\n";
  EXPECT_EQ(code_of([&] { load_manifest(p); }), ErrorCode::kMalformedRow);
}

TEST_F(ManifestTest, WriteThenLoad) {
  DatasetManifest m;
  ManifestEntry e;
  e.clip_id = "c9";
  e.label = EmotionLabel(6);
  e.paths[1] = dir_ / "a.fvt";
  m.entries.push_back(e);
  write_manifest(dir_ / "out.csv", m);
  std::ifstream in(dir_ / "out.csv");
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_EQ(header, kManifestHeader);
  EXPECT_EQ(row, "c9,Surprise,,a.fvt,,");
  const auto back = load_manifest(dir_ / "out.csv");
  EXPECT_EQ(back.entries[0].path(Channel::kLbpTop), dir_ / "a.fvt");
}

}  // namespace
}  // namespace avf
