#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <string_view>

namespace avf {

inline constexpr int kNumEmotions = 7;

/// One of the seven emotion classes. Index order is fixed (alphabetical over
/// the AFEW folder names) and used for every CPT and confusion matrix.
class EmotionLabel {
 public:
  static constexpr std::array<std::string_view, kNumEmotions> kNames = {
      "Angry", "Disgust", "Fear", "Happy", "Neutral", "Sad", "Surprise"};

  constexpr EmotionLabel() = default;
  /// Throws Error(kUnknownLabel) when index is outside 0..6.
  explicit EmotionLabel(int index);

  /// Case-sensitive match against kNames; throws Error(kUnknownLabel).
  static EmotionLabel parse(std::string_view name);

  constexpr int index() const noexcept { return index_; }
  std::string_view name() const noexcept { return kNames[static_cast<std::size_t>(index_)]; }

  friend constexpr auto operator<=>(EmotionLabel, EmotionLabel) = default;

 private:
  int index_ = 0;
};

enum class Channel { kAudio = 0, kLbpTop = 1, kCnn = 2, kBlstm = 3, kJoint = 4 };

inline constexpr std::array<Channel, 4> kMeasurementChannels = {
    Channel::kAudio, Channel::kLbpTop, Channel::kCnn, Channel::kBlstm};

/// "audio", "lbptop", "cnn", "blstm", "joint".
std::string_view channel_name(Channel channel) noexcept;
/// Throws Error(kUnknownChannel).
Channel parse_channel(std::string_view name);

}  // namespace avf
