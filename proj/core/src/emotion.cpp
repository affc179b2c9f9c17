#include "avfusion/emotion.hpp"

#include <string>

#include "avfusion/error.hpp"

namespace avf {

EmotionLabel::EmotionLabel(int index) : index_(index) {
  if (index < 0 || index >= kNumEmotions) {
    throw Error(ErrorCode::kUnknownLabel, "label index " + std::to_string(index));
  }
}

EmotionLabel EmotionLabel::parse(std::string_view name) {
  for (int i = 0; i < kNumEmotions; ++i) {
    if (kNames[static_cast<std::size_t>(i)] == name) return EmotionLabel(i);
  }
  throw Error(ErrorCode::kUnknownLabel, "'" + std::string(name) + "'");
}

std::string_view channel_name(Channel channel) noexcept {
  switch (channel) {
    case Channel::kAudio: return "audio";
    case Channel::kLbpTop: return "lbptop";
    case Channel::kCnn: return "cnn";
    case Channel::kBlstm: return "blstm";
    case Channel::kJoint: return "joint";
  }
  return "unknown";
}

Channel parse_channel(std::string_view name) {
  for (Channel c : {Channel::kAudio, Channel::kLbpTop, Channel::kCnn, Channel::kBlstm,
                    Channel::kJoint}) {
    if (channel_name(c) == name) return c;
  }
  throw Error(ErrorCode::kUnknownChannel, "'" + std::string(name) + "'");
}

}  // namespace avf
