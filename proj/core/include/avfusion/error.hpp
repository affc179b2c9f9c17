#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace avf {

enum class ErrorCode {
  kIo,
  kBadMagic,
  kTruncated,
  kMalformed,
  kNonFinite,
  kInvalidArgument,
  kDimensionMismatch,
  kShapeMismatch,
  kLengthMismatch,
  kDuplicateClipId,
  kUnknownLabel,
  kMalformedRow,
  kMissingFile,
  kEmptyVolume,
  kGridLargerThanFrame,
  kTooFewSamples,
  kEmptyList,
  kEmptyScores,
  kEmpty,
  kZeroNormCenter,
  kDegenerateInput,
  kSingleClass,
  kEmptyClassRow,
  kAllZeroPosterior,
  kUnknownChannel,
  kNoObservations,
};

std::string_view error_code_name(ErrorCode code) noexcept;

/// Every failure raised by the library. `code()` identifies the failure class;
/// `what()` carries "<CodeName>: <detail>".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace avf
