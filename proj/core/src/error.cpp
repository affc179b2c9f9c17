#include "avfusion/error.hpp"

namespace avf {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kBadMagic: return "BadMagic";
    case ErrorCode::kTruncated: return "Truncated";
    case ErrorCode::kMalformed: return "Malformed";
    case ErrorCode::kNonFinite: return "NonFinite";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kDuplicateClipId: return "DuplicateClipId";
    case ErrorCode::kUnknownLabel: return "UnknownLabel";
    case ErrorCode::kMalformedRow: return "MalformedRow";
    case ErrorCode::kMissingFile: return "MissingFile";
    case ErrorCode::kEmptyVolume: return "EmptyVolume";
    case ErrorCode::kGridLargerThanFrame: return "GridLargerThanFrame";
    case ErrorCode::kTooFewSamples: return "TooFewSamples";
    case ErrorCode::kEmptyList: return "EmptyList";
    case ErrorCode::kEmptyScores: return "EmptyScores";
    case ErrorCode::kEmpty: return "Empty";
    case ErrorCode::kZeroNormCenter: return "ZeroNormCenter";
    case ErrorCode::kDegenerateInput: return "DegenerateInput";
    case ErrorCode::kSingleClass: return "SingleClass";
    case ErrorCode::kEmptyClassRow: return "EmptyClassRow";
    case ErrorCode::kAllZeroPosterior: return "AllZeroPosterior";
    case ErrorCode::kUnknownChannel: return "UnknownChannel";
    case ErrorCode::kNoObservations: return "NoObservations";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + detail),
      code_(code),
      detail_(detail) {}

}  // namespace avf
