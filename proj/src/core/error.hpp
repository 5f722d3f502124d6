#pragma once

#include <stdexcept>
#include <string>

namespace freelip {

// Every failure raised by the core carries one of these codes. The C API
// forwards the numeric value unchanged, so the order is part of the ABI.
enum class ErrorCode : int {
  kOk = 0,
  kInvalidArgument = 1,
  kParseError = 2,
  kUnknownPoint = 3,
  kAsymmetricMatrix = 4,
  kNonzeroDiagonal = 5,
  kZeroOffDiagonal = 6,
  kTriangleViolation = 7,
  kInvalidExponent = 8,
  kDuplicateLabel = 9,
  kInvalidPartition = 10,
  kInvalidParameter = 11,
  kNotLipschitz = 12,
  kBaseMissing = 13,
  kOverlappingSupports = 14,
  kNormExceedsOne = 15,
  kEmptyRegion = 16,
  kSpaceMismatch = 17,
  kSamePoint = 18,
  kFloatBackendUnsupported = 19,
  kLpInfeasible = 20,
  kEmptySet = 21,
  kTooFew = 22,
  kNotExposed = 23,
  kConstructionAssertFailed = 24,
  kNotAttaining = 25,
  kCurveTooLong = 26,
  kOverlappingIntervals = 27,
  kRadiusTooSmall = 28,
  kNormNotOne = 29,
  kNotACube = 30,
  kBallTooLarge = 31,
  kInnerBallEmpty = 32,
  kDegenerateCenters = 33,
  kBaseInBall = 34,
  kIoError = 35,
  kInternal = 99,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace freelip
