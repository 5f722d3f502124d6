#include "rational.hpp"

#include <cctype>

#include "error.hpp"

namespace freelip {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

[[noreturn]] void bad(std::string_view text) {
  throw Error(ErrorCode::kParseError, "not a rational number: '" + std::string(text) + "'");
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad(text);
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) bad(text);
    value = Rational(n, d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot);
    auto frac = s.substr(dot + 1);
    if (whole.empty() && frac.empty()) bad(text);
    if (!whole.empty() && !all_digits(whole)) bad(text);
    if (!frac.empty() && !all_digits(frac)) bad(text);
    mpz_class w = whole.empty() ? mpz_class(0) : mpz_class(std::string(whole), 10);
    mpz_class f = frac.empty() ? mpz_class(0) : mpz_class(std::string(frac), 10);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    value = Rational(w * scale + f, scale);
  } else {
    if (!all_digits(s)) bad(text);
    value = Rational(mpz_class(std::string(s), 10));
  }
  value.canonicalize();
  if (negative) value = -value;
  return value;
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_str();
}

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kOk: return "Ok";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kUnknownPoint: return "UnknownPoint";
    case ErrorCode::kAsymmetricMatrix: return "AsymmetricMatrix";
    case ErrorCode::kNonzeroDiagonal: return "NonzeroDiagonal";
    case ErrorCode::kZeroOffDiagonal: return "ZeroOffDiagonal";
    case ErrorCode::kTriangleViolation: return "TriangleViolation";
    case ErrorCode::kInvalidExponent: return "InvalidExponent";
    case ErrorCode::kDuplicateLabel: return "DuplicateLabel";
    case ErrorCode::kInvalidPartition: return "InvalidPartition";
    case ErrorCode::kInvalidParameter: return "InvalidParameter";
    case ErrorCode::kNotLipschitz: return "NotLipschitz";
    case ErrorCode::kBaseMissing: return "BaseMissing";
    case ErrorCode::kOverlappingSupports: return "OverlappingSupports";
    case ErrorCode::kNormExceedsOne: return "NormExceedsOne";
    case ErrorCode::kEmptyRegion: return "EmptyRegion";
    case ErrorCode::kSpaceMismatch: return "SpaceMismatch";
    case ErrorCode::kSamePoint: return "SamePoint";
    case ErrorCode::kFloatBackendUnsupported: return "FloatBackendUnsupported";
    case ErrorCode::kLpInfeasible: return "LPInfeasible";
    case ErrorCode::kEmptySet: return "EmptySet";
    case ErrorCode::kTooFew: return "TooFew";
    case ErrorCode::kNotExposed: return "NotExposed";
    case ErrorCode::kConstructionAssertFailed: return "ConstructionAssertFailed";
    case ErrorCode::kNotAttaining: return "NotAttaining";
    case ErrorCode::kCurveTooLong: return "CurveTooLong";
    case ErrorCode::kOverlappingIntervals: return "OverlappingIntervals";
    case ErrorCode::kRadiusTooSmall: return "RadiusTooSmall";
    case ErrorCode::kNormNotOne: return "NormNotOne";
    case ErrorCode::kNotACube: return "NotACube";
    case ErrorCode::kBallTooLarge: return "BallTooLarge";
    case ErrorCode::kInnerBallEmpty: return "InnerBallEmpty";
    case ErrorCode::kDegenerateCenters: return "DegenerateCenters";
    case ErrorCode::kBaseInBall: return "BaseInBall";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kInternal: return "Internal";
  }
  return "Unknown";
}

}  // namespace freelip
