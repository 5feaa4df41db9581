#include "shepwm/error.hpp"

namespace shepwm {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::AngleOutOfRange: return "AngleOutOfRange";
    case ErrorCode::AnglesUnordered: return "AnglesUnordered";
    case ErrorCode::LevelOutOfBounds: return "LevelOutOfBounds";
    case ErrorCode::SignInvalid: return "SignInvalid";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::InvalidSampleCount: return "InvalidSampleCount";
    case ErrorCode::OrderExceedsNyquist: return "OrderExceedsNyquist";
    case ErrorCode::OrderExceedsSpectrum: return "OrderExceedsSpectrum";
    case ErrorCode::ZeroFundamental: return "ZeroFundamental";
    case ErrorCode::InvalidBounds: return "InvalidBounds";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::InvalidProblem: return "InvalidProblem";
    case ErrorCode::SignPatternInvalid: return "SignPatternInvalid";
    case ErrorCode::EmptySweep: return "EmptySweep";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::InfeasibleBasePoint: return "InfeasibleBasePoint";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace shepwm
