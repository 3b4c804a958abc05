#include "susylab/common.hpp"

namespace susylab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NonMorse: return "NonMorse";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::UnsupportedTopology: return "UnsupportedTopology";
    case ErrorKind::EmptySublevel: return "EmptySublevel";
    case ErrorKind::BadTopology: return "BadTopology";
    case ErrorKind::MemoryCap: return "MemoryCap";
    case ErrorKind::Underflow: return "Underflow";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::FactorizationFailure: return "FactorizationFailure";
    case ErrorKind::InsufficientK: return "InsufficientK";
    case ErrorKind::GapTooSmall: return "GapTooSmall";
    case ErrorKind::NonPositiveMu1: return "NonPositiveMu1";
    case ErrorKind::StepRejected: return "StepRejected";
    case ErrorKind::WindowEmpty: return "WindowEmpty";
    case ErrorKind::Blowup: return "Blowup";
    case ErrorKind::TooFewSamples: return "TooFewSamples";
    case ErrorKind::TooFewTransitions: return "TooFewTransitions";
    case ErrorKind::StepTooLarge: return "StepTooLarge";
    case ErrorKind::FlowBlowup: return "FlowBlowup";
  }
  return "Unknown";
}

}  // namespace susylab
