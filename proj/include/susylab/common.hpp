#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

namespace susylab {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using Complex = std::complex<double>;

enum class ErrorKind {
  InvalidArgument,
  ConfigError,
  IoError,
  DimensionMismatch,
  NonMorse,
  NoConvergence,
  UnsupportedTopology,
  EmptySublevel,
  BadTopology,
  MemoryCap,
  Underflow,
  LengthMismatch,
  FactorizationFailure,
  InsufficientK,
  GapTooSmall,
  NonPositiveMu1,
  StepRejected,
  WindowEmpty,
  Blowup,
  TooFewSamples,
  TooFewTransitions,
  StepTooLarge,
  FlowBlowup,
};

std::string_view to_string(ErrorKind kind);

/// Exception type used throughout the library. The kind is machine-readable
/// and is what the command line front end reports in its error records.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) throw Error(kind, message);
}

}  // namespace susylab
