#pragma once

#include <stdexcept>
#include <string>

namespace dilastab {

enum class ErrorCode {
  InvalidArgument,
  InvalidGrid,
  GridMissingOrigin,
  GridMissingUnit,
  OffGrid,
  NonPositiveTime,
  TimeChangeRange,
  DegenerateDelta,
  WrongRegime,
  NotEnoughSamples,
  InadmissibleParams,
  LowMagnitude,
  OracleOutOfDomain,
};

const char* to_string(ErrorCode code);

// Every failure raised by the library is a dilastab::Error; code() tells
// callers which contract was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised by the log-CF estimator when |cf| drops under the magnitude floor
// before the ray reaches r = 1.
class LowMagnitudeError : public Error {
 public:
  LowMagnitudeError(double r, double magnitude, double floor);

  double r() const noexcept { return r_; }
  double magnitude() const noexcept { return magnitude_; }
  double floor() const noexcept { return floor_; }

 private:
  double r_;
  double magnitude_;
  double floor_;
};

}  // namespace dilastab
