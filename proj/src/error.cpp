#include "dilastab/error.hpp"

#include <sstream>

namespace dilastab {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidGrid: return "InvalidGrid";
    case ErrorCode::GridMissingOrigin: return "GridMissingOrigin";
    case ErrorCode::GridMissingUnit: return "GridMissingUnit";
    case ErrorCode::OffGrid: return "OffGrid";
    case ErrorCode::NonPositiveTime: return "NonPositiveTime";
    case ErrorCode::TimeChangeRange: return "TimeChangeRange";
    case ErrorCode::DegenerateDelta: return "DegenerateDelta";
    case ErrorCode::WrongRegime: return "WrongRegime";
    case ErrorCode::NotEnoughSamples: return "NotEnoughSamples";
    case ErrorCode::InadmissibleParams: return "InadmissibleParams";
    case ErrorCode::LowMagnitude: return "LowMagnitude";
    case ErrorCode::OracleOutOfDomain: return "OracleOutOfDomain";
  }
  return "Unknown";
}

namespace {

std::string low_magnitude_message(double r, double magnitude, double floor) {
  std::ostringstream os;
  os << "|cf| = " << magnitude << " below floor " << floor << " at r = " << r;
  return os.str();
}

}  // namespace

LowMagnitudeError::LowMagnitudeError(double r, double magnitude, double floor)
    : Error(ErrorCode::LowMagnitude, low_magnitude_message(r, magnitude, floor)),
      r_(r),
      magnitude_(magnitude),
      floor_(floor) {}

}  // namespace dilastab
