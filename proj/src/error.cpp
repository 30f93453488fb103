#include "adderkit/error.hpp"

namespace adderkit {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidWidth: return "InvalidWidth";
    case ErrorCode::DanglingInput: return "DanglingInput";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::InvalidBinding: return "InvalidBinding";
    case ErrorCode::IncompleteLibrary: return "IncompleteLibrary";
    case ErrorCode::InvalidCellValue: return "InvalidCellValue";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidBlockWidth: return "InvalidBlockWidth";
    case ErrorCode::UnknownPreset: return "UnknownPreset";
    case ErrorCode::InsufficientVectors: return "InsufficientVectors";
    case ErrorCode::InvalidMetric: return "InvalidMetric";
    case ErrorCode::NothingToCompare: return "NothingToCompare";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail),
      code_(code),
      detail_(detail) {}

}  // namespace adderkit
