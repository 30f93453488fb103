#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace adderkit {

enum class ErrorCode {
  InvalidWidth,
  DanglingInput,
  ArityMismatch,
  CycleDetected,
  InvalidBinding,
  IncompleteLibrary,
  InvalidCellValue,
  ParseError,
  InvalidBlockWidth,
  UnknownPreset,
  InsufficientVectors,
  InvalidMetric,
  NothingToCompare,
};

std::string_view to_string(ErrorCode code);

// All library failures are reported through this type. what() is
// "<CodeName>: <detail>" so the code survives into CLI diagnostics.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace adderkit
