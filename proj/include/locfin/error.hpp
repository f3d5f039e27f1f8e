#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace locfin {

enum class ErrorCode {
  FieldMismatch,
  DivisionByZero,
  NoSolution,
  AmbientMismatch,
  MalformedPresentation,
  DimensionMismatch,
  UnknownObject,
  UnknownHomSpace,
  MalformedFrontier,
  TowerUnavailable,
  IntervalNotFinite,
  SupportMismatch,
  ZeroInput,
  NotLocallyFinite,
  HypothesisNotCertified,
  CocycleViolated,
  HypothesisNotSatisfied,
  UnknownGallery,
  BadWindow,
  Usage,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace locfin
