#include "locfin/error.hpp"

namespace locfin {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::NoSolution: return "NoSolution";
    case ErrorCode::AmbientMismatch: return "AmbientMismatch";
    case ErrorCode::MalformedPresentation: return "MalformedPresentation";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::UnknownObject: return "UnknownObject";
    case ErrorCode::UnknownHomSpace: return "UnknownHomSpace";
    case ErrorCode::MalformedFrontier: return "MalformedFrontier";
    case ErrorCode::TowerUnavailable: return "TowerUnavailable";
    case ErrorCode::IntervalNotFinite: return "IntervalNotFinite";
    case ErrorCode::SupportMismatch: return "SupportMismatch";
    case ErrorCode::ZeroInput: return "ZeroInput";
    case ErrorCode::NotLocallyFinite: return "NotLocallyFinite";
    case ErrorCode::HypothesisNotCertified: return "HypothesisNotCertified";
    case ErrorCode::CocycleViolated: return "CocycleViolated";
    case ErrorCode::HypothesisNotSatisfied: return "HypothesisNotSatisfied";
    case ErrorCode::UnknownGallery: return "UnknownGallery";
    case ErrorCode::BadWindow: return "BadWindow";
    case ErrorCode::Usage: return "Usage";
  }
  return "Unknown";
}

}  // namespace locfin
