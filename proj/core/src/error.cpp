#include "trefftz/error.hpp"

namespace trefftz {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonconformingMaterial: return "NonconformingMaterial";
    case ErrorCode::EmptyPartition: return "EmptyPartition";
    case ErrorCode::NegativeExtent: return "NegativeExtent";
    case ErrorCode::MismatchedDomain: return "MismatchedDomain";
    case ErrorCode::ZeroPoints: return "ZeroPoints";
    case ErrorCode::DegenerateSegment: return "DegenerateSegment";
    case ErrorCode::PointOutsideElement: return "PointOutsideElement";
    case ErrorCode::TrefftzWithSource: return "TrefftzWithSource";
    case ErrorCode::SingularSlabMatrix: return "SingularSlabMatrix";
    case ErrorCode::QuadratureOrderTooLow: return "QuadratureOrderTooLow";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InhomogeneousSlabs: return "InhomogeneousSlabs";
    case ErrorCode::EigensolverFailure: return "EigensolverFailure";
    case ErrorCode::NonconstantMaterial: return "NonconstantMaterial";
    case ErrorCode::AmbiguousTrace: return "AmbiguousTrace";
    case ErrorCode::UnsupportedBC: return "UnsupportedBC";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::NonpositiveError: return "NonpositiveError";
    case ErrorCode::ConfigParse: return "ConfigParse";
  }
  return "Unknown";
}

bool is_config_error(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::SingularSlabMatrix:
    case ErrorCode::EigensolverFailure:
    case ErrorCode::NonpositiveError:
    case ErrorCode::InsufficientSamples:
      return false;
    default:
      return true;
  }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace trefftz
