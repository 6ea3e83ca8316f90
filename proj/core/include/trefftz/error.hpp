#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace trefftz {

enum class ErrorCode {
  InvalidArgument,
  // mesh
  NonconformingMaterial,
  EmptyPartition,
  NegativeExtent,
  MismatchedDomain,
  // quadrature
  ZeroPoints,
  DegenerateSegment,
  // basis
  PointOutsideElement,
  // assembly / solver
  TrefftzWithSource,
  SingularSlabMatrix,
  QuadratureOrderTooLow,
  DimensionMismatch,
  InhomogeneousSlabs,
  EigensolverFailure,
  // reference / analysis
  NonconstantMaterial,
  AmbiguousTrace,
  UnsupportedBC,
  InsufficientSamples,
  NonpositiveError,
  // configuration
  ConfigParse,
};

std::string_view to_string(ErrorCode code) noexcept;

/// True for errors caused by user input (configuration), false for
/// numerical failures. The CLI maps these onto distinct exit codes.
bool is_config_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace trefftz
