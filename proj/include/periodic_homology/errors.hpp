#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace periodic_homology {

enum class ErrorKind {
  parse_error,
  dimension_mismatch,
  unknown_vertex,
  invalid_path,
  not_a_cycle,
  infinite_index,
  infinite_components,
  invalid_complex,
  not_a_chain_map,
  boundary_square_nonzero,
  dangling_face,
  dimension_error,
  divisibility_error,
  arity_overflow,
  anticommutation_failure,
  lift_failure,
  mismatch_with_direct_homology,
  class_not_found,
  insufficient_data,
  invalid_argument,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::parse_error: return "ParseError";
    case ErrorKind::dimension_mismatch: return "DimensionMismatch";
    case ErrorKind::unknown_vertex: return "UnknownVertex";
    case ErrorKind::invalid_path: return "InvalidPath";
    case ErrorKind::not_a_cycle: return "NotACycle";
    case ErrorKind::infinite_index: return "InfiniteIndex";
    case ErrorKind::infinite_components: return "InfiniteComponents";
    case ErrorKind::invalid_complex: return "InvalidComplex";
    case ErrorKind::not_a_chain_map: return "NotAChainMap";
    case ErrorKind::boundary_square_nonzero: return "BoundarySquareNonzero";
    case ErrorKind::dangling_face: return "DanglingFace";
    case ErrorKind::dimension_error: return "DimensionError";
    case ErrorKind::divisibility_error: return "DivisibilityError";
    case ErrorKind::arity_overflow: return "ArityOverflow";
    case ErrorKind::anticommutation_failure: return "AnticommutationFailure";
    case ErrorKind::lift_failure: return "LiftFailure";
    case ErrorKind::mismatch_with_direct_homology: return "MismatchWithDirectHomology";
    case ErrorKind::class_not_found: return "ClassNotFound";
    case ErrorKind::insufficient_data: return "InsufficientData";
    case ErrorKind::invalid_argument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a kind so callers (the CLI in
/// particular) can map it to an exit code without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace periodic_homology
