#pragma once

// Error taxonomy shared by every module.  Each failure carries a stable
// code so callers (and the command-line tool) can map it to an exit status
// without parsing message text.

#include <stdexcept>
#include <string>

namespace kalex {

enum class errc {
  not_monic,
  not_squarefree,
  has_rational_root,
  division_by_zero,
  zero_divisor_detected,
  context_mismatch,
  zero_polynomial,
  both_zero,
  zero_base,
  non_rational_coefficients,
  k_too_large,
  not_square,
  size_mismatch,
  dimension_mismatch,
  syntax_error,
  index_out_of_range,
  duplicate_header,
  not_a_knot,
  empty_word,
  relation_violated,
  singular_matrix,
  zero_alpha,
  not_proportional,
  zero_representation,
  unknown_generator,
  no_monoid_structure,
  invalid_action,
  image_not_finite,
  internal_check_failed,
};

class error : public std::runtime_error {
public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

private:
  errc code_;
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::not_monic: return "NotMonic";
    case errc::not_squarefree: return "NotSquarefree";
    case errc::has_rational_root: return "HasRationalRoot";
    case errc::division_by_zero: return "DivisionByZero";
    case errc::zero_divisor_detected: return "ZeroDivisorDetected";
    case errc::context_mismatch: return "ContextMismatch";
    case errc::zero_polynomial: return "ZeroPolynomial";
    case errc::both_zero: return "BothZero";
    case errc::zero_base: return "ZeroBase";
    case errc::non_rational_coefficients: return "NonRationalCoefficients";
    case errc::k_too_large: return "KTooLarge";
    case errc::not_square: return "NotSquare";
    case errc::size_mismatch: return "SizeMismatch";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::syntax_error: return "SyntaxError";
    case errc::index_out_of_range: return "IndexOutOfRange";
    case errc::duplicate_header: return "DuplicateHeader";
    case errc::not_a_knot: return "NotAKnot";
    case errc::empty_word: return "EmptyWord";
    case errc::relation_violated: return "RelationViolated";
    case errc::singular_matrix: return "SingularMatrix";
    case errc::zero_alpha: return "ZeroAlpha";
    case errc::not_proportional: return "NotProportional";
    case errc::zero_representation: return "ZeroRepresentation";
    case errc::unknown_generator: return "UnknownGenerator";
    case errc::no_monoid_structure: return "NoMonoidStructure";
    case errc::invalid_action: return "InvalidAction";
    case errc::image_not_finite: return "ImageNotFinite";
    case errc::internal_check_failed: return "InternalCheckFailed";
  }
  return "Unknown";
}

}  // namespace kalex
