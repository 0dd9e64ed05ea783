#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tpkit {

enum class errc {
  zero_polynomial,
  not_invertible,
  composition_requires_zero_constant,
  not_compositionally_invertible,
  bad_index_set,
  not_lower_triangular,
  dimension_mismatch,
  singular_diagonal,
  cyclic_graph,
  too_large_for_oracle,
  not_binomial_like,
  arity_mismatch,
  not_composite,
  index_out_of_range,
  truncation_too_small,
  not_admissible,
  insufficient_sequence,
  negative_entry,
  unknown_triangle,
  missing_fixture,
  not_representable,
  division_by_zero,
  parse_error,
  invalid_argument,
};

constexpr std::string_view to_string(errc code) noexcept {
  switch (code) {
    case errc::zero_polynomial: return "ZeroPolynomial";
    case errc::not_invertible: return "NotInvertible";
    case errc::composition_requires_zero_constant: return "CompositionRequiresZeroConstant";
    case errc::not_compositionally_invertible: return "NotCompositionallyInvertible";
    case errc::bad_index_set: return "BadIndexSet";
    case errc::not_lower_triangular: return "NotLowerTriangular";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::singular_diagonal: return "SingularDiagonal";
    case errc::cyclic_graph: return "CyclicGraph";
    case errc::too_large_for_oracle: return "TooLargeForOracle";
    case errc::not_binomial_like: return "NotBinomialLike";
    case errc::arity_mismatch: return "ArityMismatch";
    case errc::not_composite: return "NotComposite";
    case errc::index_out_of_range: return "IndexOutOfRange";
    case errc::truncation_too_small: return "TruncationTooSmall";
    case errc::not_admissible: return "NotAdmissible";
    case errc::insufficient_sequence: return "InsufficientSequence";
    case errc::negative_entry: return "NegativeEntry";
    case errc::unknown_triangle: return "UnknownTriangle";
    case errc::missing_fixture: return "MissingFixture";
    case errc::not_representable: return "NotRepresentable";
    case errc::division_by_zero: return "DivisionByZero";
    case errc::parse_error: return "ParseError";
    case errc::invalid_argument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure raised by the library. `code()` identifies the condition;
/// the message carries the offending index or value.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace tpkit
