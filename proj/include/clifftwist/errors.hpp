#pragma once

#include <stdexcept>
#include <string>

namespace clifftwist {

// Failure modes carried by every library exception.  Tests match on the code,
// messages are for humans.
enum class errc {
  order_cap_exceeded,
  invalid_permutation,
  not_normal,
  degenerate_split,
  projection_rank_mismatch,
  no_matching_character,
  zero_intertwiner,
  schur_violation,
  non_scalar_value,
  snap_failure,
  cocycle_violation,
  not_a_cocycle,
  modulus_mismatch,
  not_trivialized,
  tolerance_exceeded,
  ambiguous_match,
  coset_decomposition_error,
  stabilizer_violation,
  bad_input,
  internal_inconsistency,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::order_cap_exceeded: return "OrderCapExceeded";
    case errc::invalid_permutation: return "InvalidPermutation";
    case errc::not_normal: return "NotNormal";
    case errc::degenerate_split: return "DegenerateSplit";
    case errc::projection_rank_mismatch: return "ProjectionRankMismatch";
    case errc::no_matching_character: return "NoMatchingCharacter";
    case errc::zero_intertwiner: return "ZeroIntertwiner";
    case errc::schur_violation: return "SchurViolation";
    case errc::non_scalar_value: return "NonScalarValue";
    case errc::snap_failure: return "SnapFailure";
    case errc::cocycle_violation: return "CocycleViolation";
    case errc::not_a_cocycle: return "NotACocycle";
    case errc::modulus_mismatch: return "ModulusMismatch";
    case errc::not_trivialized: return "NotTrivialized";
    case errc::tolerance_exceeded: return "ToleranceExceeded";
    case errc::ambiguous_match: return "AmbiguousMatch";
    case errc::coset_decomposition_error: return "CosetDecompositionError";
    case errc::stabilizer_violation: return "StabilizerViolation";
    case errc::bad_input: return "BadInput";
    case errc::internal_inconsistency: return "InternalInconsistency";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc c, const std::string& msg) { throw Error(c, msg); }

inline void require(bool ok, errc c, const std::string& msg) {
  if (!ok) fail(c, msg);
}

}  // namespace clifftwist
