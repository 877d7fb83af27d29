#ifndef HENKIN_ERROR_HPP
#define HENKIN_ERROR_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace henkin {

enum class errc {
  syntax_error,
  unknown_relation,
  arity_mismatch,
  equality_not_in_signature,
  signature_mismatch,
  mode_mismatch,
  mixed_algebras,
  diagonal_in_qpa_mode,
  zero_element,
  diagonal_requirement_unsatisfiable,
  omitting_blocked,
  infinite_algebra,
  non_bijective,
  unfrozen_filter,
  horizon_exceeded,
  size_mismatch,
  capacity_exceeded,
  oracle_error,
  config_error,
  io_error,
  internal_error,
};

inline const char* errc_name(errc e) {
  switch (e) {
    case errc::syntax_error: return "SyntaxError";
    case errc::unknown_relation: return "UnknownRelation";
    case errc::arity_mismatch: return "ArityMismatch";
    case errc::equality_not_in_signature: return "EqualityNotInSignature";
    case errc::signature_mismatch: return "SignatureMismatch";
    case errc::mode_mismatch: return "ModeMismatch";
    case errc::mixed_algebras: return "MixedAlgebras";
    case errc::diagonal_in_qpa_mode: return "DiagonalInQpaMode";
    case errc::zero_element: return "ZeroElement";
    case errc::diagonal_requirement_unsatisfiable: return "DiagonalRequirementUnsatisfiable";
    case errc::omitting_blocked: return "OmittingBlocked";
    case errc::infinite_algebra: return "InfiniteAlgebra";
    case errc::non_bijective: return "NonBijective";
    case errc::unfrozen_filter: return "UnfrozenFilter";
    case errc::horizon_exceeded: return "HorizonExceeded";
    case errc::size_mismatch: return "SizeMismatch";
    case errc::capacity_exceeded: return "CapacityExceeded";
    case errc::oracle_error: return "OracleError";
    case errc::config_error: return "ConfigError";
    case errc::io_error: return "IoError";
    case errc::internal_error: return "InternalError";
  }
  return "UnknownError";
}

/// Errors that can be raised while a Henkin construction is running.
/// The CLI maps these to exit status 3, everything else to 2.
inline bool is_construction_error(errc e) {
  return e == errc::zero_element || e == errc::diagonal_requirement_unsatisfiable ||
         e == errc::omitting_blocked;
}

class error : public std::runtime_error {
public:
  error(errc code, const std::string& what, std::optional<std::size_t> position = std::nullopt)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code),
        position_(position) {}

  errc code() const noexcept { return code_; }
  std::optional<std::size_t> position() const noexcept { return position_; }

private:
  errc code_;
  std::optional<std::size_t> position_;
};

}  // namespace henkin

#endif
