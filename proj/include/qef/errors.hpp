#pragma once

#include <stdexcept>
#include <string>

namespace qef {

// Broad failure categories; the CLI maps them onto exit codes
// (input -> 1, everything else -> 2).
enum class ErrorKind {
  input,            // malformed file / flag / schema
  dimension,        // incompatible or non-square shapes
  malformed_ccr,    // claimed CCR matrix is not antisymmetric
  singular_ccr,     // canonicalization of a singular CCR matrix
  heisenberg,       // P + i*Theta not positive semidefinite
  not_positive_definite,
  branch_cut,       // matrix log / complex sqrt hit the negative real axis
  infeasible,       // spectral-radius convergence condition violated
  conjugation_symmetry,  // sandwich product produced a non-real matrix
  divergence,       // runaway ODE / classical determinant not positive
  domain,           // other precondition violations
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::input: return "input";
    case ErrorKind::dimension: return "dimension";
    case ErrorKind::malformed_ccr: return "malformed_ccr";
    case ErrorKind::singular_ccr: return "singular_ccr";
    case ErrorKind::heisenberg: return "heisenberg";
    case ErrorKind::not_positive_definite: return "not_positive_definite";
    case ErrorKind::branch_cut: return "branch_cut";
    case ErrorKind::infeasible: return "infeasible";
    case ErrorKind::conjugation_symmetry: return "conjugation_symmetry";
    case ErrorKind::divergence: return "divergence";
    case ErrorKind::domain: return "domain";
  }
  return "unknown";
}

}  // namespace qef
