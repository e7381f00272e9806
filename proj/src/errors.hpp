#pragma once

#include <stdexcept>
#include <string>

namespace ceppa {

// Failure taxonomy shared by every module. Codes are stable: the C API maps
// them to status values and the CLI maps those to exit codes.
enum class errc {
  unsupported_type,
  irregular_weight,
  budget_exceeded,
  degree_overflow,
  no_nodal_vertex,
  non_unique_trace,
  missing_top_degree,
  degenerate_pairing,
  not_nilpotent,
  singular_constant_term,
  not_a_derivation,
  no_solution,
  incomposable_relation,
  jacobi_failure,
  inconsistent_scaling,
  non_generic_lambda,
  complex_not_chain,
  parse_error,
  bad_argument,
  internal,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::unsupported_type: return "UnsupportedType";
    case errc::irregular_weight: return "IrregularWeight";
    case errc::budget_exceeded: return "BudgetExceeded";
    case errc::degree_overflow: return "DegreeOverflow";
    case errc::no_nodal_vertex: return "NoNodalVertex";
    case errc::non_unique_trace: return "NonUniqueTrace";
    case errc::missing_top_degree: return "MissingTopDegree";
    case errc::degenerate_pairing: return "DegeneratePairing";
    case errc::not_nilpotent: return "NotNilpotent";
    case errc::singular_constant_term: return "SingularConstantTerm";
    case errc::not_a_derivation: return "NotADerivation";
    case errc::no_solution: return "NoSolution";
    case errc::incomposable_relation: return "IncomposableRelation";
    case errc::jacobi_failure: return "JacobiFailure";
    case errc::inconsistent_scaling: return "InconsistentScaling";
    case errc::non_generic_lambda: return "NonGenericLambda";
    case errc::complex_not_chain: return "ComplexNotChain";
    case errc::parse_error: return "ParseError";
    case errc::bad_argument: return "BadArgument";
    case errc::internal: return "InternalError";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) { throw Error(code, msg); }

inline void require(bool cond, errc code, const std::string& msg) {
  if (!cond) fail(code, msg);
}

}  // namespace ceppa
