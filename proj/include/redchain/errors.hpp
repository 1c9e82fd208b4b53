#pragma once

#include <stdexcept>
#include <string>

namespace redchain {

enum class errc {
  invalid_argument,
  malformed_header,
  literal_out_of_range,
  clause_too_large,
  missing_terminator,
  too_many_variables,
  not_coprime,
  moduli_not_coprime,
  empty_formula,
  paper_mode_non_integral,
  too_few_clauses,
  too_many_signs,
  assignment_does_not_satisfy,
  unsupported_exponent,
  search_space_too_large,
  cap_exceeded,
  residue_not_covered,
  no_instance_input,
  witness_mismatch,
  dimension_mismatch,
  negative_coefficient,
  chain_violation,
  audit_violation,
  bad_format,
};

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

}  // namespace redchain
