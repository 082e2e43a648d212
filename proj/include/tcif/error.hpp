#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace tcif {

enum class Errc {
  syntax,
  unknown_symbol,
  arity_mismatch,
  not_a_sentence,
  unassigned_variable,
  missing_symbol,
  bad_identifier,
  duplicate_symbol,
  kind_arity,
  universe_in_signature,
  constraints_not_total,
  unknown_constraint,
  bad_mode,
  carrier_kind,
  carrier_arity,
  carrier_outside_universe,
  schematic_unsupported,
  signature_mismatch,
  not_a_model,
  unrealizable_diagram,
  wrong_class,
  bad_level,
  tuple_length,
  no_expansion,
  antisymmetry,
  unknown_element,
  cap_exceeded,
  not_dense,
  atom_encountered,
  undecidable,
  not_in_poset,
  oracle_unavailable,
  stage_cap,
  ill_founded,
  non_extensional,
  no_unique_maximum,
  bad_set_syntax,
  malformed_input,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);
  Errc code() const { return code_; }

 private:
  Errc code_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t pos, std::string expected);
  std::size_t position() const { return pos_; }
  const std::string& expected() const { return expected_; }

 private:
  std::size_t pos_;
  std::string expected_;
};

struct Issue {
  Errc code;
  std::string message;
};

// Thrown by validate_tci with every violated invariant, not just the first.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Issue> issues);
  const std::vector<Issue>& issues() const { return issues_; }

 private:
  std::vector<Issue> issues_;
};

}  // namespace tcif
