#include "tcif/error.hpp"

namespace tcif {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::syntax: return "syntax error";
    case Errc::unknown_symbol: return "unknown symbol";
    case Errc::arity_mismatch: return "arity mismatch";
    case Errc::not_a_sentence: return "not a sentence";
    case Errc::unassigned_variable: return "unassigned variable";
    case Errc::missing_symbol: return "symbol missing from structure";
    case Errc::bad_identifier: return "bad identifier";
    case Errc::duplicate_symbol: return "duplicate symbol";
    case Errc::kind_arity: return "arity inconsistent with kind";
    case Errc::universe_in_signature: return "universe symbol in signature";
    case Errc::constraints_not_total: return "constraints not total";
    case Errc::unknown_constraint: return "constraint for undeclared symbol";
    case Errc::bad_mode: return "bad mode";
    case Errc::carrier_kind: return "carrier kind mismatch";
    case Errc::carrier_arity: return "carrier arity mismatch";
    case Errc::carrier_outside_universe: return "carrier outside universe carrier";
    case Errc::schematic_unsupported: return "schematic carrier unsupported";
    case Errc::signature_mismatch: return "signature mismatch";
    case Errc::not_a_model: return "not a model";
    case Errc::unrealizable_diagram: return "diagram not realizable";
    case Errc::wrong_class: return "wrong input class";
    case Errc::bad_level: return "bad level";
    case Errc::tuple_length: return "tuple length mismatch";
    case Errc::no_expansion: return "no expansion exists";
    case Errc::antisymmetry: return "antisymmetry violated";
    case Errc::unknown_element: return "unknown element";
    case Errc::cap_exceeded: return "cap exceeded";
    case Errc::not_dense: return "not dense";
    case Errc::atom_encountered: return "atom encountered";
    case Errc::undecidable: return "undecidable request";
    case Errc::not_in_poset: return "not in poset";
    case Errc::oracle_unavailable: return "oracle unavailable";
    case Errc::stage_cap: return "stage cap reached";
    case Errc::ill_founded: return "ill-founded";
    case Errc::non_extensional: return "non-extensional";
    case Errc::no_unique_maximum: return "no unique maximal element";
    case Errc::bad_set_syntax: return "bad set syntax";
    case Errc::malformed_input: return "malformed input";
  }
  return "error";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

ParseError::ParseError(std::size_t pos, std::string expected)
    : Error(Errc::syntax, "at " + std::to_string(pos) + ": expected " + expected),
      pos_(pos),
      expected_(std::move(expected)) {}

static std::string join_issues(const std::vector<Issue>& issues) {
  std::string out;
  for (const auto& i : issues) {
    if (!out.empty()) out += "; ";
    out += std::string(errc_name(i.code)) + " (" + i.message + ")";
  }
  return out;
}

ValidationError::ValidationError(std::vector<Issue> issues)
    : Error(issues.empty() ? Errc::malformed_input : issues.front().code, join_issues(issues)),
      issues_(std::move(issues)) {}

}  // namespace tcif
