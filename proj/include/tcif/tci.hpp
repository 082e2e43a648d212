#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "tcif/fol.hpp"

namespace tcif {

struct Schematic {
  std::string family;
  int cutoff = 0;

  bool operator==(const Schematic&) const = default;
};

bool supported_family(const std::string& family);

struct Constraint {
  // Universe and constant carriers hold elements; relation and function carriers hold tuples.
  std::set<Element> elements;
  std::set<Tuple> tuples;
  std::optional<Schematic> schematic;
  int mode = 0;

  bool operator==(const Constraint&) const = default;
};

struct TCI {
  std::string name;
  std::vector<Formula> theory;
  Signature sig;
  std::string universe;
  std::map<std::string, Constraint> constraints;

  const Constraint& constraint(const std::string& symbol) const;
  const Constraint& universe_constraint() const { return constraint(universe); }
  bool is_schematic() const { return universe_constraint().schematic.has_value(); }
};

using CarrierItem = std::variant<Element, Tuple>;

struct RawConstraint {
  std::vector<CarrierItem> carrier;
  std::optional<Schematic> schematic;
  int mode = 0;
};

struct RawTCI {
  std::string name;
  std::vector<SymbolDecl> signature;
  std::string universe_symbol;
  std::map<std::string, RawConstraint> constraints;
  std::vector<std::string> theory;
};

// Throws ValidationError listing every violated invariant.
TCI validate_tci(const RawTCI& raw);

bool is_structure_for(const Structure& m, const Signature& sig);
bool models_star(const Structure& m, const TCI& t);
std::vector<Structure> enumerate_models(const TCI& t);
bool is_consistent(const TCI& t);
QuantClasses classify_tci(const TCI& t);

struct Literal {
  enum class Kind { universe, constant, relation, function };
  Kind kind = Kind::universe;
  std::string symbol;
  Tuple args;  // constants: {value}; functions: arguments followed by the value
  bool negated = false;

  Literal negate() const;
  std::string text() const;

  bool operator==(const Literal&) const = default;
  std::strong_ordering operator<=>(const Literal& o) const;
};

// Sorted, duplicate-free literal sets; used both for diagrams and for conditions.
using Condition = std::vector<Literal>;

Condition make_condition(std::vector<Literal> lits);
bool is_subset(const Condition& small, const Condition& big);
Condition condition_union(const Condition& a, const Condition& b);
bool is_consistent_set(const Condition& c);
std::string condition_text(const Condition& c);

std::vector<Literal> build_literal_alphabet(const TCI& t);
Condition sigma_diagram(const TCI& t, const Structure& m);
Structure recover_model(const TCI& t, const Condition& d);

// Canonical order used for enumerations: by size, then lexicographically.
template <typename T>
std::vector<std::vector<T>> shortlex_subsets(const std::vector<T>& items);

}  // namespace tcif

#include "tcif/detail/subsets.hpp"
