#pragma once

#include <compare>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tcif {

using Element = std::string;
using Tuple = std::vector<Element>;

enum class SymbolKind { constant, relation, function };

const char* kind_name(SymbolKind kind);
SymbolKind parse_kind(std::string_view text);  // throws malformed_input
bool is_identifier(std::string_view text);

struct SymbolDecl {
  std::string name;
  SymbolKind kind = SymbolKind::relation;
  int arity = 0;

  bool operator==(const SymbolDecl&) const = default;
};

// Symbols are kept sorted by name; that order is the canonical one everywhere.
class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<SymbolDecl> symbols);

  void add(SymbolDecl decl);
  const std::vector<SymbolDecl>& symbols() const { return symbols_; }
  const SymbolDecl* find(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name) != nullptr; }
  std::size_t size() const { return symbols_.size(); }

  bool operator==(const Signature&) const = default;

 private:
  std::vector<SymbolDecl> symbols_;
};

struct Term {
  enum class Kind { variable, constant, apply };
  Kind kind = Kind::variable;
  std::string name;
  std::vector<Term> args;

  static Term var(std::string name);
  static Term constant(std::string name);
  static Term apply(std::string name, std::vector<Term> args);

  bool operator==(const Term&) const = default;
};

enum class Quant { forall, exists };

struct Node {
  enum class Kind { truth, falsity, atom, equal, negation, conjunction, disjunction, implication, quantified };
  Kind kind = Kind::truth;
  std::string name;  // relation symbol for atoms, bound variable for quantified
  Quant quant = Quant::forall;
  std::vector<Term> terms;
  std::vector<Node> kids;

  static Node truth();
  static Node falsity();
  static Node atom(std::string rel, std::vector<Term> args);
  static Node equal(Term lhs, Term rhs);
  static Node negation(Node f);
  static Node conjunction(Node a, Node b);
  static Node disjunction(Node a, Node b);
  static Node implication(Node a, Node b);
  static Node quantified(Quant q, std::string var, Node body);

  bool operator==(const Node&) const = default;
};

struct Formula {
  std::vector<std::pair<Quant, std::string>> prefix;
  Node matrix;

  bool operator==(const Formula&) const = default;
};

struct QuantClass {
  enum class Side { pi, sigma };
  Side side = Side::pi;
  int level = 0;

  auto operator<=>(const QuantClass&) const = default;
};

// Upward-closed set of classes: (Pi,n) is a member iff n >= pi, likewise for sigma.
struct QuantClasses {
  int pi = 0;
  int sigma = 0;

  bool contains(QuantClass c) const;
  QuantClasses intersect(const QuantClasses& other) const;
  std::vector<QuantClass> list(int up_to) const;
  std::vector<QuantClass> minimal() const;

  bool operator==(const QuantClasses&) const = default;
};

std::string class_name(QuantClass c);

struct Structure {
  std::vector<Element> universe;  // sorted, duplicate-free
  std::map<std::string, Element> constants;
  std::map<std::string, std::set<Tuple>> relations;
  std::map<std::string, std::map<Tuple, Element>> functions;

  bool has_element(const Element& e) const;
  auto operator<=>(const Structure&) const = default;
};

using Env = std::map<std::string, Element>;

struct ParseOptions {
  bool allow_free_variables = false;
};

Node parse_tree(std::string_view text, const Signature& sig, ParseOptions opts = {});
Formula parse_formula(std::string_view text, const Signature& sig, ParseOptions opts = {});

std::string print_term(const Term& t);
std::string print_node(const Node& n);
std::string print_formula(const Formula& f);

bool is_quantifier_free(const Node& n);
std::set<std::string> free_variables(const Node& n);
std::set<std::string> free_variables(const Formula& f);
Node to_node(const Formula& f);

Formula to_prenex(const Node& n);

QuantClasses classify_formula(const Formula& f);

Element eval_term(const Structure& m, const Term& t, const Env& env);
bool eval_node(const Structure& m, const Node& n, Env& env);
bool eval_formula(const Structure& m, const Formula& f, const Env& env = {});

// Replace free occurrences of variables by terms.
Node substitute(const Node& n, const std::map<std::string, Term>& subst);

}  // namespace tcif
