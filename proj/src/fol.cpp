#include "tcif/fol.hpp"

#include <algorithm>
#include <optional>

#include "tcif/error.hpp"

namespace tcif {

const char* kind_name(SymbolKind kind) {
  switch (kind) {
    case SymbolKind::constant: return "constant";
    case SymbolKind::relation: return "relation";
    case SymbolKind::function: return "function";
  }
  return "relation";
}

SymbolKind parse_kind(std::string_view text) {
  if (text == "constant") return SymbolKind::constant;
  if (text == "relation") return SymbolKind::relation;
  if (text == "function") return SymbolKind::function;
  throw Error(Errc::malformed_input, "unknown symbol kind '" + std::string(text) + "'");
}

bool is_identifier(std::string_view text) {
  if (text.empty()) return false;
  auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
  if (!alpha(text[0])) return false;
  return std::all_of(text.begin() + 1, text.end(), [&](char c) { return alpha(c) || (c >= '0' && c <= '9'); });
}

Signature::Signature(std::vector<SymbolDecl> symbols) {
  for (auto& s : symbols) add(std::move(s));
}

void Signature::add(SymbolDecl decl) {
  if (!is_identifier(decl.name)) throw Error(Errc::bad_identifier, "'" + decl.name + "'");
  if (decl.name == "forall" || decl.name == "exists" || decl.name == "true" || decl.name == "false")
    throw Error(Errc::bad_identifier, "'" + decl.name + "' is a keyword");
  bool ok = decl.kind == SymbolKind::constant ? decl.arity == 0 : decl.arity >= 1;
  if (!ok)
    throw Error(Errc::kind_arity,
                decl.name + ": " + kind_name(decl.kind) + " of arity " + std::to_string(decl.arity));
  auto it = std::lower_bound(symbols_.begin(), symbols_.end(), decl.name,
                             [](const SymbolDecl& s, const std::string& n) { return s.name < n; });
  if (it != symbols_.end() && it->name == decl.name) throw Error(Errc::duplicate_symbol, decl.name);
  symbols_.insert(it, std::move(decl));
}

const SymbolDecl* Signature::find(std::string_view name) const {
  auto it = std::lower_bound(symbols_.begin(), symbols_.end(), name,
                             [](const SymbolDecl& s, std::string_view n) { return s.name < n; });
  if (it != symbols_.end() && it->name == name) return &*it;
  return nullptr;
}

Term Term::var(std::string name) { return Term{Kind::variable, std::move(name), {}}; }
Term Term::constant(std::string name) { return Term{Kind::constant, std::move(name), {}}; }
Term Term::apply(std::string name, std::vector<Term> args) {
  return Term{Kind::apply, std::move(name), std::move(args)};
}

Node Node::truth() { return Node{}; }
Node Node::falsity() {
  Node n;
  n.kind = Kind::falsity;
  return n;
}
Node Node::atom(std::string rel, std::vector<Term> args) {
  Node n;
  n.kind = Kind::atom;
  n.name = std::move(rel);
  n.terms = std::move(args);
  return n;
}
Node Node::equal(Term lhs, Term rhs) {
  Node n;
  n.kind = Kind::equal;
  n.terms = {std::move(lhs), std::move(rhs)};
  return n;
}
Node Node::negation(Node f) {
  Node n;
  n.kind = Kind::negation;
  n.kids = {std::move(f)};
  return n;
}
static Node binary(Node::Kind k, Node a, Node b) {
  Node n;
  n.kind = k;
  n.kids.reserve(2);
  n.kids.push_back(std::move(a));
  n.kids.push_back(std::move(b));
  return n;
}
Node Node::conjunction(Node a, Node b) { return binary(Kind::conjunction, std::move(a), std::move(b)); }
Node Node::disjunction(Node a, Node b) { return binary(Kind::disjunction, std::move(a), std::move(b)); }
Node Node::implication(Node a, Node b) { return binary(Kind::implication, std::move(a), std::move(b)); }
Node Node::quantified(Quant q, std::string var, Node body) {
  Node n;
  n.kind = Kind::quantified;
  n.quant = q;
  n.name = std::move(var);
  n.kids = {std::move(body)};
  return n;
}

bool QuantClasses::contains(QuantClass c) const {
  return c.level >= (c.side == QuantClass::Side::pi ? pi : sigma);
}

QuantClasses QuantClasses::intersect(const QuantClasses& other) const {
  return {std::max(pi, other.pi), std::max(sigma, other.sigma)};
}

std::vector<QuantClass> QuantClasses::list(int up_to) const {
  std::vector<QuantClass> out;
  for (int n = 0; n <= up_to; ++n) {
    if (contains({QuantClass::Side::pi, n})) out.push_back({QuantClass::Side::pi, n});
    if (contains({QuantClass::Side::sigma, n})) out.push_back({QuantClass::Side::sigma, n});
  }
  return out;
}

std::vector<QuantClass> QuantClasses::minimal() const {
  int lo = std::min(pi, sigma);
  std::vector<QuantClass> out;
  if (pi == lo) out.push_back({QuantClass::Side::pi, lo});
  if (sigma == lo) out.push_back({QuantClass::Side::sigma, lo});
  return out;
}

std::string class_name(QuantClass c) {
  return (c.side == QuantClass::Side::pi ? "Pi" : "Sigma") + std::to_string(c.level);
}

bool Structure::has_element(const Element& e) const {
  return std::binary_search(universe.begin(), universe.end(), e);
}

bool is_quantifier_free(const Node& n) {
  if (n.kind == Node::Kind::quantified) return false;
  return std::all_of(n.kids.begin(), n.kids.end(), [](const Node& k) { return is_quantifier_free(k); });
}

static void term_vars(const Term& t, const std::set<std::string>& bound, std::set<std::string>& out) {
  if (t.kind == Term::Kind::variable) {
    if (!bound.count(t.name)) out.insert(t.name);
    return;
  }
  for (const auto& a : t.args) term_vars(a, bound, out);
}

static void node_vars(const Node& n, std::set<std::string>& bound, std::set<std::string>& out) {
  for (const auto& t : n.terms) term_vars(t, bound, out);
  if (n.kind == Node::Kind::quantified) {
    bool fresh = bound.insert(n.name).second;
    node_vars(n.kids[0], bound, out);
    if (fresh) bound.erase(n.name);
    return;
  }
  for (const auto& k : n.kids) node_vars(k, bound, out);
}

std::set<std::string> free_variables(const Node& n) {
  std::set<std::string> bound, out;
  node_vars(n, bound, out);
  return out;
}

Node to_node(const Formula& f) {
  Node n = f.matrix;
  for (auto it = f.prefix.rbegin(); it != f.prefix.rend(); ++it) n = Node::quantified(it->first, it->second, std::move(n));
  return n;
}

std::set<std::string> free_variables(const Formula& f) { return free_variables(to_node(f)); }

QuantClasses classify_formula(const Formula& f) {
  if (!free_variables(f).empty()) throw Error(Errc::not_a_sentence, print_formula(f));
  if (!is_quantifier_free(f.matrix)) throw Error(Errc::malformed_input, "matrix contains a quantifier");
  if (f.prefix.empty()) return {0, 0};
  int blocks = 1;
  for (std::size_t i = 1; i < f.prefix.size(); ++i)
    if (f.prefix[i].first != f.prefix[i - 1].first) ++blocks;
  if (f.prefix.front().first == Quant::forall) return {blocks, blocks + 1};
  return {blocks + 1, blocks};
}

Element eval_term(const Structure& m, const Term& t, const Env& env) {
  switch (t.kind) {
    case Term::Kind::variable: {
      auto it = env.find(t.name);
      if (it == env.end()) throw Error(Errc::unassigned_variable, t.name);
      return it->second;
    }
    case Term::Kind::constant: {
      auto it = m.constants.find(t.name);
      if (it == m.constants.end()) throw Error(Errc::missing_symbol, t.name);
      return it->second;
    }
    case Term::Kind::apply: {
      auto it = m.functions.find(t.name);
      if (it == m.functions.end()) throw Error(Errc::missing_symbol, t.name);
      Tuple args;
      args.reserve(t.args.size());
      for (const auto& a : t.args) args.push_back(eval_term(m, a, env));
      auto v = it->second.find(args);
      if (v == it->second.end()) throw Error(Errc::missing_symbol, t.name + " undefined on argument tuple");
      return v->second;
    }
  }
  return {};
}

bool eval_node(const Structure& m, const Node& n, Env& env) {
  switch (n.kind) {
    case Node::Kind::truth: return true;
    case Node::Kind::falsity: return false;
    case Node::Kind::atom: {
      auto it = m.relations.find(n.name);
      if (it == m.relations.end()) throw Error(Errc::missing_symbol, n.name);
      Tuple args;
      args.reserve(n.terms.size());
      for (const auto& a : n.terms) args.push_back(eval_term(m, a, env));
      return it->second.count(args) > 0;
    }
    case Node::Kind::equal: return eval_term(m, n.terms[0], env) == eval_term(m, n.terms[1], env);
    case Node::Kind::negation: return !eval_node(m, n.kids[0], env);
    case Node::Kind::conjunction: return eval_node(m, n.kids[0], env) && eval_node(m, n.kids[1], env);
    case Node::Kind::disjunction: return eval_node(m, n.kids[0], env) || eval_node(m, n.kids[1], env);
    case Node::Kind::implication: return !eval_node(m, n.kids[0], env) || eval_node(m, n.kids[1], env);
    case Node::Kind::quantified: {
      auto saved = env.find(n.name);
      std::optional<Element> old;
      if (saved != env.end()) old = saved->second;
      bool want = n.quant == Quant::exists;
      bool result = !want;
      for (const auto& e : m.universe) {
        env[n.name] = e;
        if (eval_node(m, n.kids[0], env) == want) {
          result = want;
          break;
        }
      }
      if (old) env[n.name] = *old;
      else env.erase(n.name);
      return result;
    }
  }
  return false;
}

bool eval_formula(const Structure& m, const Formula& f, const Env& env) {
  Env local = env;
  Node n = to_node(f);
  return eval_node(m, n, local);
}

static Term subst_term(const Term& t, const std::map<std::string, Term>& subst) {
  if (t.kind == Term::Kind::variable) {
    auto it = subst.find(t.name);
    return it == subst.end() ? t : it->second;
  }
  Term out = t;
  for (auto& a : out.args) a = subst_term(a, subst);
  return out;
}

Node substitute(const Node& n, const std::map<std::string, Term>& subst) {
  if (subst.empty()) return n;
  Node out = n;
  for (auto& t : out.terms) t = subst_term(t, subst);
  if (n.kind == Node::Kind::quantified && subst.count(n.name)) {
    auto inner = subst;
    inner.erase(n.name);
    out.kids[0] = substitute(n.kids[0], inner);
    return out;
  }
  for (auto& k : out.kids) k = substitute(k, subst);
  return out;
}

}  // namespace tcif
