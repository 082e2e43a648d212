// Formula grammar, printer and prenex normalisation.
#include <algorithm>
#include <cctype>
#include <optional>

#include "tcif/error.hpp"
#include "tcif/fol.hpp"

namespace tcif {

namespace {

enum class Tok { ident, kw_forall, kw_exists, kw_true, kw_false, lparen, rparen, comma, neg, conj, disj, imp, iff, eq, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      std::string word(s.substr(start, i - start));
      Tok k = Tok::ident;
      if (word == "forall") k = Tok::kw_forall;
      else if (word == "exists") k = Tok::kw_exists;
      else if (word == "true") k = Tok::kw_true;
      else if (word == "false") k = Tok::kw_false;
      out.push_back({k, std::move(word), start});
      continue;
    }
    auto one = [&](Tok k) {
      out.push_back({k, std::string(1, c), start});
      ++i;
    };
    switch (c) {
      case '(': one(Tok::lparen); continue;
      case ')': one(Tok::rparen); continue;
      case ',': one(Tok::comma); continue;
      case '~': one(Tok::neg); continue;
      case '&': one(Tok::conj); continue;
      case '|': one(Tok::disj); continue;
      case '=': one(Tok::eq); continue;
      default: break;
    }
    if (s.substr(i, 2) == "->") {
      out.push_back({Tok::imp, "->", start});
      i += 2;
      continue;
    }
    if (s.substr(i, 3) == "<->") {
      out.push_back({Tok::iff, "<->", start});
      i += 3;
      continue;
    }
    throw ParseError(start, "a token");
  }
  out.push_back({Tok::end, "", s.size()});
  return out;
}

class Parser {
 public:
  Parser(std::string_view text, const Signature& sig, ParseOptions opts)
      : toks_(lex(text)), sig_(sig), opts_(opts) {}

  Node run() {
    Node n = iff();
    expect(Tok::end, "end of input");
    return n;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  bool at(Tok k) const { return peek().kind == k; }
  Token take() { return toks_[pos_++]; }
  Token expect(Tok k, const char* what) {
    if (!at(k)) throw ParseError(peek().pos, what);
    return take();
  }

  Node iff() {
    Node lhs = imp();
    while (at(Tok::iff)) {
      take();
      Node rhs = imp();
      Node fwd = Node::implication(lhs, rhs);
      Node back = Node::implication(rhs, lhs);
      lhs = Node::conjunction(std::move(fwd), std::move(back));
    }
    return lhs;
  }

  Node imp() {
    Node lhs = disj();
    if (!at(Tok::imp)) return lhs;
    take();
    return Node::implication(std::move(lhs), imp());
  }

  Node disj() {
    Node lhs = conj();
    while (at(Tok::disj)) {
      take();
      lhs = Node::disjunction(std::move(lhs), conj());
    }
    return lhs;
  }

  Node conj() {
    Node lhs = unit();
    while (at(Tok::conj)) {
      take();
      lhs = Node::conjunction(std::move(lhs), unit());
    }
    return lhs;
  }

  Node unit() {
    switch (peek().kind) {
      case Tok::neg:
        take();
        return Node::negation(unit());
      case Tok::kw_forall:
      case Tok::kw_exists: {
        Quant q = take().kind == Tok::kw_forall ? Quant::forall : Quant::exists;
        std::string var = expect(Tok::ident, "a variable").text;
        scope_.push_back(var);
        Node body = unit();
        scope_.pop_back();
        return Node::quantified(q, std::move(var), std::move(body));
      }
      case Tok::kw_true: take(); return Node::truth();
      case Tok::kw_false: take(); return Node::falsity();
      case Tok::lparen: {
        take();
        Node inner = iff();
        expect(Tok::rparen, "')'");
        return inner;
      }
      case Tok::ident: return atom();
      default: throw ParseError(peek().pos, "a formula");
    }
  }

  bool bound(const std::string& name) const {
    return std::find(scope_.begin(), scope_.end(), name) != scope_.end();
  }

  std::vector<Term> arguments() {
    expect(Tok::lparen, "'('");
    std::vector<Term> args;
    args.push_back(term());
    while (at(Tok::comma)) {
      take();
      args.push_back(term());
    }
    expect(Tok::rparen, "')'");
    return args;
  }

  Node atom() {
    Token id = peek();
    if (toks_[pos_ + 1].kind == Tok::lparen && !bound(id.text)) {
      const SymbolDecl* d = sig_.find(id.text);
      if (!d) throw Error(Errc::unknown_symbol, id.text + " at " + std::to_string(id.pos));
      if (d->kind == SymbolKind::relation) {
        take();
        auto args = arguments();
        check_arity(*d, args.size(), id.pos);
        return Node::atom(id.text, std::move(args));
      }
    }
    Term lhs = term();
    expect(Tok::eq, "'='");
    Term rhs = term();
    return Node::equal(std::move(lhs), std::move(rhs));
  }

  void check_arity(const SymbolDecl& d, std::size_t got, std::size_t pos) const {
    if (static_cast<int>(got) != d.arity)
      throw Error(Errc::arity_mismatch, d.name + " expects " + std::to_string(d.arity) + " argument(s), got " +
                                            std::to_string(got) + " at " + std::to_string(pos));
  }

  Term term() {
    Token id = expect(Tok::ident, "a term");
    if (bound(id.text)) {
      if (at(Tok::lparen)) throw ParseError(peek().pos, "no arguments after a variable");
      return Term::var(id.text);
    }
    const SymbolDecl* d = sig_.find(id.text);
    if (d && d->kind == SymbolKind::relation) throw ParseError(id.pos, "a term, not relation " + id.text);
    if (at(Tok::lparen)) {
      if (!d) throw Error(Errc::unknown_symbol, id.text + " at " + std::to_string(id.pos));
      auto args = arguments();
      check_arity(*d, args.size(), id.pos);
      return Term::apply(id.text, std::move(args));
    }
    if (d) {
      check_arity(*d, 0, id.pos);
      return Term::constant(id.text);
    }
    if (opts_.allow_free_variables) return Term::var(id.text);
    throw Error(Errc::unknown_symbol, id.text + " at " + std::to_string(id.pos));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const Signature& sig_;
  ParseOptions opts_;
  std::vector<std::string> scope_;
};

int prec(const Node& n) {
  switch (n.kind) {
    case Node::Kind::implication: return 1;
    case Node::Kind::disjunction: return 2;
    case Node::Kind::conjunction: return 3;
    default: return 4;
  }
}

std::string terms_text(const std::vector<Term>& ts) {
  std::string out = "(";
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (i) out += ",";
    out += print_term(ts[i]);
  }
  return out + ")";
}

std::string wrap(const Node& n, bool parens) { return parens ? "(" + print_node(n) + ")" : print_node(n); }

}  // namespace

Node parse_tree(std::string_view text, const Signature& sig, ParseOptions opts) {
  return Parser(text, sig, opts).run();
}

Formula parse_formula(std::string_view text, const Signature& sig, ParseOptions opts) {
  return to_prenex(parse_tree(text, sig, opts));
}

std::string print_term(const Term& t) {
  if (t.kind == Term::Kind::apply) return t.name + terms_text(t.args);
  return t.name;
}

std::string print_node(const Node& n) {
  switch (n.kind) {
    case Node::Kind::truth: return "true";
    case Node::Kind::falsity: return "false";
    case Node::Kind::atom: return n.name + terms_text(n.terms);
    case Node::Kind::equal: return print_term(n.terms[0]) + " = " + print_term(n.terms[1]);
    case Node::Kind::negation: {
      const Node& k = n.kids[0];
      bool plain = prec(k) == 4 && k.kind != Node::Kind::quantified && k.kind != Node::Kind::equal;
      return "~" + (plain ? print_node(k) : "(" + print_node(k) + ")");
    }
    case Node::Kind::conjunction:
    case Node::Kind::disjunction: {
      const char* op = n.kind == Node::Kind::conjunction ? " & " : " | ";
      const Node& a = n.kids[0];
      const Node& b = n.kids[1];
      bool pa = prec(a) < prec(n) || a.kind == Node::Kind::quantified;
      bool pb = prec(b) <= prec(n) || b.kind == Node::Kind::quantified;
      return wrap(a, pa) + op + wrap(b, pb);
    }
    case Node::Kind::implication: {
      const Node& a = n.kids[0];
      const Node& b = n.kids[1];
      bool pa = prec(a) <= prec(n) || a.kind == Node::Kind::quantified;
      bool pb = prec(b) < prec(n) || b.kind == Node::Kind::quantified;
      return wrap(a, pa) + " -> " + wrap(b, pb);
    }
    case Node::Kind::quantified: {
      std::string out = n.quant == Quant::forall ? "forall " : "exists ";
      out += n.name + " ";
      const Node& body = n.kids[0];
      if (body.kind == Node::Kind::quantified) return out + print_node(body);
      return out + "(" + print_node(body) + ")";
    }
  }
  return {};
}

std::string print_formula(const Formula& f) {
  if (f.prefix.empty()) return print_node(f.matrix);
  std::string out;
  for (const auto& [q, v] : f.prefix) out += (q == Quant::forall ? "forall " : "exists ") + v + " ";
  return out + "(" + print_node(f.matrix) + ")";
}

namespace {

void collect_names(const Term& t, std::set<std::string>& out) {
  out.insert(t.name);
  for (const auto& a : t.args) collect_names(a, out);
}

void collect_names(const Node& n, std::set<std::string>& out) {
  if (!n.name.empty()) out.insert(n.name);
  for (const auto& t : n.terms) collect_names(t, out);
  for (const auto& k : n.kids) collect_names(k, out);
}

class Renamer {
 public:
  explicit Renamer(std::set<std::string> used) : used_(std::move(used)) {}

  Node run(const Node& n, std::map<std::string, std::string>& scope) {
    Node out = n;
    for (auto& t : out.terms) rename_term(t, scope);
    if (n.kind == Node::Kind::quantified) {
      std::string fresh = next();
      auto prev = scope.find(n.name);
      std::optional<std::string> old;
      if (prev != scope.end()) old = prev->second;
      scope[n.name] = fresh;
      out.name = fresh;
      out.kids[0] = run(n.kids[0], scope);
      if (old) scope[n.name] = *old;
      else scope.erase(n.name);
      return out;
    }
    for (auto& k : out.kids) k = run(k, scope);
    return out;
  }

 private:
  void rename_term(Term& t, const std::map<std::string, std::string>& scope) {
    if (t.kind == Term::Kind::variable) {
      auto it = scope.find(t.name);
      if (it != scope.end()) t.name = it->second;
      return;
    }
    for (auto& a : t.args) rename_term(a, scope);
  }

  std::string next() {
    for (;;) {
      std::string name = "x" + std::to_string(++counter_);
      if (!used_.count(name)) return name;
    }
  }

  std::set<std::string> used_;
  int counter_ = 0;
};

Quant dual(Quant q) { return q == Quant::forall ? Quant::exists : Quant::forall; }

using Prefix = std::vector<std::pair<Quant, std::string>>;

Node pull(const Node& n, Prefix& prefix, bool flip) {
  auto add = [&](const Prefix& p, bool f) {
    for (const auto& [q, v] : p) prefix.emplace_back(f ? dual(q) : q, v);
  };
  switch (n.kind) {
    case Node::Kind::quantified: {
      prefix.emplace_back(flip ? dual(n.quant) : n.quant, n.name);
      return pull(n.kids[0], prefix, flip);
    }
    case Node::Kind::negation: return Node::negation(pull(n.kids[0], prefix, !flip));
    case Node::Kind::conjunction:
    case Node::Kind::disjunction:
    case Node::Kind::implication: {
      Prefix left, right;
      bool left_flip = n.kind == Node::Kind::implication ? !flip : flip;
      Node a = pull(n.kids[0], left, false);
      Node b = pull(n.kids[1], right, false);
      add(left, left_flip);
      add(right, flip);
      Node out = n;
      out.kids = {std::move(a), std::move(b)};
      return out;
    }
    default: return n;
  }
}

}  // namespace

Formula to_prenex(const Node& n) {
  Formula f;
  const Node* cur = &n;
  std::set<std::string> seen;
  bool distinct = true;
  while (cur->kind == Node::Kind::quantified) {
    distinct = distinct && seen.insert(cur->name).second;
    f.prefix.emplace_back(cur->quant, cur->name);
    cur = &cur->kids[0];
  }
  if (is_quantifier_free(*cur)) {
    auto free = free_variables(n);
    bool clash = std::any_of(seen.begin(), seen.end(), [&](const std::string& v) { return free.count(v) > 0; });
    if (distinct && !clash) {
      f.matrix = *cur;
      return f;
    }
  }
  std::set<std::string> used;
  collect_names(n, used);
  std::map<std::string, std::string> scope;
  Node renamed = Renamer(std::move(used)).run(n, scope);
  Formula out;
  out.matrix = pull(renamed, out.prefix, false);
  return out;
}

}  // namespace tcif
