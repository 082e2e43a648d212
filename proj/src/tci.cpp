#include "tcif/tci.hpp"

#include <algorithm>
#include <functional>

#include "tcif/error.hpp"

namespace tcif {

bool supported_family(const std::string& family) { return family == "cohen" || family == "initial_segment"; }

const Constraint& TCI::constraint(const std::string& symbol) const {
  auto it = constraints.find(symbol);
  if (it == constraints.end()) throw Error(Errc::constraints_not_total, symbol);
  return it->second;
}

namespace {

std::string item_text(const CarrierItem& item) {
  if (const auto* e = std::get_if<Element>(&item)) return *e;
  const auto& t = std::get<Tuple>(item);
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) out += (i ? "," : "") + t[i];
  return out + ")";
}

}  // namespace

TCI validate_tci(const RawTCI& raw) {
  std::vector<Issue> issues;
  TCI t;
  t.name = raw.name;
  t.universe = raw.universe_symbol;

  for (const auto& d : raw.signature) {
    try {
      t.sig.add(d);
    } catch (const Error& e) {
      issues.push_back({e.code(), e.what()});
    }
  }
  if (!is_identifier(raw.universe_symbol)) issues.push_back({Errc::bad_identifier, "universe symbol"});
  if (t.sig.contains(raw.universe_symbol)) issues.push_back({Errc::universe_in_signature, raw.universe_symbol});

  for (const auto& d : t.sig.symbols())
    if (!raw.constraints.count(d.name)) issues.push_back({Errc::constraints_not_total, "no constraint for " + d.name});
  if (!raw.constraints.count(raw.universe_symbol))
    issues.push_back({Errc::constraints_not_total, "no constraint for universe symbol " + raw.universe_symbol});

  std::set<Element> ucarrier;
  auto uit = raw.constraints.find(raw.universe_symbol);
  if (uit != raw.constraints.end())
    for (const auto& item : uit->second.carrier)
      if (const auto* e = std::get_if<Element>(&item)) ucarrier.insert(*e);

  for (const auto& [sym, rc] : raw.constraints) {
    bool is_universe = sym == raw.universe_symbol;
    const SymbolDecl* d = t.sig.find(sym);
    if (!is_universe && !d) {
      issues.push_back({Errc::unknown_constraint, sym});
      continue;
    }
    Constraint c;
    c.mode = rc.mode;
    if (rc.mode != 0 && rc.mode != 1) issues.push_back({Errc::bad_mode, sym + ": " + std::to_string(rc.mode)});
    if (rc.schematic) {
      c.schematic = rc.schematic;
      if (!is_universe) issues.push_back({Errc::schematic_unsupported, sym + ": only the universe may be schematic"});
      else if (!supported_family(rc.schematic->family))
        issues.push_back({Errc::schematic_unsupported, "unknown family " + rc.schematic->family});
      else if (rc.schematic->cutoff < 1)
        issues.push_back({Errc::schematic_unsupported, "cutoff must be positive"});
      else if (!raw.signature.empty() || !raw.theory.empty())
        issues.push_back({Errc::schematic_unsupported, "schematic families take an empty signature and theory"});
      t.constraints[sym] = c;
      continue;
    }
    bool wants_elements = is_universe || d->kind == SymbolKind::constant;
    std::size_t arity = 0;
    if (!wants_elements) arity = static_cast<std::size_t>(d->arity) + (d->kind == SymbolKind::function ? 1 : 0);
    for (const auto& item : rc.carrier) {
      if (wants_elements) {
        const auto* e = std::get_if<Element>(&item);
        if (!e) {
          issues.push_back({Errc::carrier_kind, sym + ": tuple " + item_text(item) + " where an element is required"});
          continue;
        }
        if (!is_universe && !ucarrier.count(*e))
          issues.push_back({Errc::carrier_outside_universe, sym + ": " + *e});
        c.elements.insert(*e);
        continue;
      }
      const auto* tup = std::get_if<Tuple>(&item);
      if (!tup) {
        issues.push_back({Errc::carrier_kind, sym + ": element " + item_text(item) + " where a tuple is required"});
        continue;
      }
      if (tup->size() != arity) {
        issues.push_back({Errc::carrier_arity, sym + ": " + item_text(item) + " is not a " + std::to_string(arity) + "-tuple"});
        continue;
      }
      for (const auto& e : *tup)
        if (!ucarrier.count(e)) {
          issues.push_back({Errc::carrier_outside_universe, sym + ": " + item_text(item)});
          break;
        }
      c.tuples.insert(*tup);
    }
    t.constraints[sym] = c;
  }

  for (const auto& text : raw.theory) {
    try {
      t.theory.push_back(parse_formula(text, t.sig));
    } catch (const Error& e) {
      issues.push_back({e.code(), "'" + text + "': " + e.what()});
    }
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return t;
}

bool is_structure_for(const Structure& m, const Signature& sig) {
  if (!std::is_sorted(m.universe.begin(), m.universe.end()) ||
      std::adjacent_find(m.universe.begin(), m.universe.end()) != m.universe.end())
    return false;
  std::size_t nc = 0, nr = 0, nf = 0;
  for (const auto& d : sig.symbols()) {
    switch (d.kind) {
      case SymbolKind::constant: {
        ++nc;
        auto it = m.constants.find(d.name);
        if (it == m.constants.end() || !m.has_element(it->second)) return false;
        break;
      }
      case SymbolKind::relation: {
        ++nr;
        auto it = m.relations.find(d.name);
        if (it == m.relations.end()) return false;
        for (const auto& tup : it->second) {
          if (tup.size() != static_cast<std::size_t>(d.arity)) return false;
          for (const auto& e : tup)
            if (!m.has_element(e)) return false;
        }
        break;
      }
      case SymbolKind::function: {
        ++nf;
        auto it = m.functions.find(d.name);
        if (it == m.functions.end()) return false;
        std::size_t expect = 1;
        for (int i = 0; i < d.arity; ++i) expect *= m.universe.size();
        if (it->second.size() != expect) return false;
        for (const auto& [args, v] : it->second) {
          if (args.size() != static_cast<std::size_t>(d.arity) || !m.has_element(v)) return false;
          for (const auto& e : args)
            if (!m.has_element(e)) return false;
        }
        break;
      }
    }
  }
  return nc == m.constants.size() && nr == m.relations.size() && nf == m.functions.size();
}

namespace {

bool inside(const Structure& m, const Tuple& tup) {
  return std::all_of(tup.begin(), tup.end(), [&](const Element& e) { return m.has_element(e); });
}

void check_signature(const Structure& m, const TCI& t) {
  std::size_t nc = 0, nr = 0, nf = 0;
  for (const auto& d : t.sig.symbols()) {
    bool ok = d.kind == SymbolKind::constant   ? (++nc, m.constants.count(d.name) > 0)
              : d.kind == SymbolKind::relation ? (++nr, m.relations.count(d.name) > 0)
                                               : (++nf, m.functions.count(d.name) > 0);
    if (!ok) throw Error(Errc::signature_mismatch, d.name + " not interpreted");
  }
  if (nc != m.constants.size() || nr != m.relations.size() || nf != m.functions.size())
    throw Error(Errc::signature_mismatch, "structure interprets symbols outside the signature");
}

}  // namespace

bool models_star(const Structure& m, const TCI& t) {
  if (t.is_schematic()) throw Error(Errc::schematic_unsupported, t.name);
  check_signature(m, t);
  if (!is_structure_for(m, t.sig)) return false;
  const Constraint& uc = t.universe_constraint();
  for (const auto& e : m.universe)
    if (!uc.elements.count(e)) return false;
  if (uc.mode == 1 && m.universe.size() != uc.elements.size()) return false;

  for (const auto& d : t.sig.symbols()) {
    const Constraint& c = t.constraint(d.name);
    switch (d.kind) {
      case SymbolKind::constant:
        if (!c.elements.count(m.constants.at(d.name))) return false;
        break;
      case SymbolKind::relation: {
        const auto& rel = m.relations.at(d.name);
        for (const auto& tup : rel)
          if (!c.tuples.count(tup)) return false;
        if (c.mode == 1)
          for (const auto& tup : c.tuples)
            if (inside(m, tup) && !rel.count(tup)) return false;
        break;
      }
      case SymbolKind::function: {
        const auto& fn = m.functions.at(d.name);
        for (const auto& [args, v] : fn) {
          Tuple g = args;
          g.push_back(v);
          if (!c.tuples.count(g)) return false;
        }
        if (c.mode == 1)
          for (const auto& tup : c.tuples) {
            if (!inside(m, tup)) continue;
            Tuple args(tup.begin(), tup.end() - 1);
            if (fn.at(args) != tup.back()) return false;
          }
        break;
      }
    }
  }
  for (const auto& f : t.theory)
    if (!eval_formula(m, f)) return false;
  return true;
}

namespace {

// Candidate interpretations of one symbol over a fixed universe, in canonical order.
struct Options {
  std::vector<Element> constants;
  std::vector<std::set<Tuple>> relations;
  std::vector<std::map<Tuple, Element>> functions;
  std::size_t size(SymbolKind k) const {
    return k == SymbolKind::constant ? constants.size()
           : k == SymbolKind::relation ? relations.size()
                                       : functions.size();
  }
};

void all_tuples(const std::vector<Element>& u, int n, std::vector<Tuple>& out) {
  Tuple cur;
  std::function<void()> rec = [&]() {
    if (static_cast<int>(cur.size()) == n) {
      out.push_back(cur);
      return;
    }
    for (const auto& e : u) {
      cur.push_back(e);
      rec();
      cur.pop_back();
    }
  };
  rec();
}

constexpr double kCandidateCap = 5e7;

Options options_for(const SymbolDecl& d, const Constraint& c, const Structure& shell) {
  Options o;
  switch (d.kind) {
    case SymbolKind::constant:
      for (const auto& e : shell.universe)
        if (c.elements.count(e)) o.constants.push_back(e);
      break;
    case SymbolKind::relation: {
      std::vector<Tuple> allowed;
      for (const auto& tup : c.tuples)
        if (inside(shell, tup)) allowed.push_back(tup);
      if (c.mode == 1) {
        o.relations.emplace_back(allowed.begin(), allowed.end());
        break;
      }
      if (allowed.size() > 24) throw Error(Errc::cap_exceeded, d.name + ": relation carrier too large to enumerate");
      for (auto& s : shortlex_subsets(allowed)) o.relations.emplace_back(s.begin(), s.end());
      break;
    }
    case SymbolKind::function: {
      std::vector<Tuple> args;
      all_tuples(shell.universe, d.arity, args);
      std::vector<std::vector<Element>> choices;
      double count = 1;
      for (const auto& a : args) {
        std::vector<Element> vals;
        for (const auto& v : shell.universe) {
          Tuple g = a;
          g.push_back(v);
          if (c.tuples.count(g)) vals.push_back(v);
        }
        if (c.mode == 1 && vals.size() != 1) return o;
        count *= static_cast<double>(vals.size());
        choices.push_back(std::move(vals));
      }
      if (count > kCandidateCap) throw Error(Errc::cap_exceeded, d.name + ": too many candidate functions");
      std::map<Tuple, Element> cur;
      std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == args.size()) {
          o.functions.push_back(cur);
          return;
        }
        for (const auto& v : choices[i]) {
          cur[args[i]] = v;
          rec(i + 1);
        }
        cur.erase(args[i]);
      };
      rec(0);
      break;
    }
  }
  return o;
}

}  // namespace

std::vector<Structure> enumerate_models(const TCI& t) {
  if (t.is_schematic()) throw Error(Errc::schematic_unsupported, "enumerate_models refuses schematic carrier of " + t.name);
  const Constraint& uc = t.universe_constraint();
  std::vector<Element> carrier(uc.elements.begin(), uc.elements.end());
  std::vector<std::vector<Element>> universes;
  if (uc.mode == 1) universes.push_back(carrier);
  else {
    if (carrier.size() > 20) throw Error(Errc::cap_exceeded, "universe carrier too large to enumerate");
    universes = shortlex_subsets(carrier);
  }

  std::vector<Structure> out;
  const auto& syms = t.sig.symbols();
  for (const auto& u : universes) {
    Structure shell;
    shell.universe = u;
    std::vector<Options> opts;
    double total = 1;
    for (const auto& d : syms) {
      opts.push_back(options_for(d, t.constraint(d.name), shell));
      total *= static_cast<double>(opts.back().size(d.kind));
    }
    if (total == 0) continue;
    if (total > kCandidateCap) throw Error(Errc::cap_exceeded, "too many candidate structures");
    std::function<void(std::size_t, Structure&)> rec = [&](std::size_t i, Structure& m) {
      if (i == syms.size()) {
        bool ok = true;
        for (const auto& f : t.theory)
          if (!eval_formula(m, f)) {
            ok = false;
            break;
          }
        if (ok) out.push_back(m);
        return;
      }
      const auto& d = syms[i];
      const Options& o = opts[i];
      switch (d.kind) {
        case SymbolKind::constant:
          for (const auto& e : o.constants) {
            m.constants[d.name] = e;
            rec(i + 1, m);
          }
          m.constants.erase(d.name);
          break;
        case SymbolKind::relation:
          for (const auto& r : o.relations) {
            m.relations[d.name] = r;
            rec(i + 1, m);
          }
          m.relations.erase(d.name);
          break;
        case SymbolKind::function:
          for (const auto& f : o.functions) {
            m.functions[d.name] = f;
            rec(i + 1, m);
          }
          m.functions.erase(d.name);
          break;
      }
    };
    rec(0, shell);
  }
  return out;
}

bool is_consistent(const TCI& t) {
  if (t.is_schematic()) {
    const auto& s = *t.universe_constraint().schematic;
    if (!supported_family(s.family)) throw Error(Errc::schematic_unsupported, s.family);
    return true;  // both families admit the empty model
  }
  return !enumerate_models(t).empty();
}

QuantClasses classify_tci(const TCI& t) {
  QuantClasses out{0, 0};
  for (const auto& f : t.theory) out = out.intersect(classify_formula(f));
  return out;
}

Literal Literal::negate() const {
  Literal l = *this;
  l.negated = !negated;
  return l;
}

std::strong_ordering Literal::operator<=>(const Literal& o) const {
  bool a = kind != Kind::universe, b = o.kind != Kind::universe;
  if (auto c = a <=> b; c != 0) return c;
  if (auto c = symbol <=> o.symbol; c != 0) return c;
  if (auto c = args <=> o.args; c != 0) return c;
  return negated <=> o.negated;
}

std::string Literal::text() const {
  auto join = [](const Tuple& t, std::size_t n) {
    std::string s;
    for (std::size_t i = 0; i < n; ++i) s += (i ? "," : "") + t[i];
    return s;
  };
  std::string body;
  switch (kind) {
    case Kind::universe:
    case Kind::relation: body = symbol + "(" + join(args, args.size()) + ")"; break;
    case Kind::constant: body = symbol + "=" + args[0]; break;
    case Kind::function: body = symbol + "(" + join(args, args.size() - 1) + ")=" + args.back(); break;
  }
  return negated ? "~" + body : body;
}

Condition make_condition(std::vector<Literal> lits) {
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  return lits;
}

bool is_subset(const Condition& small, const Condition& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

Condition condition_union(const Condition& a, const Condition& b) {
  Condition out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool is_consistent_set(const Condition& c) {
  // Complementary literals are adjacent in the canonical order.
  for (std::size_t i = 1; i < c.size(); ++i)
    if (c[i - 1].kind == c[i].kind && c[i - 1].symbol == c[i].symbol && c[i - 1].args == c[i].args) return false;
  return true;
}

std::string condition_text(const Condition& c) {
  std::string out = "{";
  for (std::size_t i = 0; i < c.size(); ++i) out += (i ? ", " : "") + c[i].text();
  return out + "}";
}

std::vector<Literal> build_literal_alphabet(const TCI& t) {
  if (t.is_schematic()) throw Error(Errc::schematic_unsupported, "alphabet of " + t.name + " is infinite");
  const Constraint& uc = t.universe_constraint();
  std::vector<Literal> out;
  auto both = [&](Literal l) {
    out.push_back(l);
    out.push_back(l.negate());
  };
  for (const auto& e : uc.elements) both({Literal::Kind::universe, t.universe, {e}});
  for (const auto& d : t.sig.symbols()) {
    const Constraint& c = t.constraint(d.name);
    switch (d.kind) {
      case SymbolKind::constant:
        for (const auto& e : c.elements)
          if (uc.elements.count(e)) both({Literal::Kind::constant, d.name, {e}});
        break;
      case SymbolKind::relation:
        for (const auto& tup : c.tuples) both({Literal::Kind::relation, d.name, tup});
        break;
      case SymbolKind::function:
        for (const auto& tup : c.tuples) both({Literal::Kind::function, d.name, tup});
        break;
    }
  }
  return make_condition(std::move(out));
}

Condition sigma_diagram(const TCI& t, const Structure& m) {
  if (!models_star(m, t)) throw Error(Errc::not_a_model, "sigma_diagram of a non-model of " + t.name);
  const Constraint& uc = t.universe_constraint();
  std::vector<Literal> out;
  for (const auto& e : uc.elements) out.push_back({Literal::Kind::universe, t.universe, {e}, !m.has_element(e)});
  for (const auto& d : t.sig.symbols()) {
    const Constraint& c = t.constraint(d.name);
    switch (d.kind) {
      case SymbolKind::constant: {
        const Element& v = m.constants.at(d.name);
        for (const auto& e : c.elements) {
          if (!uc.elements.count(e) || !m.has_element(e)) continue;
          out.push_back({Literal::Kind::constant, d.name, {e}, e != v});
        }
        break;
      }
      case SymbolKind::relation: {
        const auto& rel = m.relations.at(d.name);
        for (const auto& tup : c.tuples)
          if (inside(m, tup)) out.push_back({Literal::Kind::relation, d.name, tup, !rel.count(tup)});
        break;
      }
      case SymbolKind::function: {
        const auto& fn = m.functions.at(d.name);
        for (const auto& tup : c.tuples) {
          if (!inside(m, tup)) continue;
          Tuple args(tup.begin(), tup.end() - 1);
          out.push_back({Literal::Kind::function, d.name, tup, fn.at(args) != tup.back()});
        }
        break;
      }
    }
  }
  return make_condition(std::move(out));
}

Structure recover_model(const TCI& t, const Condition& d) {
  if (t.is_schematic()) throw Error(Errc::schematic_unsupported, t.name);
  Structure m;
  std::set<Element> u;
  for (const auto& l : d)
    if (l.kind == Literal::Kind::universe && !l.negated) u.insert(l.args[0]);
  m.universe.assign(u.begin(), u.end());
  for (const auto& decl : t.sig.symbols()) {
    switch (decl.kind) {
      case SymbolKind::constant: {
        auto it = std::find_if(d.begin(), d.end(), [&](const Literal& l) { return l.symbol == decl.name && !l.negated; });
        if (it == d.end()) throw Error(Errc::unrealizable_diagram, "no value for constant " + decl.name);
        m.constants[decl.name] = it->args[0];
        break;
      }
      case SymbolKind::relation: {
        auto& rel = m.relations[decl.name];
        for (const auto& l : d)
          if (l.symbol == decl.name && !l.negated) rel.insert(l.args);
        break;
      }
      case SymbolKind::function: {
        auto& fn = m.functions[decl.name];
        for (const auto& l : d) {
          if (l.symbol != decl.name || l.negated) continue;
          Tuple args(l.args.begin(), l.args.end() - 1);
          if (!fn.emplace(args, l.args.back()).second)
            throw Error(Errc::unrealizable_diagram, "two values for " + decl.name);
        }
        break;
      }
    }
  }
  if (!models_star(m, t) || sigma_diagram(t, m) != d)
    throw Error(Errc::unrealizable_diagram, condition_text(d) + " is not a diagram of a model of " + t.name);
  return m;
}

}  // namespace tcif
