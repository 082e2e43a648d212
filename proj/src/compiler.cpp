#include "tcif/compiler.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "tcif/error.hpp"

namespace tcif {

namespace {

std::string tag_of(const Element& e) {
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned char ch : e) {
    if (std::isalnum(ch)) {
      out += static_cast<char>(ch);
    } else {
      out += '_';
      out += hex[ch >> 4];
      out += hex[ch & 15];
    }
  }
  return out;
}

Node guard_atom(const std::string& guard, Term t) { return Node::atom(guard, {std::move(t)}); }

Node conj_all(std::vector<Node> parts) {
  Node out = parts.at(0);
  for (std::size_t i = 1; i < parts.size(); ++i) out = Node::conjunction(std::move(out), std::move(parts[i]));
  return out;
}

std::vector<std::vector<std::string>> ground_tuples(const std::vector<std::string>& consts, std::size_t k) {
  std::vector<std::vector<std::string>> out{{}};
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<std::vector<std::string>> next;
    for (const auto& t : out)
      for (const auto& c : consts) {
        auto x = t;
        x.push_back(c);
        next.push_back(std::move(x));
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace

Formula relativize_instance(const Formula& phi, const std::vector<std::string>& args, const std::string& guard) {
  std::size_t k = 0;
  while (k < phi.prefix.size() && phi.prefix[k].first == Quant::forall) ++k;
  if (args.size() != k)
    throw Error(Errc::tuple_length, "expected " + std::to_string(k) + " constants, got " + std::to_string(args.size()));
  Node body = phi.matrix;
  for (std::size_t i = phi.prefix.size(); i-- > k;) {
    const auto& [q, x] = phi.prefix[i];
    Node g = guard_atom(guard, Term::var(x));
    body = q == Quant::forall ? Node::implication(std::move(g), std::move(body))
                              : Node::conjunction(std::move(g), std::move(body));
  }
  for (std::size_t i = k; i-- > 0;) body = Node::implication(guard_atom(guard, Term::var(phi.prefix[i].second)), body);
  std::map<std::string, Term> subst;
  for (std::size_t i = 0; i < k; ++i) subst[phi.prefix[i].second] = Term::constant(args[i]);
  Formula out;
  out.prefix.assign(phi.prefix.begin() + static_cast<std::ptrdiff_t>(k), phi.prefix.end());
  out.matrix = substitute(body, subst);
  return out;
}

CompiledTCI compile_pi_to_sigma(const TCI& t, int n) {
  if (n < 1) throw Error(Errc::bad_level, "level must be at least 1");
  if (t.is_schematic()) throw Error(Errc::schematic_unsupported, t.name + " has an infinite carrier");
  QuantClass want{QuantClass::Side::pi, n + 1};
  if (!classify_tci(t).contains(want)) throw Error(Errc::wrong_class, t.name + " is not " + class_name(want));

  CompiledTCI c;
  c.input = t;
  c.level = n;
  const Constraint& uc = t.universe_constraint();

  // Fresh names: widen the separator until nothing collides.
  for (std::string sep = "__";; sep += "_") {
    std::set<std::string> taken;
    for (const auto& d : t.sig.symbols()) taken.insert(d.name);
    taken.insert(t.universe);
    std::string guard = "T" + sep;
    std::map<Element, std::string> consts;
    bool clash = !taken.insert(guard).second;
    for (const auto& e : uc.elements) {
      std::string name = "c" + sep + tag_of(e);
      clash = clash || !taken.insert(name).second;
      consts[e] = name;
    }
    if (!clash) {
      c.guard = guard;
      c.constants = std::move(consts);
      break;
    }
  }

  TCI& o = c.output;
  o.name = t.name + ".sigma" + std::to_string(n);
  o.universe = t.universe;
  o.sig = t.sig;
  o.sig.add({c.guard, SymbolKind::relation, 1});
  for (const auto& [e, name] : c.constants) o.sig.add({name, SymbolKind::constant, 0});

  Constraint u = uc;
  u.mode = 1;
  o.constraints[t.universe] = u;
  for (const auto& d : t.sig.symbols()) {
    Constraint x = t.constraint(d.name);
    x.mode = 0;
    o.constraints[d.name] = x;
  }
  Constraint g;
  g.mode = uc.mode;
  for (const auto& e : uc.elements) g.tuples.insert({e});
  o.constraints[c.guard] = g;
  for (const auto& [e, name] : c.constants) {
    Constraint k;
    k.elements = {e};
    o.constraints[name] = k;
  }

  auto ct = [&](const Element& e) { return Term::constant(c.constants.at(e)); };
  std::vector<Formula> star = t.theory;
  for (const auto& d : t.sig.symbols()) {
    if (d.kind != SymbolKind::function) continue;
    Formula total;
    std::vector<Term> xs;
    for (int i = 1; i <= d.arity; ++i) {
      total.prefix.emplace_back(Quant::forall, "x" + std::to_string(i));
      xs.push_back(Term::var("x" + std::to_string(i)));
    }
    std::string last = "x" + std::to_string(d.arity + 1);
    total.prefix.emplace_back(Quant::exists, last);
    total.matrix = Node::equal(Term::apply(d.name, xs), Term::var(last));
    star.push_back(total);
  }
  for (const auto& d : t.sig.symbols()) {
    const Constraint& x = t.constraint(d.name);
    if (d.kind == SymbolKind::constant) {
      star.push_back({{}, guard_atom(c.guard, Term::constant(d.name))});
      continue;
    }
    for (const auto& tup : x.tuples) {
      std::vector<Node> guards;
      for (const auto& e : tup) guards.push_back(guard_atom(c.guard, ct(e)));
      Node fact;
      if (d.kind == SymbolKind::relation) {
        std::vector<Term> args;
        for (const auto& e : tup) args.push_back(ct(e));
        fact = Node::atom(d.name, args);
      } else {
        std::vector<Term> args;
        for (std::size_t i = 0; i + 1 < tup.size(); ++i) args.push_back(ct(tup[i]));
        fact = Node::equal(Term::apply(d.name, args), ct(tup.back()));
      }
      star.push_back({{}, Node::implication(fact, conj_all(guards))});
      if (x.mode == 1) star.push_back({{}, Node::implication(conj_all(guards), fact)});
    }
  }

  std::vector<std::string> names;
  for (const auto& [e, name] : c.constants) names.push_back(name);
  for (const auto& phi : star) {
    std::size_t k = 0;
    while (k < phi.prefix.size() && phi.prefix[k].first == Quant::forall) ++k;
    for (const auto& args : ground_tuples(names, k)) o.theory.push_back(relativize_instance(phi, args, c.guard));
  }
  return c;
}

Structure model_restrict(const CompiledTCI& c, const Structure& m) {
  if (!models_star(m, c.output)) throw Error(Errc::not_a_model, "structure is not a model of " + c.output.name);
  Structure r;
  for (const auto& t : m.relations.at(c.guard)) r.universe.push_back(t.at(0));
  std::sort(r.universe.begin(), r.universe.end());
  auto inside = [&](const Tuple& t) {
    return std::all_of(t.begin(), t.end(), [&](const Element& e) { return r.has_element(e); });
  };
  for (const auto& d : c.input.sig.symbols()) {
    switch (d.kind) {
      case SymbolKind::constant: r.constants[d.name] = m.constants.at(d.name); break;
      case SymbolKind::relation: {
        auto& rel = r.relations[d.name];
        for (const auto& t : m.relations.at(d.name))
          if (inside(t)) rel.insert(t);
        break;
      }
      case SymbolKind::function: {
        auto& fn = r.functions[d.name];
        for (const auto& [args, v] : m.functions.at(d.name))
          if (inside(args)) fn[args] = v;
        break;
      }
    }
  }
  return r;
}

Structure model_expand(const CompiledTCI& c, const Structure& m) {
  if (!models_star(m, c.input)) throw Error(Errc::not_a_model, "structure is not a model of " + c.input.name);
  const auto& carrier = c.input.universe_constraint().elements;
  Structure x;
  x.universe.assign(carrier.begin(), carrier.end());
  bool full = x.universe == m.universe;
  for (const auto& d : c.input.sig.symbols())
    if (d.kind == SymbolKind::function && !full)
      throw Error(Errc::no_expansion, "function " + d.name + " cannot be extended total to the whole carrier");
  x.constants = m.constants;
  x.relations = m.relations;
  x.functions = m.functions;
  auto& g = x.relations[c.guard];
  for (const auto& e : m.universe) g.insert({e});
  for (const auto& [e, name] : c.constants) x.constants[name] = e;
  return x;
}

BijectionCheck verify_bijection(const CompiledTCI& c) {
  BijectionCheck out;
  auto in = enumerate_models(c.input);
  auto ou = enumerate_models(c.output);
  out.input_models = in.size();
  out.output_models = ou.size();
  std::set<Structure> image;
  std::set<Structure> targets(ou.begin(), ou.end());
  for (std::size_t i = 0; i < in.size(); ++i) {
    try {
      Structure x = model_expand(c, in[i]);
      if (!targets.count(x)) out.failures.push_back("expansion of input model " + std::to_string(i) + " is not an output model");
      if (!image.insert(x).second) out.failures.push_back("expansion of input model " + std::to_string(i) + " repeats");
      if (model_restrict(c, x) != in[i]) out.failures.push_back("restrict does not undo expand on input model " + std::to_string(i));
    } catch (const Error& e) {
      out.failures.push_back("input model " + std::to_string(i) + ": " + e.what());
    }
  }
  for (std::size_t i = 0; i < ou.size(); ++i) {
    try {
      Structure r = model_restrict(c, ou[i]);
      if (!models_star(r, c.input)) out.failures.push_back("restriction of output model " + std::to_string(i) + " is not an input model");
      else if (model_expand(c, r) != ou[i]) out.failures.push_back("expand does not undo restrict on output model " + std::to_string(i));
    } catch (const Error& e) {
      out.failures.push_back("output model " + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace tcif
