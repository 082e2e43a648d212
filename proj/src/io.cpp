#include "tcif/io.hpp"

#include <fstream>

#include "tcif/error.hpp"

namespace tcif {

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::malformed_input, "cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(Errc::malformed_input, path + ": " + e.what());
  }
}

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(Errc::malformed_input, std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string str(const json& j, const char* what) {
  if (!j.is_string()) throw Error(Errc::malformed_input, std::string(what) + " must be a string");
  return j.get<std::string>();
}

Tuple tuple_of(const json& j) {
  Tuple t;
  for (const auto& e : j) t.push_back(str(e, "tuple entry"));
  return t;
}

}  // namespace

RawTCI raw_tci_from_json(const json& j) {
  RawTCI raw;
  raw.name = str(field(j, "name"), "name");
  const json& sig = field(j, "signature");
  if (!sig.is_array()) throw Error(Errc::malformed_input, "signature must be an array");
  for (const auto& s : sig) {
    SymbolDecl d;
    d.name = str(field(s, "name"), "symbol name");
    d.kind = parse_kind(str(field(s, "kind"), "symbol kind"));
    const json& ar = field(s, "arity");
    if (!ar.is_number_integer()) throw Error(Errc::malformed_input, "arity must be an integer");
    d.arity = ar.get<int>();
    raw.signature.push_back(std::move(d));
  }
  raw.universe_symbol = str(field(j, "universe_symbol"), "universe_symbol");
  const json& cons = field(j, "constraints");
  if (!cons.is_object()) throw Error(Errc::malformed_input, "constraints must be an object");
  for (const auto& [sym, c] : cons.items()) {
    RawConstraint rc;
    const json& mode = field(c, "mode");
    if (!mode.is_number_integer()) throw Error(Errc::malformed_input, sym + ": mode must be an integer");
    rc.mode = mode.get<int>();
    const json& carrier = field(c, "carrier");
    if (carrier.is_object()) {
      Schematic s;
      s.family = str(field(carrier, "schematic"), "schematic");
      const json& cut = field(carrier, "cutoff");
      if (!cut.is_number_integer()) throw Error(Errc::malformed_input, "cutoff must be an integer");
      s.cutoff = cut.get<int>();
      rc.schematic = s;
    } else if (carrier.is_array()) {
      for (const auto& item : carrier) {
        if (item.is_string()) rc.carrier.emplace_back(item.get<std::string>());
        else if (item.is_array()) rc.carrier.emplace_back(tuple_of(item));
        else throw Error(Errc::malformed_input, sym + ": carrier members are strings or arrays of strings");
      }
    } else {
      throw Error(Errc::malformed_input, sym + ": carrier must be an array or a schematic descriptor");
    }
    raw.constraints[sym] = std::move(rc);
  }
  const json& theory = field(j, "theory");
  if (!theory.is_array()) throw Error(Errc::malformed_input, "theory must be an array");
  for (const auto& f : theory) raw.theory.push_back(str(f, "theory entry"));
  return raw;
}

TCI tci_from_json(const json& j) { return validate_tci(raw_tci_from_json(j)); }

json tci_to_json(const TCI& t) {
  json j;
  j["name"] = t.name;
  j["universe_symbol"] = t.universe;
  j["signature"] = json::array();
  for (const auto& d : t.sig.symbols())
    j["signature"].push_back({{"name", d.name}, {"kind", kind_name(d.kind)}, {"arity", d.arity}});
  json cons = json::object();
  for (const auto& [sym, c] : t.constraints) {
    json cj;
    cj["mode"] = c.mode;
    if (c.schematic) {
      cj["carrier"] = {{"schematic", c.schematic->family}, {"cutoff", c.schematic->cutoff}};
    } else {
      json carrier = json::array();
      for (const auto& e : c.elements) carrier.push_back(e);
      for (const auto& tup : c.tuples) carrier.push_back(tup);
      cj["carrier"] = carrier;
    }
    cons[sym] = cj;
  }
  j["constraints"] = cons;
  j["theory"] = json::array();
  for (const auto& f : t.theory) j["theory"].push_back(print_formula(f));
  return j;
}

json structure_to_json(const Structure& m) {
  json j;
  j["universe"] = m.universe;
  json interp = json::object();
  for (const auto& [c, v] : m.constants) interp[c] = v;
  for (const auto& [r, rel] : m.relations) {
    json arr = json::array();
    for (const auto& tup : rel) arr.push_back(tup);
    interp[r] = arr;
  }
  for (const auto& [f, fn] : m.functions) {
    json arr = json::array();
    for (const auto& [args, v] : fn) {
      Tuple g = args;
      g.push_back(v);
      arr.push_back(g);
    }
    interp[f] = arr;
  }
  j["interp"] = interp;
  return j;
}

Structure structure_from_json(const json& j, const Signature& sig) {
  Structure m;
  const json& u = field(j, "universe");
  std::set<Element> elems;
  for (const auto& e : u) elems.insert(str(e, "universe element"));
  m.universe.assign(elems.begin(), elems.end());
  const json& interp = field(j, "interp");
  for (const auto& d : sig.symbols()) {
    const json& v = field(interp, d.name.c_str());
    switch (d.kind) {
      case SymbolKind::constant: m.constants[d.name] = str(v, "constant value"); break;
      case SymbolKind::relation: {
        auto& rel = m.relations[d.name];
        for (const auto& tup : v) rel.insert(tuple_of(tup));
        break;
      }
      case SymbolKind::function: {
        auto& fn = m.functions[d.name];
        for (const auto& g : v) {
          Tuple tup = tuple_of(g);
          if (tup.empty()) throw Error(Errc::malformed_input, d.name + ": empty graph entry");
          Element val = tup.back();
          tup.pop_back();
          fn[tup] = val;
        }
        break;
      }
    }
  }
  return m;
}

json condition_to_json(const Condition& c) {
  json arr = json::array();
  for (const auto& l : c) arr.push_back(l.text());
  return arr;
}

json classes_to_json(const QuantClasses& c) {
  json j;
  j["min_pi"] = c.pi;
  j["min_sigma"] = c.sigma;
  json mins = json::array();
  for (const auto& q : c.minimal()) mins.push_back(class_name(q));
  j["minimal"] = mins;
  return j;
}

Poset poset_from_json(const json& j) {
  std::string name = str(field(j, "name"), "name");
  const json& elems = field(j, "elements");
  const json& le = field(j, "le");
  if (!elems.is_array() || !le.is_array()) throw Error(Errc::malformed_input, "elements and le must be arrays");
  std::vector<std::string> es;
  for (const auto& e : elems) es.push_back(str(e, "poset element"));
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& p : le) {
    if (!p.is_array() || p.size() != 2) throw Error(Errc::malformed_input, "le entries are pairs");
    pairs.emplace_back(str(p[0], "poset element"), str(p[1], "poset element"));
  }
  return Poset::make(name, es, pairs);
}

json poset_to_json(const Poset& P) {
  json le = json::array();
  for (auto [p, q] : P.relation())
    if (p != q) le.push_back({P.elements()[p], P.elements()[q]});
  return {{"name", P.name()}, {"elements", P.elements()}, {"le", le}};
}

}  // namespace tcif
