#include <doctest.h>

#include <algorithm>

#include "corpus.hpp"
#include "oracle.hpp"
#include "tcif/error.hpp"
#include "tcif/tci.hpp"

using namespace tcif;

namespace {

std::vector<Errc> issue_codes(const std::string& text) {
  try {
    fixtures::from_text(text);
  } catch (const ValidationError& e) {
    std::vector<Errc> out;
    for (const auto& i : e.issues()) out.push_back(i.code);
    return out;
  }
  return {};
}

Literal U(const char* e, bool neg = false) { return {Literal::Kind::universe, "U", {e}, neg}; }
Literal R(const char* a, const char* b, bool neg = false) { return {Literal::Kind::relation, "R", {a, b}, neg}; }

Structure sym_model(std::vector<Element> u, std::set<Tuple> r) {
  Structure m;
  m.universe = std::move(u);
  m.relations["R"] = std::move(r);
  return m;
}

std::vector<Structure> sorted(std::vector<Structure> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_SUITE("tci") {
  TEST_CASE("validate accepts the two-element cover TCI") {
    TCI t = fixtures::tci("ab");
    CHECK(t.sig.size() == 0);
    CHECK(t.universe_constraint().elements == std::set<Element>{"a", "b"});
  }

  TEST_CASE("validate reports each violated invariant") {
    CHECK(issue_codes(R"J({"name":"t","signature":[{"name":"R","kind":"relation","arity":2}],"universe_symbol":"U",
      "constraints":{"U":{"carrier":["a"],"mode":0}},"theory":[]})J") == std::vector<Errc>{Errc::constraints_not_total});
    CHECK(issue_codes(R"J({"name":"t","signature":[{"name":"R","kind":"relation","arity":2}],"universe_symbol":"U",
      "constraints":{"U":{"carrier":["a"],"mode":0},"R":{"carrier":[["a","a","a"]],"mode":0}},"theory":[]})J") ==
          std::vector<Errc>{Errc::carrier_arity});
    CHECK(issue_codes(R"J({"name":"t","signature":[{"name":"U","kind":"relation","arity":1}],"universe_symbol":"U",
      "constraints":{"U":{"carrier":["a"],"mode":0}},"theory":[]})J") ==
          std::vector<Errc>{Errc::universe_in_signature});
    CHECK(issue_codes(R"J({"name":"t","signature":[],"universe_symbol":"U",
      "constraints":{"U":{"carrier":[["a"]],"mode":2}},"theory":[]})J") ==
          std::vector<Errc>{Errc::bad_mode, Errc::carrier_kind});
    CHECK(issue_codes(R"J({"name":"t","signature":[{"name":"c","kind":"constant","arity":0}],"universe_symbol":"U",
      "constraints":{"U":{"carrier":["a"],"mode":0},"c":{"carrier":["z"],"mode":0},"Q":{"carrier":[],"mode":0}},
      "theory":["R(c)"]})J") ==
          std::vector<Errc>{Errc::unknown_constraint, Errc::carrier_outside_universe, Errc::unknown_symbol});
    CHECK(issue_codes(R"J({"name":"t","signature":[],"universe_symbol":"U",
      "constraints":{"U":{"carrier":{"schematic":"random","cutoff":3},"mode":0}},"theory":[]})J") ==
          std::vector<Errc>{Errc::schematic_unsupported});
  }

  TEST_CASE("models_star on the cover TCI") {
    TCI t = fixtures::tci("ab");
    Structure a;
    a.universe = {"a"};
    CHECK(models_star(a, t));
    Structure ac;
    ac.universe = {"a", "c"};
    CHECK(!models_star(ac, t));
  }

  TEST_CASE("models_star on the symmetric TCI") {
    TCI t = fixtures::tci("sym");
    CHECK(!models_star(sym_model({"a", "b"}, {{"a", "b"}}), t));
    CHECK(models_star(sym_model({"a", "b"}, {{"a", "b"}, {"b", "a"}}), t));
    Structure bare;
    bare.universe = {"a"};
    CHECK_THROWS_AS(models_star(bare, t), Error);
  }

  TEST_CASE("mode flags on relations and functions") {
    TCI t = fixtures::tci("fixed_edges");
    Structure m;
    m.universe = {"a", "b"};
    m.relations["E"] = {};
    CHECK(!models_star(m, t));
    m.relations["E"] = {{"a", "b"}};
    CHECK(models_star(m, t));
    TCI s = fixtures::tci("swap");
    Structure f;
    f.universe = {"a", "b"};
    f.functions["F"] = {{{"a"}, "b"}, {{"b"}, "a"}};
    CHECK(models_star(f, s));
    f.functions["F"] = {{{"a"}, "a"}, {{"b"}, "a"}};
    CHECK(!models_star(f, s));
  }

  TEST_CASE("enumeration counts") {
    CHECK(enumerate_models(fixtures::tci("ab")).size() == 4);
    CHECK(enumerate_models(fixtures::tci("sym")).size() == 13);
    CHECK(enumerate_models(fixtures::tci("falsum")).empty());
    auto ab = enumerate_models(fixtures::tci("ab"));
    CHECK(ab[0].universe.empty());
    CHECK(ab[1].universe == std::vector<Element>{"a"});
    CHECK(ab[2].universe == std::vector<Element>{"b"});
    CHECK(ab[3].universe == std::vector<Element>{"a", "b"});
  }

  TEST_CASE("enumeration agrees with the brute-force oracle on the corpus") {
    for (const auto& t : fixtures::finite_tcis()) {
      auto lib = enumerate_models(t);
      auto ref = oracle::models(t);
      CHECK_MESSAGE(sorted(lib) == sorted(ref), t.name);
      for (const auto& m : lib) CHECK(models_star(m, t));
    }
  }

  TEST_CASE("models_star agrees with enumeration on every candidate structure") {
    // Structures from the oracle's unfiltered space: flip the theory to true.
    for (const auto& name : {"sym", "pointed", "swap", "fixed_edges"}) {
      TCI t = fixtures::tci(name);
      TCI loose = t;
      loose.theory.clear();
      for (auto& [sym, c] : loose.constraints) {
        c.mode = 0;
        if (sym == loose.universe) continue;
        const SymbolDecl* d = loose.sig.find(sym);
        if (d->kind == SymbolKind::constant) c.elements = t.universe_constraint().elements;
        else {
          int n = d->arity + (d->kind == SymbolKind::function ? 1 : 0);
          std::vector<Element> u(t.universe_constraint().elements.begin(), t.universe_constraint().elements.end());
          for (const auto& tup : oracle::power(u, n)) c.tuples.insert(tup);
        }
      }
      auto models = enumerate_models(t);
      std::set<Structure> model_set(models.begin(), models.end());
      for (const auto& cand : oracle::models(loose)) CHECK(models_star(cand, t) == model_set.count(cand) > 0);
    }
  }

  TEST_CASE("consistency") {
    CHECK(is_consistent(fixtures::tci("ab")));
    CHECK(is_consistent(fixtures::tci("sym")));
    CHECK(!is_consistent(fixtures::tci("falsum")));
    CHECK(!is_consistent(fixtures::tci("two_in_one")));
    CHECK(is_consistent(fixtures::schematic("cohen")));
    CHECK_THROWS_AS(enumerate_models(fixtures::schematic("cohen")), Error);
  }

  TEST_CASE("classify_tci") {
    QuantClasses ab = classify_tci(fixtures::tci("ab"));
    CHECK(ab.contains({QuantClass::Side::pi, 0}));
    CHECK(ab.contains({QuantClass::Side::sigma, 0}));
    CHECK(classify_tci(fixtures::tci("sym")).minimal() == std::vector<QuantClass>{{QuantClass::Side::pi, 1}});
    CHECK(classify_tci(fixtures::tci("pi3")).minimal() == std::vector<QuantClass>{{QuantClass::Side::pi, 3}});
  }

  TEST_CASE("classification never drops when sentences are added") {
    TCI t = fixtures::tci("sym");
    int before = std::min(classify_tci(t).pi, classify_tci(t).sigma);
    t.theory.push_back(parse_formula("forall x exists y (R(x,y))", t.sig));
    int after = std::min(classify_tci(t).pi, classify_tci(t).sigma);
    CHECK(after >= before);
    CHECK(after == 2);
  }

  TEST_CASE("literal alphabet") {
    auto ab = build_literal_alphabet(fixtures::tci("ab"));
    CHECK(ab == make_condition({U("a"), U("b"), U("a", true), U("b", true)}));
    auto sym = build_literal_alphabet(fixtures::tci("sym"));
    CHECK(sym.size() == 12);
    TCI c = fixtures::from_text(R"J({"name":"c","signature":[{"name":"k","kind":"constant","arity":0}],
      "universe_symbol":"U","constraints":{"U":{"carrier":["a"],"mode":0},"k":{"carrier":["a"],"mode":0}},"theory":[]})J");
    auto lits = build_literal_alphabet(c);
    REQUIRE(lits.size() == 4);
    std::vector<std::string> text;
    for (const auto& l : lits) text.push_back(l.text());
    CHECK(text == std::vector<std::string>{"U(a)", "~U(a)", "k=a", "~k=a"});
  }

  TEST_CASE("alphabet is negation closed and duplicate free on the corpus") {
    for (const auto& t : fixtures::finite_tcis()) {
      auto lits = build_literal_alphabet(t);
      CHECK(lits.size() % 2 == 0);
      CHECK(std::adjacent_find(lits.begin(), lits.end()) == lits.end());
      for (const auto& l : lits) CHECK(std::binary_search(lits.begin(), lits.end(), l.negate()));
    }
  }

  TEST_CASE("sigma diagrams") {
    TCI ab = fixtures::tci("ab");
    Structure a;
    a.universe = {"a"};
    CHECK(sigma_diagram(ab, a) == make_condition({U("a"), U("b", true)}));
    CHECK(sigma_diagram(ab, Structure{}) == make_condition({U("a", true), U("b", true)}));
    TCI sym = fixtures::tci("sym");
    auto d = sigma_diagram(sym, sym_model({"a", "b"}, {{"a", "b"}, {"b", "a"}}));
    CHECK(d == make_condition({U("a"), U("b"), R("a", "b"), R("b", "a"), R("a", "a", true), R("b", "b", true)}));
  }

  TEST_CASE("recover_model inverts sigma_diagram") {
    TCI ab = fixtures::tci("ab");
    Structure a;
    a.universe = {"a"};
    CHECK(recover_model(ab, make_condition({U("a"), U("b", true)})) == a);
    CHECK(recover_model(ab, make_condition({U("a", true), U("b", true)})).universe.empty());
    TCI sym = fixtures::tci("sym");
    CHECK_THROWS_AS(recover_model(sym, make_condition({U("a"), U("b")})), Error);
  }

  TEST_CASE("diagram bijection on the corpus") {
    for (const auto& t : fixtures::finite_tcis()) {
      auto models = enumerate_models(t);
      std::vector<Condition> ds;
      for (const auto& m : models) {
        ds.push_back(sigma_diagram(t, m));
        CHECK(is_consistent_set(ds.back()));
        CHECK(recover_model(t, ds.back()) == m);
      }
      for (std::size_t i = 0; i < ds.size(); ++i)
        for (std::size_t j = 0; j < ds.size(); ++j)
          if (i != j) CHECK(!is_subset(ds[i], ds[j]));
    }
  }
}
