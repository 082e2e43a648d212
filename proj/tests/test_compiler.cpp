#include <doctest.h>

#include <algorithm>

#include "corpus.hpp"
#include "tcif/compiler.hpp"
#include "tcif/error.hpp"

using namespace tcif;

namespace {

int level_for(const TCI& t) { return std::max(1, classify_tci(t).pi - 1); }

bool has(const std::vector<Formula>& theory, const Formula& f) {
  return std::find(theory.begin(), theory.end(), f) != theory.end();
}

}  // namespace

TEST_SUITE("compiler") {
  TEST_CASE("symmetric TCI: ground instances and guard axioms") {
    TCI t = fixtures::tci("sym");
    CompiledTCI c = compile_pi_to_sigma(t, 1);
    CHECK(c.guard == "T__");
    CHECK(c.constants.at("a") == "c__a");
    CHECK(c.output.theory.size() == 8);
    for (const auto& f : c.output.theory) CHECK(f.prefix.empty());
    for (const char* a : {"a", "b"})
      for (const char* b : {"a", "b"}) {
        std::string x = std::string("c__") + a, y = std::string("c__") + b;
        CHECK(has(c.output.theory, parse_formula("T__(" + x + ") -> (T__(" + y + ") -> (R(" + x + "," + y + ") -> R(" + y +
                                                     "," + x + ")))",
                                                 c.output.sig)));
        CHECK(has(c.output.theory,
                  parse_formula("R(" + x + "," + y + ") -> (T__(" + x + ") & T__(" + y + "))", c.output.sig)));
      }
    CHECK(c.output.constraint("U").mode == 1);
    CHECK(c.output.constraint("T__").mode == 0);
    CHECK(c.output.constraint("c__b").elements == std::set<Element>{"b"});
  }

  TEST_CASE("empty theory without symbols") {
    CompiledTCI c = compile_pi_to_sigma(fixtures::tci("ab"), 1);
    CHECK(c.output.theory.empty());
    CHECK(c.output.constraint("U").mode == 1);
    CHECK(c.output.constraint("T__").tuples == std::set<Tuple>{{"a"}, {"b"}});
    CHECK(c.output.constraint("T__").mode == 0);
    CHECK(enumerate_models(c.output).size() == 4);
  }

  TEST_CASE("mode-1 function adds totality and both guard directions") {
    CompiledTCI c = compile_pi_to_sigma(fixtures::tci("swap"), 1);
    CHECK(c.output.theory.size() == 8);
    CHECK(has(c.output.theory, parse_formula("exists x2 (T__(c__a) -> (T__(x2) & F(c__a) = x2))", c.output.sig)));
    CHECK(has(c.output.theory, parse_formula("T__(c__a) & T__(c__b) -> F(c__a) = c__b", c.output.sig)));
    CHECK(has(c.output.theory, parse_formula("F(c__a) = c__b -> T__(c__a) & T__(c__b)", c.output.sig)));
  }

  TEST_CASE("relativize_instance") {
    TCI t = fixtures::tci("serial");
    Signature sig = t.sig;
    sig.add({"T__", SymbolKind::relation, 1});
    sig.add({"c__a", SymbolKind::constant, 0});
    Formula phi = t.theory.at(0);
    Formula out = relativize_instance(phi, {"c__a"}, "T__");
    CHECK(out == parse_formula("exists y (T__(c__a) -> (T__(y) & R(c__a,y)))", sig));
    CHECK(classify_formula(out).contains({QuantClass::Side::sigma, 1}));
    CHECK_THROWS_AS(relativize_instance(phi, {}, "T__"), Error);
    Formula mixed = parse_formula("exists y forall z R(y,z)", sig);
    CHECK(relativize_instance(mixed, {}, "T__") == parse_formula("exists y forall z (T__(y) & (T__(z) -> R(y,z)))", sig));
  }

  TEST_CASE("rejections") {
    CHECK_THROWS_AS(compile_pi_to_sigma(fixtures::tci("sym"), 0), Error);
    CHECK_THROWS_AS(compile_pi_to_sigma(fixtures::tci("pi3"), 1), Error);
    CHECK_THROWS_AS(compile_pi_to_sigma(fixtures::schematic("cohen"), 1), Error);
    CompiledTCI c = compile_pi_to_sigma(fixtures::tci("sym"), 1);
    Structure bad;
    bad.universe = {"a"};
    bad.relations["R"] = {{"a", "a"}};
    CHECK_THROWS_AS(model_restrict(c, bad), Error);
    Structure not_sym;
    not_sym.universe = {"a", "b"};
    not_sym.relations["R"] = {{"a", "b"}};
    CHECK_THROWS_AS(model_expand(c, not_sym), Error);
  }

  TEST_CASE("fresh names avoid the input signature") {
    TCI t = fixtures::from_text(R"J({"name":"clash","signature":[{"name":"T__","kind":"relation","arity":1},
      {"name":"c__a","kind":"constant","arity":0}],"universe_symbol":"U",
      "constraints":{"U":{"carrier":["a","b"],"mode":0},"T__":{"carrier":[["a"]],"mode":0},"c__a":{"carrier":["a"],"mode":0}},
      "theory":["forall x (T__(x) -> x = c__a)"]})J");
    CompiledTCI c = compile_pi_to_sigma(t, 1);
    CHECK(c.guard == "T___");
    CHECK(c.constants.at("a") == "c___a");
    CHECK(c.output.sig.size() == t.sig.size() + 1 + 2);
    CHECK(verify_bijection(c).ok());
  }

  TEST_CASE("bijection and class contract on the corpus") {
    for (const auto& t : fixtures::finite_tcis()) {
      int n = level_for(t);
      if (n > 2) continue;
      CompiledTCI c = compile_pi_to_sigma(t, n);
      CHECK(c.output.sig.size() == t.sig.size() + 1 + t.universe_constraint().elements.size());
      CHECK_MESSAGE(classify_tci(c.output).contains({QuantClass::Side::sigma, n}), t.name);
      BijectionCheck b = verify_bijection(c);
      std::string why = t.name;
      for (const auto& f : b.failures) why += "; " + f;
      CHECK_MESSAGE(b.ok(), why);
    }
  }

  TEST_CASE("frozen compiled model counts") {
    std::map<std::string, std::size_t> expect{{"sym", 13}, {"ab", 4}, {"serial", 12}, {"pi3", 5}, {"swap", 1}};
    for (const auto& [name, count] : expect) {
      TCI t = fixtures::tci(name);
      CompiledTCI c = compile_pi_to_sigma(t, level_for(t));
      CHECK_MESSAGE(enumerate_models(c.output).size() == count, name);
    }
  }

  TEST_CASE("functions over a mode-0 universe have no expansion") {
    TCI t = fixtures::from_text(R"J({"name":"loose_fn","signature":[{"name":"F","kind":"function","arity":1}],
      "universe_symbol":"U","constraints":{"U":{"carrier":["a","b"],"mode":0},
      "F":{"carrier":[["a","a"],["a","b"],["b","a"],["b","b"]],"mode":0}},"theory":[]})J");
    CompiledTCI c = compile_pi_to_sigma(t, 1);
    auto in = enumerate_models(t);
    auto out = enumerate_models(c.output);
    CHECK(in.size() == 7);
    CHECK(out.size() == 4);
    std::size_t full = 0;
    for (const auto& m : in) {
      if (m.universe.size() == 2) {
        ++full;
        CHECK(std::count(out.begin(), out.end(), model_expand(c, m)) == 1);
      } else {
        CHECK_THROWS_AS(model_expand(c, m), Error);
      }
    }
    CHECK(full == out.size());
    CHECK(!verify_bijection(c).ok());
  }
}
