#include <doctest.h>

#include <algorithm>
#include <set>

#include "corpus.hpp"
#include "tcif/error.hpp"
#include "tcif/poset.hpp"

using namespace tcif;

namespace {

Poset poset(const std::string& name) {
  return poset_from_json(read_json_file(fixtures::corpus_dir() + "/posets/" + name + ".json"));
}

std::vector<Poset> all_posets() {
  std::vector<Poset> out;
  for (const auto& n : fixtures::names("posets")) out.push_back(poset(n));
  return out;
}

using Names = std::set<std::string>;

Names names(const Poset& P, const Subset& s) {
  auto v = names_of(P, s);
  return {v.begin(), v.end()};
}

Subset ids(const Poset& P, const Names& n) {
  Subset s;
  for (const auto& e : n) s.push_back(P.index(e));
  std::sort(s.begin(), s.end());
  return s;
}

// Straight from the definitions, over name sets and P.le only.
std::set<Names> generic_oracle(const Poset& P) {
  const auto& el = P.elements();
  std::size_t n = el.size();
  auto below = [&](const std::string& a, const std::string& b) { return P.le(P.index(a), P.index(b)); };
  std::vector<Names> all;
  for (std::size_t m = 0; m < (std::size_t{1} << n); ++m) {
    Names s;
    for (std::size_t i = 0; i < n; ++i)
      if (m >> i & 1) s.insert(el[i]);
    all.push_back(s);
  }
  std::vector<Names> dense;
  for (const auto& d : all) {
    if (d.empty()) continue;
    bool ok = true;
    for (const auto& p : el) ok = ok && std::any_of(d.begin(), d.end(), [&](const std::string& q) { return below(q, p); });
    if (ok) dense.push_back(d);
  }
  std::set<Names> out;
  for (const auto& g : all) {
    bool ok = !g.empty() || n == 0;
    for (const auto& p : g)
      for (const auto& q : el)
        if (below(p, q) && !g.count(q)) ok = false;
    for (const auto& p : g)
      for (const auto& q : g) {
        bool common = false;
        for (const auto& r : g) common = common || (below(r, p) && below(r, q));
        ok = ok && common;
      }
    for (const auto& d : dense) {
      bool meets = false;
      for (const auto& x : d) meets = meets || g.count(x);
      ok = ok && meets;
    }
    if (ok) out.insert(g);
  }
  return out;
}

std::set<Names> as_names(const Poset& P, const std::vector<Subset>& v) {
  std::set<Names> out;
  for (const auto& s : v) out.insert(names(P, s));
  return out;
}

Literal U(const char* e, bool neg = false) { return {Literal::Kind::universe, "U", {e}, neg}; }

SigmaPoset ab_poset() {
  TCI t = fixtures::tci("ab");
  std::vector<Condition> sigmas;
  for (const auto& m : enumerate_models(t)) sigmas.push_back(sigma_diagram(t, m));
  return SigmaPoset(sigmas);
}

// Explicit copy of a literal poset given by its diagrams.
Poset explicit_of(const SigmaPoset& P, std::vector<Condition>& conds) {
  std::set<Condition> all;
  for (const auto& s : P.sigmas())
    for (const auto& sub : shortlex_subsets(s)) all.insert(sub);
  conds.assign(all.begin(), all.end());
  std::vector<std::string> el;
  for (const auto& c : conds) el.push_back(condition_text(c));
  std::vector<std::pair<std::string, std::string>> le;
  for (const auto& p : conds)
    for (const auto& q : conds)
      if (is_subset(q, p)) le.emplace_back(condition_text(p), condition_text(q));
  return Poset::make("P(ab)", el, le);
}

}  // namespace

TEST_SUITE("poset") {
  TEST_CASE("closure and validation") {
    Poset c = poset("chain4");
    CHECK(c.le(c.index("p3"), c.index("p0")));
    CHECK(!c.le(c.index("p0"), c.index("p3")));
    CHECK(c.relation().size() == 10);
    CHECK_THROWS_AS(Poset::make("bad", {"a", "b"}, {{"a", "b"}, {"b", "a"}}), Error);
    CHECK_THROWS_AS(Poset::make("bad", {"a"}, {{"a", "z"}}), Error);
    CHECK_THROWS_AS(Poset::make("bad", {"a", "a"}, {}), Error);
  }

  TEST_CASE("subset properties") {
    Poset ac = poset("antichain2");
    std::size_t a = ac.index("a"), b = ac.index("b");
    CHECK(!check_subset_property(ac, {a}, SubsetProperty::dense));
    CHECK(!check_subset_property(ac, {a}, SubsetProperty::predense));
    CHECK(check_subset_property(ac, {a, b}, SubsetProperty::predense));
    Poset ch = poset("chain2");
    CHECK(check_subset_property(ch, {ch.index("a")}, SubsetProperty::upward_closed));
    CHECK(check_subset_property(ch, {ch.index("a")}, SubsetProperty::filter));
    CHECK(!check_subset_property(ch, {ch.index("b")}, SubsetProperty::filter));
    CHECK(check_subset_property(ch, {ch.index("b")}, SubsetProperty::dense));
    Poset v = poset("vee");
    CHECK(!check_subset_property(v, ids(v, {"l", "r", "top"}), SubsetProperty::filter));
  }

  TEST_CASE("atoms and g_p") {
    Poset ac = poset("antichain2");
    CHECK(is_atom(ac, ac.index("a")));
    CHECK(names(ac, g_p(ac, ac.index("a"))) == Names{"a"});
    Poset ch = poset("chain2");
    CHECK(names(ch, g_p(ch, ch.index("b"))) == Names{"a", "b"});
    Poset v = poset("vee");
    CHECK(!is_atom(v, v.index("top")));
    CHECK_THROWS_AS(g_p(v, 7), Error);
  }

  TEST_CASE("generic filter examples") {
    Poset ac = poset("antichain2");
    CHECK(as_names(ac, enumerate_generic_filters(ac)) == std::set<Names>{{"a"}, {"b"}});
    Poset ch = poset("chain2");
    CHECK(as_names(ch, enumerate_generic_filters(ch)) == std::set<Names>{{"a", "b"}});
    Poset one = poset("singleton");
    CHECK(as_names(one, enumerate_generic_filters(one)) == std::set<Names>{{"a"}});
    Poset e = poset("empty");
    CHECK(enumerate_generic_filters(e) == std::vector<Subset>{Subset{}});
    CHECK(dense_subsets(e).empty());
    CHECK(as_names(ch, dense_subsets(ch)) == std::set<Names>{{"b"}, {"a", "b"}});
  }

  TEST_CASE("frozen generic filter counts on the corpus") {
    std::map<std::string, std::size_t> expect{{"antichain2", 2}, {"antichain3", 3}, {"binary_tree", 3},
                                              {"chain2", 1},     {"chain4", 1},     {"diamond", 1},
                                              {"empty", 1},      {"singleton", 1},  {"vee", 2}};
    for (const auto& P : all_posets()) CHECK_MESSAGE(enumerate_generic_filters(P).size() == expect.at(P.name()), P.name());
  }

  TEST_CASE("generic filters agree with the definitional oracle and the minimal-element route") {
    for (const auto& P : all_posets()) {
      auto scan = enumerate_generic_filters(P);
      CHECK_MESSAGE(as_names(P, scan) == generic_oracle(P), P.name());
      CHECK(scan == generic_filters_via_minimal(P));
    }
  }

  TEST_CASE("cap") {
    std::vector<std::string> el;
    for (int i = 0; i < 17; ++i) el.push_back("e" + std::to_string(i));
    Poset big = Poset::make("big", el, {});
    CHECK_THROWS_AS(enumerate_generic_filters(big), Error);
    CHECK(generic_filters_via_minimal(big).size() == 17);
    CHECK(enumerate_generic_filters(big, 17).size() == 17);
  }

  TEST_CASE("g_p of an atom is a generic filter") {
    for (const auto& P : all_posets()) {
      auto dense = dense_subsets(P);
      for (std::size_t p = 0; p < P.size(); ++p) {
        if (!is_atom(P, p)) continue;
        Subset g = g_p(P, p);
        CHECK(check_subset_property(P, g, SubsetProperty::filter));
        for (const auto& d : dense)
          CHECK(std::any_of(d.begin(), d.end(), [&](std::size_t x) { return std::binary_search(g.begin(), g.end(), x); }));
      }
    }
  }

  TEST_CASE("build_generic_filter on explicit posets") {
    Poset t = poset("binary_tree");
    std::size_t root = t.index("e");
    CHECK(names(t, build_generic_filter(t, {}, root)) == Names{"e"});
    auto dense = dense_subsets(t);
    Subset g = build_generic_filter(t, dense, root);
    CHECK(check_subset_property(t, g, SubsetProperty::filter));
    for (const auto& d : dense)
      CHECK(std::any_of(d.begin(), d.end(), [&](std::size_t x) { return std::binary_search(g.begin(), g.end(), x); }));
    CHECK_THROWS_AS(build_generic_filter(t, {{t.index("0")}}, root), Error);
  }

  TEST_CASE("cantor schemes on explicit posets") {
    Poset t = poset("binary_tree");
    auto s = cantor_scheme(t, {}, 1, t.index("e"));
    CHECK(s.size() == 3);
    CHECK(!t.compatible(s.at("0"), s.at("1")));
    CHECK(cantor_scheme(t, {}, 0, t.index("e")).size() == 1);
    CHECK_THROWS_AS(cantor_scheme(t, {}, 3, t.index("e")), Error);
  }

  TEST_CASE("encoder examples") {
    Poset ac = poset("antichain2");
    TCI t = encode_forcing_tci(ac);
    CHECK(t.sig.size() == 3);
    CHECK(classify_tci(t).minimal() == std::vector<QuantClass>{{QuantClass::Side::pi, 2}});
    std::set<Names> gs;
    for (const auto& m : enumerate_models(t)) gs.insert(names(ac, generic_of_model(ac, m)));
    CHECK(gs == std::set<Names>{{"a"}, {"b"}});
    Poset ch = poset("chain2");
    auto ms = enumerate_models(encode_forcing_tci(ch));
    REQUIRE(ms.size() == 1);
    CHECK(names(ch, generic_of_model(ch, ms[0])) == Names{"a", "b"});
    auto em = enumerate_models(encode_forcing_tci(poset("empty")));
    REQUIRE(em.size() == 1);
    CHECK(em[0].relations.at("G").empty());
  }

  TEST_CASE("encoder models match generic filters on the corpus") {
    for (const auto& P : all_posets()) {
      if (P.size() > 6) continue;
      std::set<Names> gs;
      auto ms = enumerate_models(encode_forcing_tci(P));
      for (const auto& m : ms) gs.insert(names(P, generic_of_model(P, m)));
      CHECK(gs.size() == ms.size());
      CHECK_MESSAGE(gs == as_names(P, enumerate_generic_filters(P)), P.name());
    }
  }

  TEST_CASE("literal poset of the cover TCI") {
    SigmaPoset P = ab_poset();
    std::vector<Condition> conds;
    Poset E = explicit_of(P, conds);
    CHECK(E.size() == 9);
    CHECK(!is_atom(P, make_condition({U("a")})));
    CHECK(is_atom(P, make_condition({U("a"), U("b")})));
    Subset g = g_p(E, E.index(condition_text(make_condition({U("a"), U("b")}))));
    CHECK(g.size() == 4);
    auto at = [&](const Condition& c) { return E.index(condition_text(c)); };
    Subset below_top;
    for (const auto& c : conds)
      if (is_subset(c, make_condition({U("a"), U("b")}))) below_top.push_back(at(c));
    std::sort(below_top.begin(), below_top.end());
    CHECK(g == below_top);
    // lazy and explicit atom tests agree
    for (const auto& c : conds) CHECK(is_atom(P, c) == is_atom(E, at(c)));
    for (const auto& c : conds)
      for (const auto& d : conds) CHECK(compatible(P, c, d) == E.compatible(at(c), at(d)));
  }

  TEST_CASE("lazy filter construction and schemes on the cover TCI") {
    SigmaPoset P = ab_poset();
    CHECK(build_generic_filter(P, {U("a"), U("b")}, {}) == make_condition({U("a"), U("b")}));
    CHECK(build_generic_filter(P, {}, make_condition({U("b", true)})) == make_condition({U("b", true)}));
    auto s = cantor_scheme(P, {U("a"), U("b")}, 2, {});
    CHECK(s.size() == 7);
    CHECK(s.at("00") == make_condition({U("a", true), U("b", true)}));
    CHECK(s.at("11") == make_condition({U("a"), U("b")}));
    CHECK_THROWS_AS(cantor_scheme(P, {U("a"), U("b")}, 3, {}), Error);
  }
}
