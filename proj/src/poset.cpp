#include "tcif/poset.hpp"

#include <algorithm>
#include <cstdint>
#include <set>

#include "tcif/error.hpp"

namespace tcif {

Poset Poset::make(std::string name, std::vector<std::string> elements,
                  const std::vector<std::pair<std::string, std::string>>& le) {
  Poset P;
  P.name_ = std::move(name);
  std::sort(elements.begin(), elements.end());
  if (std::adjacent_find(elements.begin(), elements.end()) != elements.end())
    throw Error(Errc::malformed_input, "duplicate poset element");
  P.elements_ = std::move(elements);
  std::size_t n = P.size();
  P.le_.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) P.le_[i * n + i] = 1;
  for (const auto& [a, b] : le) P.le_[P.index(a) * n + P.index(b)] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (P.le_[i * n + k])
        for (std::size_t j = 0; j < n; ++j)
          if (P.le_[k * n + j]) P.le_[i * n + j] = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (P.le_[i * n + j] && P.le_[j * n + i])
        throw Error(Errc::antisymmetry, P.elements_[i] + " and " + P.elements_[j] + " are below each other");
  return P;
}

std::size_t Poset::index(const std::string& e) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), e);
  if (it == elements_.end() || *it != e) throw Error(Errc::unknown_element, "'" + e + "'");
  return static_cast<std::size_t>(it - elements_.begin());
}

bool Poset::compatible(std::size_t p, std::size_t q) const {
  for (std::size_t r = 0; r < size(); ++r)
    if (le(r, p) && le(r, q)) return true;
  return false;
}

std::vector<std::pair<std::size_t, std::size_t>> Poset::relation() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t p = 0; p < size(); ++p)
    for (std::size_t q = 0; q < size(); ++q)
      if (le(p, q)) out.emplace_back(p, q);
  return out;
}

SubsetProperty parse_subset_property(const std::string& s) {
  if (s == "dense") return SubsetProperty::dense;
  if (s == "predense") return SubsetProperty::predense;
  if (s == "upward_closed") return SubsetProperty::upward_closed;
  if (s == "filter") return SubsetProperty::filter;
  throw Error(Errc::malformed_input, "unknown subset property '" + s + "'");
}

namespace {

std::vector<char> membership(const Poset& P, const Subset& s) {
  std::vector<char> in(P.size(), 0);
  for (std::size_t i : s) {
    if (i >= P.size()) throw Error(Errc::not_in_poset, "index " + std::to_string(i));
    in[i] = 1;
  }
  return in;
}

void check_member(const Poset& P, std::size_t p) {
  if (p >= P.size()) throw Error(Errc::not_in_poset, "index " + std::to_string(p));
}

bool shortlex_less(const Subset& a, const Subset& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

// Bitmask view for the exhaustive scans.
struct Masks {
  std::vector<std::uint32_t> up, down;
};

Masks masks(const Poset& P) {
  Masks m;
  m.up.assign(P.size(), 0);
  m.down.assign(P.size(), 0);
  for (std::size_t p = 0; p < P.size(); ++p)
    for (std::size_t q = 0; q < P.size(); ++q)
      if (P.le(p, q)) {
        m.up[p] |= std::uint32_t{1} << q;
        m.down[q] |= std::uint32_t{1} << p;
      }
  return m;
}

Subset from_mask(std::uint32_t mask, std::size_t n) {
  Subset s;
  for (std::size_t i = 0; i < n; ++i)
    if (mask >> i & 1) s.push_back(i);
  return s;
}

bool mask_dense(const Masks& m, std::uint32_t s, std::size_t n) {
  for (std::size_t p = 0; p < n; ++p)
    if (!(m.down[p] & s)) return false;
  return true;
}

bool mask_filter(const Masks& m, std::uint32_t s, std::size_t n) {
  if (s == 0) return n == 0;
  for (std::size_t p = 0; p < n; ++p) {
    if (!(s >> p & 1)) continue;
    if ((m.up[p] & s) != m.up[p]) return false;
    for (std::size_t q = p + 1; q < n; ++q)
      if (s >> q & 1 && !(m.down[p] & m.down[q] & s)) return false;
  }
  return true;
}

void check_cap(const Poset& P, std::size_t cap) {
  if (P.size() > cap || P.size() > 31)
    throw Error(Errc::cap_exceeded, "poset has " + std::to_string(P.size()) + " elements, cap is " +
                                        std::to_string(std::min<std::size_t>(cap, 31)));
}

}  // namespace

bool check_subset_property(const Poset& P, const Subset& s, SubsetProperty prop) {
  auto in = membership(P, s);
  std::size_t n = P.size();
  switch (prop) {
    case SubsetProperty::dense:
      for (std::size_t p = 0; p < n; ++p) {
        bool hit = false;
        for (std::size_t q : s) hit = hit || P.le(q, p);
        if (!hit) return false;
      }
      return true;
    case SubsetProperty::predense:
      for (std::size_t p = 0; p < n; ++p) {
        bool hit = false;
        for (std::size_t q : s) hit = hit || P.compatible(q, p);
        if (!hit) return false;
      }
      return true;
    case SubsetProperty::upward_closed:
      for (std::size_t p : s)
        for (std::size_t q = 0; q < n; ++q)
          if (P.le(p, q) && !in[q]) return false;
      return true;
    case SubsetProperty::filter: {
      if (s.empty()) return n == 0;
      if (!check_subset_property(P, s, SubsetProperty::upward_closed)) return false;
      for (std::size_t p : s)
        for (std::size_t q : s) {
          bool common = false;
          for (std::size_t r : s) common = common || (P.le(r, p) && P.le(r, q));
          if (!common) return false;
        }
      return true;
    }
  }
  return false;
}

bool is_atom(const Poset& P, std::size_t p) {
  check_member(P, p);
  for (std::size_t q = 0; q < P.size(); ++q)
    for (std::size_t r = q + 1; r < P.size(); ++r)
      if (P.le(q, p) && P.le(r, p) && !P.compatible(q, r)) return false;
  return true;
}

Subset g_p(const Poset& P, std::size_t p) {
  check_member(P, p);
  Subset out;
  for (std::size_t q = 0; q < P.size(); ++q)
    if (P.compatible(p, q)) out.push_back(q);
  return out;
}

Subset upward_closure(const Poset& P, const Subset& s) {
  auto in = membership(P, s);
  Subset out;
  for (std::size_t q = 0; q < P.size(); ++q) {
    bool hit = in[q];
    for (std::size_t p : s) hit = hit || P.le(p, q);
    if (hit) out.push_back(q);
  }
  return out;
}

std::vector<std::size_t> minimal_elements(const Poset& P) {
  std::vector<std::size_t> out;
  for (std::size_t p = 0; p < P.size(); ++p) {
    bool minimal = true;
    for (std::size_t q = 0; q < P.size(); ++q) minimal = minimal && (q == p || !P.le(q, p));
    if (minimal) out.push_back(p);
  }
  return out;
}

std::vector<Subset> dense_subsets(const Poset& P, std::size_t cap) {
  check_cap(P, cap);
  std::size_t n = P.size();
  Masks m = masks(P);
  std::vector<Subset> out;
  for (std::uint32_t s = 1; s < (std::uint32_t{1} << n); ++s)
    if (mask_dense(m, s, n)) out.push_back(from_mask(s, n));
  std::sort(out.begin(), out.end(), shortlex_less);
  return out;
}

std::vector<Subset> enumerate_generic_filters(const Poset& P, std::size_t cap) {
  check_cap(P, cap);
  std::size_t n = P.size();
  Masks m = masks(P);
  std::vector<std::uint32_t> dense;
  for (std::uint32_t s = 1; s < (std::uint32_t{1} << n); ++s)
    if (mask_dense(m, s, n)) dense.push_back(s);
  std::vector<Subset> out;
  for (std::uint32_t s = 0; s < (std::uint32_t{1} << n); ++s) {
    if (!mask_filter(m, s, n)) continue;
    bool generic = std::all_of(dense.begin(), dense.end(), [&](std::uint32_t d) { return (d & s) != 0; });
    if (generic) out.push_back(from_mask(s, n));
  }
  std::sort(out.begin(), out.end(), shortlex_less);
  return out;
}

std::vector<Subset> generic_filters_via_minimal(const Poset& P) {
  if (P.size() == 0) return {Subset{}};
  std::vector<Subset> out;
  for (std::size_t p : minimal_elements(P)) out.push_back(upward_closure(P, {p}));
  std::sort(out.begin(), out.end(), shortlex_less);
  return out;
}

namespace {

std::size_t meet(const Poset& P, const Subset& d, std::size_t p, std::size_t which) {
  for (std::size_t q : d)
    if (P.le(q, p)) return q;
  throw Error(Errc::not_dense, "family member " + std::to_string(which) + " has nothing below " + P.elements()[p]);
}

}  // namespace

Subset build_generic_filter(const Poset& P, const std::vector<Subset>& family, std::size_t start) {
  check_member(P, start);
  std::size_t p = start;
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (!check_subset_property(P, family[i], SubsetProperty::dense))
      throw Error(Errc::not_dense, "family member " + std::to_string(i));
    p = meet(P, family[i], p, i);
  }
  return upward_closure(P, {p});
}

CantorScheme cantor_scheme(const Poset& P, const std::vector<Subset>& family, int depth, std::size_t start) {
  check_member(P, start);
  CantorScheme out{{"", start}};
  std::vector<std::string> level{""};
  for (int k = 0; k < depth; ++k) {
    std::vector<std::string> next;
    for (const auto& s : level) {
      std::size_t p = out.at(s);
      std::optional<std::pair<std::size_t, std::size_t>> split;
      for (std::size_t a = 0; a < P.size() && !split; ++a)
        for (std::size_t b = a + 1; b < P.size() && !split; ++b)
          if (P.le(a, p) && P.le(b, p) && !P.compatible(a, b)) split = std::pair{a, b};
      if (!split) throw Error(Errc::atom_encountered, "node '" + s + "' holds the atom " + P.elements()[p]);
      std::size_t kids[2] = {split->first, split->second};
      for (int bit = 0; bit < 2; ++bit) {
        std::size_t q = kids[bit];
        if (static_cast<std::size_t>(k) < family.size()) q = meet(P, family[k], q, static_cast<std::size_t>(k));
        std::string child = s + static_cast<char>('0' + bit);
        out[child] = q;
        next.push_back(child);
      }
    }
    level = std::move(next);
  }
  return out;
}

TCI encode_forcing_tci(const Poset& P, std::size_t cap) {
  auto dense = dense_subsets(P, cap);
  RawTCI raw;
  raw.name = "forcing(" + P.name() + ")";
  raw.universe_symbol = "U";
  raw.signature.push_back({"le", SymbolKind::relation, 2});
  raw.signature.push_back({"G", SymbolKind::relation, 1});
  RawConstraint u, le, g;
  u.mode = 1;
  le.mode = 1;
  g.mode = 0;
  for (const auto& e : P.elements()) {
    u.carrier.emplace_back(e);
    g.carrier.emplace_back(Tuple{e});
  }
  for (auto [p, q] : P.relation()) le.carrier.emplace_back(Tuple{P.elements()[p], P.elements()[q]});
  raw.constraints["U"] = u;
  raw.constraints["le"] = le;
  raw.constraints["G"] = g;
  raw.theory.push_back("forall p forall q exists r ((G(p) & G(q)) -> (G(r) & le(r,p) & le(r,q)))");
  raw.theory.push_back("forall p forall q ((le(p,q) & G(p)) -> G(q))");
  for (std::size_t i = 0; i < dense.size(); ++i) {
    std::string name = "D" + std::to_string(i + 1);
    raw.signature.push_back({name, SymbolKind::relation, 1});
    RawConstraint d;
    d.mode = 1;
    for (std::size_t x : dense[i]) d.carrier.emplace_back(Tuple{P.elements()[x]});
    raw.constraints[name] = d;
    raw.theory.push_back("exists p (G(p) & " + name + "(p))");
  }
  return validate_tci(raw);
}

Subset generic_of_model(const Poset& P, const Structure& m) {
  Subset out;
  for (const auto& t : m.relations.at("G")) out.push_back(P.index(t.at(0)));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> names_of(const Poset& P, const Subset& s) {
  std::vector<std::string> out;
  for (std::size_t i : s) out.push_back(P.elements().at(i));
  return out;
}

SigmaPoset::SigmaPoset(std::vector<Condition> sigmas) : sigmas_(std::move(sigmas)) {}

std::vector<std::size_t> SigmaPoset::containing(const Condition& p) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < sigmas_.size(); ++i)
    if (is_subset(p, sigmas_[i])) out.push_back(i);
  return out;
}

bool SigmaPoset::contains(const Condition& p) const {
  return std::any_of(sigmas_.begin(), sigmas_.end(), [&](const Condition& s) { return is_subset(p, s); });
}

std::optional<std::pair<Condition, Condition>> SigmaPoset::split(const Condition& p) const {
  auto ids = containing(p);
  if (ids.size() < 2) return std::nullopt;
  // Lowest literal on which two diagrams above p disagree.
  std::set<Literal> seen;
  for (std::size_t i : ids) seen.insert(sigmas_[i].begin(), sigmas_[i].end());
  for (const auto& l : seen) {
    if (l.negated || !seen.count(l.negate())) continue;
    Condition neg = condition_union(p, {l.negate()});
    Condition pos = condition_union(p, {l});
    if (contains(neg) && contains(pos)) return std::pair{neg, pos};
  }
  // Distinct diagrams always disagree on some literal.
  throw Error(Errc::unrealizable_diagram, "diagrams above " + condition_text(p) + " do not disagree");
}

bool compatible(const LiteralPoset& P, const Condition& p, const Condition& q) {
  Condition u = condition_union(p, q);
  return is_consistent_set(u) && P.contains(u);
}

bool is_atom(const LiteralPoset& P, const Condition& p) {
  if (!P.contains(p)) throw Error(Errc::not_in_poset, condition_text(p));
  return !P.split(p).has_value();
}

Condition meet_decides(const LiteralPoset& P, const Condition& p, const Literal& l) {
  if (std::binary_search(p.begin(), p.end(), l) || std::binary_search(p.begin(), p.end(), l.negate())) return p;
  for (const Literal& choice : {l, l.negate()}) {
    Condition q = condition_union(p, {choice});
    if (is_consistent_set(q) && P.contains(q)) return q;
  }
  throw Error(Errc::not_dense, "no extension of " + condition_text(p) + " decides " + l.text());
}

Condition build_generic_filter(const LiteralPoset& P, const std::vector<Literal>& family, const Condition& start) {
  if (!P.contains(start)) throw Error(Errc::not_in_poset, condition_text(start));
  Condition p = start;
  for (const auto& l : family) p = meet_decides(P, p, l);
  return p;
}

LiteralScheme cantor_scheme(const LiteralPoset& P, const std::vector<Literal>& family, int depth,
                            const Condition& start) {
  if (!P.contains(start)) throw Error(Errc::not_in_poset, condition_text(start));
  LiteralScheme out{{"", start}};
  std::vector<std::string> level{""};
  for (int k = 0; k < depth; ++k) {
    std::vector<std::string> next;
    for (const auto& s : level) {
      auto split = P.split(out.at(s));
      if (!split) throw Error(Errc::atom_encountered, "node '" + s + "' holds the atom " + condition_text(out.at(s)));
      Condition kids[2] = {split->first, split->second};
      for (int bit = 0; bit < 2; ++bit) {
        Condition q = kids[bit];
        if (static_cast<std::size_t>(k) < family.size()) q = meet_decides(P, q, family[static_cast<std::size_t>(k)]);
        std::string child = s + static_cast<char>('0' + bit);
        out[child] = std::move(q);
        next.push_back(child);
      }
    }
    level = std::move(next);
  }
  return out;
}

}  // namespace tcif
