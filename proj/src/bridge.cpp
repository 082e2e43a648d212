#include "tcif/bridge.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "tcif/error.hpp"

namespace tcif {

namespace {

bool shortlex_less(const Condition& a, const Condition& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

std::vector<Condition> all_sigmas(const TCI& t) {
  std::vector<Condition> out;
  for (const auto& m : enumerate_models(t)) out.push_back(sigma_diagram(t, m));
  return out;
}

// How many of the diagrams contain each condition.
std::map<Condition, std::size_t> containment_counts(const std::vector<Condition>& sigmas) {
  std::map<Condition, std::size_t> counts;
  for (const auto& s : sigmas)
    for (auto& sub : shortlex_subsets(s)) ++counts[std::move(sub)];
  return counts;
}

std::vector<Condition> minimal_among(const std::set<Condition>& atoms) {
  std::vector<Condition> out;
  for (const auto& p : atoms) {
    bool minimal = true;
    for (std::size_t i = 0; i < p.size() && minimal; ++i) {
      Condition q = p;
      q.erase(q.begin() + static_cast<std::ptrdiff_t>(i));
      minimal = !atoms.count(q);
    }
    if (minimal) out.push_back(p);
  }
  std::sort(out.begin(), out.end(), shortlex_less);
  return out;
}

bool contains_any(const Condition& x, const std::vector<Condition>& qs) {
  return std::any_of(qs.begin(), qs.end(), [&](const Condition& q) { return is_subset(q, x); });
}

// Surviving diagrams at each stage up to and including the fixpoint.
std::vector<std::vector<Condition>> finite_stages(const TCI& t, int stage_cap) {
  std::vector<std::vector<Condition>> out{all_sigmas(t)};
  for (int alpha = 0;; ++alpha) {
    if (alpha >= stage_cap) throw Error(Errc::stage_cap, "no fixpoint within " + std::to_string(stage_cap) + " stages");
    auto atoms = minimal_atoms_of(out.back());
    if (atoms.empty()) return out;
    std::vector<Condition> next;
    for (const auto& s : out.back())
      if (!contains_any(s, atoms)) next.push_back(s);
    out.push_back(std::move(next));
  }
}

bool decides(const Condition& p, const Literal& l) {
  return std::binary_search(p.begin(), p.end(), l) || std::binary_search(p.begin(), p.end(), l.negate());
}

std::string structure_text(const TCI& t, const Structure& m) { return condition_text(sigma_diagram(t, m)); }

}  // namespace

bool certifies(const TCI& t, const Condition& x, const Condition& p, const std::vector<Condition>& forbidden) {
  if (t.is_schematic()) throw Error(Errc::schematic_unsupported, "diagrams of " + t.name + " are infinite");
  recover_model(t, x);
  return is_subset(p, x) && !contains_any(x, forbidden);
}

std::vector<Condition> surviving_sigmas(const TCI& t, const std::vector<Condition>& forbidden) {
  if (t.is_schematic()) throw Error(Errc::schematic_unsupported, "diagrams of " + t.name + " are infinite");
  std::vector<Condition> out;
  for (auto& s : all_sigmas(t))
    if (!contains_any(s, forbidden)) out.push_back(std::move(s));
  return out;
}

std::vector<Condition> conditions_of(const std::vector<Condition>& sigmas) {
  std::vector<Condition> out;
  for (auto& [c, n] : containment_counts(sigmas)) out.push_back(c);
  std::sort(out.begin(), out.end(), shortlex_less);
  return out;
}

std::vector<Condition> build_conditions(const TCI& t, const std::vector<Condition>& forbidden) {
  return conditions_of(surviving_sigmas(t, forbidden));
}

std::vector<Condition> atoms_of(const std::vector<Condition>& sigmas) {
  std::vector<Condition> out;
  for (auto& [c, n] : containment_counts(sigmas))
    if (n == 1) out.push_back(c);
  std::sort(out.begin(), out.end(), shortlex_less);
  return out;
}

std::vector<Condition> minimal_atoms_of(const std::vector<Condition>& sigmas) {
  std::set<Condition> atoms;
  for (auto& [c, n] : containment_counts(sigmas))
    if (n == 1) atoms.insert(c);
  return minimal_among(atoms);
}

Poset poset_of_conditions(const std::string& name, const std::vector<Condition>& conds) {
  std::vector<std::string> el;
  std::vector<std::pair<std::string, std::string>> le;
  for (const auto& c : conds) el.push_back(condition_text(c));
  for (const auto& p : conds)
    for (const auto& q : conds)
      if (p != q && is_subset(q, p)) le.emplace_back(condition_text(p), condition_text(q));
  return Poset::make(name, el, le);
}

DerivativeTrace compute_derivative(const TCI& t, int stage_cap) {
  DerivativeTrace tr;
  if (t.is_schematic()) {
    auto fam = make_family(t);
    if (fam->fixpoint() >= stage_cap) throw Error(Errc::stage_cap, "fixpoint beyond stage cap");
    for (int alpha = 0; alpha <= fam->fixpoint(); ++alpha) {
      Stage s;
      s.index = alpha;
      s.minimal_atoms = fam->minimal_atoms(alpha);
      s.atoms_note = fam->atoms_note(alpha);
      s.survivors_note = fam->survivors_note(alpha);
      tr.stages.push_back(std::move(s));
    }
    tr.fixpoint = fam->fixpoint();
    tr.top_empty = !fam->stage(tr.fixpoint).contains({});
    return tr;
  }
  auto stages = finite_stages(t, stage_cap);
  for (std::size_t alpha = 0; alpha < stages.size(); ++alpha) {
    Stage s;
    s.index = static_cast<int>(alpha);
    auto counts = containment_counts(stages[alpha]);
    s.diagrams = stages[alpha].size();
    s.conditions = counts.size();
    s.atoms = static_cast<std::size_t>(
        std::count_if(counts.begin(), counts.end(), [](const auto& kv) { return kv.second == 1; }));
    s.minimal_atoms = minimal_atoms_of(stages[alpha]);
    s.atoms_note = "conditions inside exactly one surviving diagram";
    s.survivors_note = "subsets of the surviving diagrams";
    tr.stages.push_back(std::move(s));
  }
  tr.fixpoint = static_cast<int>(stages.size()) - 1;
  tr.top_empty = stages.back().empty();
  return tr;
}

std::vector<DeterminedModel> finitely_determined_models(const TCI& t) {
  std::vector<DeterminedModel> out;
  if (t.is_schematic()) {
    auto fam = make_family(t);
    auto models = fam->window_models();
    for (const auto& p : fam->minimal_atoms(0)) {
      DeterminedModel d;
      d.atom = p;
      for (const auto& m : models)
        if (fam->satisfied_by(m, p)) d.branch = m;
      out.push_back(std::move(d));
    }
    return out;
  }
  auto sigmas = all_sigmas(t);
  for (const auto& p : minimal_atoms_of(sigmas)) {
    DeterminedModel d;
    d.atom = p;
    for (const auto& s : sigmas)
      if (is_subset(p, s)) d.model = recover_model(t, s);
    out.push_back(std::move(d));
  }
  return out;
}

std::optional<int> determination_rank(const TCI& t, const Structure& m) {
  if (t.is_schematic()) throw Error(Errc::schematic_unsupported, "give a branch of " + t.name);
  if (!models_star(m, t)) throw Error(Errc::not_a_model, "structure is not a model of " + t.name);
  Condition x = sigma_diagram(t, m);
  auto stages = finite_stages(t, default_stage_cap);
  for (std::size_t alpha = 0; alpha < stages.size(); ++alpha)
    if (contains_any(x, minimal_atoms_of(stages[alpha]))) return static_cast<int>(alpha);
  return std::nullopt;
}

std::optional<int> determination_rank(const TCI& t, const NatSet& branch) {
  return make_family(t)->determination_rank(branch);
}

std::shared_ptr<const LiteralPoset> literal_poset(const TCI& t) {
  if (t.is_schematic()) {
    std::shared_ptr<SchematicFamily> fam(make_family(t));
    return std::shared_ptr<const LiteralPoset>(fam, &fam->stage(0));
  }
  return std::make_shared<SigmaPoset>(all_sigmas(t));
}

std::vector<Literal> decision_family(const TCI& t, std::size_t length) {
  std::vector<Literal> out;
  if (t.is_schematic()) {
    auto fam = make_family(t);
    for (std::size_t i = 0; i < length; ++i) out.push_back(fam->literal(i));
    return out;
  }
  for (const auto& e : t.universe_constraint().elements) {
    if (out.size() == length) break;
    out.push_back({Literal::Kind::universe, t.universe, {e}, false});
  }
  return out;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::empty: return "EMPTY";
    case Verdict::singleton_v: return "SINGLETON_V";
    case Verdict::continuum: return "CONTINUUM";
  }
  return "?";
}

std::vector<Condition> window_conditions(const SchematicFamily& f, int window) {
  std::vector<Condition> out{{}};
  for (int i = 0; i < window; ++i) {
    std::vector<Condition> next;
    for (const auto& c : out) {
      next.push_back(c);
      next.push_back(condition_union(c, {f.literal(static_cast<std::uint64_t>(i))}));
      next.push_back(condition_union(c, {f.literal(static_cast<std::uint64_t>(i), true)}));
    }
    out = std::move(next);
  }
  std::sort(out.begin(), out.end(), shortlex_less);
  return out;
}

TrichotomyResult classify_trichotomy(const TCI& t, int split_window, int scheme_depth) {
  TrichotomyResult r;
  if (!t.is_schematic()) {
    auto models = enumerate_models(t);
    r.model_count = models.size();
    r.trace = compute_derivative(t);
    if (models.empty()) {
      r.verdict = Verdict::empty;
      return r;
    }
    if (r.trace.top_empty) {
      r.verdict = Verdict::singleton_v;
      for (const auto& m : models) r.ranks.push_back({structure_text(t, m), determination_rank(t, m)});
      return r;
    }
    // Unreachable for finite carriers.
    r.verdict = Verdict::continuum;
    return r;
  }

  auto fam = make_family(t);
  r.trace = compute_derivative(t);
  if (r.trace.top_empty) {
    r.verdict = Verdict::singleton_v;
    for (const auto& m : fam->window_models()) r.ranks.push_back({m.text(), fam->determination_rank(m)});
    return r;
  }
  r.verdict = Verdict::continuum;
  const LiteralPoset& top = fam->stage(r.trace.fixpoint);
  r.split_window = split_window;
  for (const auto& p : window_conditions(*fam, split_window)) {
    if (!top.contains(p)) continue;
    auto s = top.split(p);
    if (!s || !is_subset(p, s->first) || !is_subset(p, s->second) || !top.contains(s->first) ||
        !top.contains(s->second) || compatible(top, s->first, s->second))
      throw Error(Errc::atom_encountered, "no splitting witness for " + condition_text(p));
    ++r.split_checked;
  }
  auto family = decision_family(t, static_cast<std::size_t>(scheme_depth));
  r.scheme = cantor_scheme(top, family, scheme_depth, {});
  std::vector<const Condition*> leaves;
  for (const auto& [key, c] : r.scheme)
    if (key.size() == static_cast<std::size_t>(scheme_depth)) leaves.push_back(&c);
  r.scheme_leaves = leaves.size();
  r.leaves_incompatible = true;
  for (std::size_t i = 0; i < leaves.size() && r.leaves_incompatible; ++i)
    for (std::size_t j = i + 1; j < leaves.size(); ++j)
      if (compatible(top, *leaves[i], *leaves[j])) {
        r.leaves_incompatible = false;
        break;
      }
  r.leaves_meet_family = std::all_of(leaves.begin(), leaves.end(), [&](const Condition* c) {
    return std::all_of(family.begin(), family.end(), [&](const Literal& l) { return decides(*c, l); });
  });
  return r;
}

WitnessResult witness_map(const TCI& t, const TCI& fallback, std::size_t cap) {
  QuantClass pi2{QuantClass::Side::pi, 2};
  if (!classify_tci(t).contains(pi2)) throw Error(Errc::wrong_class, t.name + " is not " + class_name(pi2));
  WitnessResult w;
  if (!is_consistent(t)) {
    w.branch = "inconsistent";
    w.tci = fallback;
    w.certificate = "no model of " + t.name;
    return w;
  }
  DerivativeTrace tr = compute_derivative(t);
  if (tr.top_empty) {
    w.branch = "empty_top";
    w.tci = encode_forcing_tci(Poset::make("empty", {}, {}), cap);
    w.certificate = "derivative reaches the empty poset at stage " + std::to_string(tr.fixpoint);
    return w;
  }
  std::string top_name = "P(" + t.name + ")" + (tr.fixpoint ? "^(" + std::to_string(tr.fixpoint) + ")" : "");
  if (!t.is_schematic()) {
    auto stages = finite_stages(t, default_stage_cap);
    auto conds = conditions_of(stages.back());
    if (conds.size() <= cap) {
      w.branch = "finite_top";
      w.tci = encode_forcing_tci(poset_of_conditions(top_name, conds), cap);
      w.certificate = std::to_string(conds.size()) + " conditions in the top poset";
      return w;
    }
  }
  TrichotomyResult r = classify_trichotomy(t);
  w.branch = "symbolic_top";
  w.handle = "forcing(" + top_name + ")";
  w.certificate = "top poset at stage " + std::to_string(tr.fixpoint) + " is atomless: " +
                  std::to_string(r.split_checked) + " conditions over indices below " + std::to_string(r.split_window) +
                  " split; Cantor scheme with " + std::to_string(r.scheme_leaves) + " pairwise incompatible leaves";
  return w;
}

GenericCheck generic_model_check(const TCI& t, std::size_t cap) {
  if (t.is_schematic()) throw Error(Errc::schematic_unsupported, t.name + " has infinitely many conditions");
  GenericCheck g;
  auto models = enumerate_models(t);
  g.models = models.size();
  std::vector<Condition> sigmas;
  for (const auto& m : models) sigmas.push_back(sigma_diagram(t, m));
  auto conds = conditions_of(sigmas);
  g.conditions = conds.size();
  std::set<Condition> P(conds.begin(), conds.end());

  std::vector<std::vector<Condition>> filters;
  if (conds.empty()) {
    g.route = "scan";  // the lone filter of the empty poset is empty and names no model
  } else if (conds.size() <= cap) {
    g.route = "scan";
    Poset E = poset_of_conditions("P(" + t.name + ")", conds);
    std::map<std::string, Condition> by_name;
    for (const auto& c : conds) by_name[condition_text(c)] = c;
    for (const auto& f : enumerate_generic_filters(E, cap)) {
      std::vector<Condition> members;
      for (const auto& n : names_of(E, f)) members.push_back(by_name.at(n));
      filters.push_back(std::move(members));
    }
  } else {
    g.route = "minimal";
    auto alphabet = build_literal_alphabet(t);
    for (const auto& p : conds) {
      bool minimal = std::none_of(alphabet.begin(), alphabet.end(), [&](const Literal& l) {
        return !std::binary_search(p.begin(), p.end(), l) && P.count(condition_union(p, {l}));
      });
      if (!minimal) continue;
      std::vector<Condition> members;
      for (const auto& q : conds)
        if (is_subset(q, p)) members.push_back(q);
      filters.push_back(std::move(members));
    }
  }

  std::vector<std::size_t> hits(models.size(), 0);
  for (std::size_t i = 0; i < filters.size(); ++i) {
    const auto& f = filters[i];
    FilterModel fm;
    fm.filter_size = f.size();
    for (const auto& p : f) fm.generator = condition_union(fm.generator, p);
    if (!is_consistent_set(fm.generator)) g.failures.push_back("filter " + std::to_string(i) + ": union is inconsistent");
    for (std::size_t k = 0; k < sigmas.size(); ++k)
      if (sigmas[k] == fm.generator) fm.model_index = k;
    if (!fm.model_index) g.failures.push_back("filter " + std::to_string(i) + ": union is not a model diagram");
    else ++hits[*fm.model_index];
    std::vector<Condition> below;
    for (const auto& q : conds)
      if (is_subset(q, fm.generator)) below.push_back(q);
    std::vector<Condition> sorted = f;
    std::sort(sorted.begin(), sorted.end(), shortlex_less);
    if (sorted != below) g.failures.push_back("filter " + std::to_string(i) + ": not recovered from its union");
    g.filters.push_back(std::move(fm));
  }
  for (std::size_t k = 0; k < hits.size(); ++k)
    if (hits[k] != 1) g.failures.push_back("model " + std::to_string(k) + " has " + std::to_string(hits[k]) + " filters");
  return g;
}

TruncationCheck truncation_check(const SchematicFamily& f) {
  TruncationCheck out;
  SigmaPoset trunc(f.truncated_sigmas());
  const LiteralPoset& lazy = f.stage(0);
  for (const auto& p : window_conditions(f, f.cutoff() - 1)) {
    ++out.conditions;
    bool in_lazy = lazy.contains(p), in_trunc = trunc.contains(p);
    if (in_lazy != in_trunc) {
      out.failures.push_back("membership of " + condition_text(p));
      continue;
    }
    if (!in_lazy) continue;
    auto split = lazy.split(p);
    bool trunc_atom = trunc.containing(p).size() == 1;
    if (split.has_value() == trunc_atom) {
      out.failures.push_back("atom status of " + condition_text(p));
      continue;
    }
    if (split && (!trunc.contains(split->first) || !trunc.contains(split->second) ||
                  compatible(trunc, split->first, split->second)))
      out.failures.push_back("splitting witness of " + condition_text(p));
  }
  for (const auto& a : f.minimal_atoms(0)) {
    bool ok = trunc.containing(a).size() == 1;
    for (std::size_t i = 0; i < a.size() && ok; ++i) {
      Condition q = a;
      q.erase(q.begin() + static_cast<std::ptrdiff_t>(i));
      ok = trunc.containing(q).size() > 1;
    }
    if (!ok) out.failures.push_back("minimal atom " + condition_text(a));
  }
  return out;
}

}  // namespace tcif
