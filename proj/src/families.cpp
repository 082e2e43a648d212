#include "tcif/families.hpp"

#include <algorithm>
#include <cctype>

#include "tcif/error.hpp"

namespace tcif {

std::string NatSet::text() const {
  std::string body;
  for (auto n : listed) body += (body.empty() ? "" : ",") + std::to_string(n);
  if (!cofinite) return "{" + body + "}";
  return listed.empty() ? "N" : "N\\{" + body + "}";
}

NatSet parse_natset(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  NatSet out;
  std::string inner;
  if (s == "N" || s == "omega") return NatSet::omega();
  if (s.rfind("N\\{", 0) == 0 && s.back() == '}') {
    out.cofinite = true;
    inner = s.substr(3, s.size() - 4);
  } else if (s.size() >= 2 && s.front() == '{' && s.back() == '}') {
    inner = s.substr(1, s.size() - 2);
  } else {
    throw Error(Errc::malformed_input, "expected {n,...}, N or N\\{n,...}, got '" + text + "'");
  }
  std::size_t i = 0;
  while (i < inner.size()) {
    std::size_t j = inner.find(',', i);
    if (j == std::string::npos) j = inner.size();
    std::string tok = inner.substr(i, j - i);
    if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw Error(Errc::malformed_input, "bad natural '" + tok + "'");
    out.listed.insert(std::stoull(tok));
    i = j + 1;
  }
  return out;
}

Literal SchematicFamily::literal(std::uint64_t n, bool negated) const {
  return {Literal::Kind::universe, universe_, {std::to_string(n)}, negated};
}

std::optional<std::uint64_t> SchematicFamily::index_of(const Literal& l) const {
  if (l.kind != Literal::Kind::universe || l.symbol != universe_ || l.args.size() != 1) return std::nullopt;
  const std::string& tag = l.args[0];
  if (tag.empty() || tag.size() > 18 || (tag.size() > 1 && tag[0] == '0')) return std::nullopt;
  if (!std::all_of(tag.begin(), tag.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    return std::nullopt;
  return std::stoull(tag);
}

bool SchematicFamily::well_formed(const Condition& p) const {
  for (const auto& l : p)
    if (!index_of(l)) return false;
  return is_consistent_set(p);
}

bool SchematicFamily::satisfied_by(const NatSet& m, const Condition& p) const {
  for (const auto& l : p) {
    auto n = index_of(l);
    if (!n || m.contains(*n) == l.negated) return false;
  }
  return true;
}

namespace {

class EmptyPoset : public LiteralPoset {
 public:
  bool contains(const Condition&) const override { return false; }
  std::optional<std::pair<Condition, Condition>> split(const Condition&) const override { return std::nullopt; }
};

std::uint64_t lowest_unused(const SchematicFamily& f, const Condition& p) {
  std::set<std::uint64_t> used;
  for (const auto& l : p) used.insert(*f.index_of(l));
  std::uint64_t n = 0;
  while (used.count(n)) ++n;
  return n;
}

// Every subset of N is a model; no condition is an atom.
class Cohen : public SchematicFamily {
  class Stage : public LiteralPoset {
   public:
    explicit Stage(const Cohen& f) : f_(f) {}
    bool contains(const Condition& p) const override { return f_.well_formed(p); }
    std::optional<std::pair<Condition, Condition>> split(const Condition& p) const override {
      std::uint64_t n = lowest_unused(f_, p);
      return std::pair{condition_union(p, {f_.literal(n, true)}), condition_union(p, {f_.literal(n)})};
    }

   private:
    const Cohen& f_;
  };

 public:
  using SchematicFamily::SchematicFamily;
  std::string name() const override { return "cohen"; }
  const LiteralPoset& stage(int) const override { return stage_; }
  int fixpoint() const override { return 0; }
  std::vector<Condition> minimal_atoms(int) const override { return {}; }
  std::string atoms_note(int) const override { return "none: every condition leaves some index undecided"; }
  std::string survivors_note(int) const override { return "all finite consistent sets of U-literals"; }
  bool is_model(const NatSet&) const override { return true; }
  std::optional<int> determination_rank(const NatSet&) const override { return std::nullopt; }
  std::vector<NatSet> window_models() const override { return {}; }
  std::vector<Condition> truncated_sigmas() const override {
    std::vector<Condition> out;
    auto n = static_cast<std::uint64_t>(cutoff());
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      Condition c;
      for (std::uint64_t i = 0; i < n; ++i) c.push_back(literal(i, !(mask >> i & 1)));
      out.push_back(make_condition(c));
    }
    return out;
  }

 private:
  Stage stage_{*this};
};

// Models: the initial segments {0..n-1} and N itself.
class InitialSegment : public SchematicFamily {
  struct Shape {
    std::optional<std::uint64_t> max_pos, min_neg;
  };

  Shape shape(const Condition& p) const {
    Shape s;
    for (const auto& l : p) {
      std::uint64_t n = *index_of(l);
      if (l.negated) s.min_neg = s.min_neg ? std::min(*s.min_neg, n) : n;
      else s.max_pos = s.max_pos ? std::max(*s.max_pos, n) : n;
    }
    return s;
  }

  class Stage0 : public LiteralPoset {
   public:
    explicit Stage0(const InitialSegment& f) : f_(f) {}
    bool contains(const Condition& p) const override {
      if (!f_.well_formed(p)) return false;
      Shape s = f_.shape(p);
      return !s.max_pos || !s.min_neg || *s.max_pos < *s.min_neg;
    }
    std::optional<std::pair<Condition, Condition>> split(const Condition& p) const override {
      Shape s = f_.shape(p);
      std::uint64_t next = s.max_pos ? *s.max_pos + 1 : 0;
      if (s.min_neg && *s.min_neg == next) return std::nullopt;
      return std::pair{condition_union(p, {f_.literal(next, true)}), condition_union(p, {f_.literal(next)})};
    }

   private:
    const InitialSegment& f_;
  };

  // Only the diagram of N survives stage 0.
  class Stage1 : public LiteralPoset {
   public:
    explicit Stage1(const InitialSegment& f) : f_(f) {}
    bool contains(const Condition& p) const override {
      return f_.well_formed(p) && std::none_of(p.begin(), p.end(), [](const Literal& l) { return l.negated; });
    }
    std::optional<std::pair<Condition, Condition>> split(const Condition&) const override { return std::nullopt; }

   private:
    const InitialSegment& f_;
  };

 public:
  using SchematicFamily::SchematicFamily;
  std::string name() const override { return "initial_segment"; }

  const LiteralPoset& stage(int alpha) const override {
    if (alpha == 0) return stage0_;
    if (alpha == 1) return stage1_;
    return empty_;
  }
  int fixpoint() const override { return 2; }

  std::vector<Condition> minimal_atoms(int alpha) const override {
    std::vector<Condition> out;
    if (alpha == 0) {
      out.push_back({literal(0, true)});
      for (std::uint64_t n = 1; n < static_cast<std::uint64_t>(cutoff()); ++n)
        out.push_back(make_condition({literal(n - 1), literal(n, true)}));
    } else if (alpha == 1) {
      out.push_back({});
    }
    return out;
  }
  std::string atoms_note(int alpha) const override {
    if (alpha == 0) return "conditions containing ~U(0) or a pair U(n-1), ~U(n)";
    if (alpha == 1) return "every condition, since only the diagram of N survives";
    return "none";
  }
  std::string survivors_note(int alpha) const override {
    if (alpha == 0) return "consistent sets with every positive index below every negative index";
    if (alpha == 1) return "finite sets of positive U-literals";
    return "empty";
  }

  bool is_model(const NatSet& m) const override {
    if (m.cofinite) return m.listed.empty();
    return m.listed.empty() || *m.listed.rbegin() + 1 == m.listed.size();
  }
  std::optional<int> determination_rank(const NatSet& m) const override {
    if (!is_model(m)) throw Error(Errc::not_a_model, m.text() + " is not an initial segment of N");
    return m.cofinite ? 1 : 0;
  }
  std::vector<NatSet> window_models() const override {
    std::vector<NatSet> out;
    for (std::uint64_t n = 0; n < static_cast<std::uint64_t>(cutoff()); ++n) {
      std::set<std::uint64_t> s;
      for (std::uint64_t i = 0; i < n; ++i) s.insert(i);
      out.push_back(NatSet::finite(s));
    }
    out.push_back(NatSet::omega());
    return out;
  }
  std::vector<Condition> truncated_sigmas() const override {
    std::vector<Condition> out;
    auto c = static_cast<std::uint64_t>(cutoff());
    for (std::uint64_t n = 0; n <= c; ++n) {
      Condition d;
      for (std::uint64_t i = 0; i < c; ++i) d.push_back(literal(i, i >= n));
      out.push_back(make_condition(d));
    }
    return out;
  }

 private:
  Stage0 stage0_{*this};
  Stage1 stage1_{*this};
  EmptyPoset empty_;
};

}  // namespace

std::unique_ptr<SchematicFamily> make_family(const TCI& t) {
  if (!t.is_schematic()) throw Error(Errc::schematic_unsupported, t.name + " has a finite carrier");
  const Schematic& s = *t.universe_constraint().schematic;
  if (s.cutoff < 2) throw Error(Errc::schematic_unsupported, "cutoff must be at least 2");
  if (s.family == "cohen") return std::make_unique<Cohen>(t.universe, s.cutoff);
  if (s.family == "initial_segment") return std::make_unique<InitialSegment>(t.universe, s.cutoff);
  throw Error(Errc::schematic_unsupported, "unknown family '" + s.family + "'");
}

}  // namespace tcif
