#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tcif/families.hpp"
#include "tcif/poset.hpp"
#include "tcif/tci.hpp"

namespace tcif {

// x is the diagram of a model, p is inside x, and x contains no forbidden condition.
bool certifies(const TCI& t, const Condition& x, const Condition& p, const std::vector<Condition>& forbidden);

// Diagrams of models that avoid every forbidden condition, in enumeration order.
std::vector<Condition> surviving_sigmas(const TCI& t, const std::vector<Condition>& forbidden);
// All subsets of the given diagrams, shortlex.
std::vector<Condition> conditions_of(const std::vector<Condition>& sigmas);
std::vector<Condition> build_conditions(const TCI& t, const std::vector<Condition>& forbidden = {});

// Conditions lying in exactly one diagram, and the minimal ones among them.
std::vector<Condition> atoms_of(const std::vector<Condition>& sigmas);
std::vector<Condition> minimal_atoms_of(const std::vector<Condition>& sigmas);

Poset poset_of_conditions(const std::string& name, const std::vector<Condition>& conds);

struct Stage {
  int index = 0;
  std::optional<std::size_t> diagrams;    // surviving diagrams, finite case
  std::optional<std::size_t> conditions;  // |P^(alpha)|, finite case
  std::optional<std::size_t> atoms;       // finite case
  std::vector<Condition> minimal_atoms;   // schematic: only those inside the cutoff window
  std::string atoms_note;
  std::string survivors_note;
};

struct DerivativeTrace {
  std::vector<Stage> stages;  // 0 .. fixpoint
  int fixpoint = 0;
  bool top_empty = true;
};

inline constexpr int default_stage_cap = 64;
DerivativeTrace compute_derivative(const TCI& t, int stage_cap = default_stage_cap);

struct DeterminedModel {
  Condition atom;
  std::optional<Structure> model;  // finite TCIs
  std::optional<NatSet> branch;    // schematic families
};
std::vector<DeterminedModel> finitely_determined_models(const TCI& t);

std::optional<int> determination_rank(const TCI& t, const Structure& m);
std::optional<int> determination_rank(const TCI& t, const NatSet& branch);

// Stage-0 poset as a lazy literal poset, and the "decides U(e)" family over the carrier.
std::shared_ptr<const LiteralPoset> literal_poset(const TCI& t);
std::vector<Literal> decision_family(const TCI& t, std::size_t length);

enum class Verdict { empty, singleton_v, continuum };
std::string verdict_name(Verdict v);

struct RankedModel {
  std::string model;
  std::optional<int> rank;
};

struct TrichotomyResult {
  Verdict verdict = Verdict::empty;
  DerivativeTrace trace;
  std::size_t model_count = 0;             // finite TCIs
  std::vector<RankedModel> ranks;          // singleton_v
  int split_window = 0;                    // continuum: conditions over indices < window all split
  std::size_t split_checked = 0;
  LiteralScheme scheme;                    // continuum
  std::size_t scheme_leaves = 0;
  bool leaves_incompatible = false;
  bool leaves_meet_family = false;
};

inline constexpr int default_split_window = 6;
inline constexpr int default_scheme_depth = 10;
TrichotomyResult classify_trichotomy(const TCI& t, int split_window = default_split_window,
                                     int scheme_depth = default_scheme_depth);

struct WitnessResult {
  std::string branch;  // "inconsistent", "empty_top", "finite_top", "symbolic_top"
  std::optional<TCI> tci;
  std::optional<std::string> handle;
  std::string certificate;
};
WitnessResult witness_map(const TCI& t, const TCI& fallback, std::size_t cap = default_poset_cap);

struct FilterModel {
  std::size_t filter_size = 0;
  Condition generator;  // the union of the filter
  std::optional<std::size_t> model_index;
};

struct GenericCheck {
  std::string route;  // "scan" or "minimal"
  std::size_t conditions = 0;
  std::size_t models = 0;
  std::vector<FilterModel> filters;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty() && filters.size() == models; }
};
GenericCheck generic_model_check(const TCI& t, std::size_t cap = default_poset_cap);

// Stage-0 analytic oracles against brute force over truncated diagrams, on
// every condition whose indices are at most cutoff - 2.
struct TruncationCheck {
  std::size_t conditions = 0;
  std::vector<std::string> failures;
};
TruncationCheck truncation_check(const SchematicFamily& f);

// Consistent conditions over indices below `window`, shortlex.
std::vector<Condition> window_conditions(const SchematicFamily& f, int window);

}  // namespace tcif
