#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tcif/tci.hpp"

namespace tcif {

// Finite partial order. le(p, q) means p <= q, i.e. p is the stronger condition.
class Poset {
 public:
  // Closes `le` reflexively and transitively; rejects antisymmetry violations.
  static Poset make(std::string name, std::vector<std::string> elements,
                    const std::vector<std::pair<std::string, std::string>>& le);

  const std::string& name() const { return name_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<std::string>& elements() const { return elements_; }
  std::size_t index(const std::string& e) const;
  bool le(std::size_t p, std::size_t q) const { return le_[p * size() + q]; }
  bool compatible(std::size_t p, std::size_t q) const;
  // Every pair (p, q) with p <= q.
  std::vector<std::pair<std::size_t, std::size_t>> relation() const;

 private:
  std::string name_;
  std::vector<std::string> elements_;
  std::vector<char> le_;
};

// Sorted element indices.
using Subset = std::vector<std::size_t>;

enum class SubsetProperty { dense, predense, upward_closed, filter };
SubsetProperty parse_subset_property(const std::string& s);

bool check_subset_property(const Poset& P, const Subset& s, SubsetProperty prop);
bool is_atom(const Poset& P, std::size_t p);
Subset g_p(const Poset& P, std::size_t p);
Subset upward_closure(const Poset& P, const Subset& s);
std::vector<std::size_t> minimal_elements(const Poset& P);

inline constexpr std::size_t default_poset_cap = 16;

// Nonempty dense subsets, shortlex over indices.
std::vector<Subset> dense_subsets(const Poset& P, std::size_t cap = default_poset_cap);
// Filters meeting every dense subset, found by scanning all subsets.
std::vector<Subset> enumerate_generic_filters(const Poset& P, std::size_t cap = default_poset_cap);
// Same set of filters via the principal filters of minimal elements; no cap.
std::vector<Subset> generic_filters_via_minimal(const Poset& P);

Subset build_generic_filter(const Poset& P, const std::vector<Subset>& family, std::size_t start);

using CantorScheme = std::map<std::string, std::size_t>;
CantorScheme cantor_scheme(const Poset& P, const std::vector<Subset>& family, int depth, std::size_t start);

TCI encode_forcing_tci(const Poset& P, std::size_t cap = default_poset_cap);
Subset generic_of_model(const Poset& P, const Structure& m);

std::vector<std::string> names_of(const Poset& P, const Subset& s);

// Conditions are finite consistent literal sets ordered by reverse inclusion;
// membership is downward closed, so compatibility is membership of the union.
class LiteralPoset {
 public:
  virtual ~LiteralPoset() = default;
  virtual bool contains(const Condition& p) const = 0;
  // Two incompatible extensions of p, branch 0 first; nullopt when p is an atom.
  virtual std::optional<std::pair<Condition, Condition>> split(const Condition& p) const = 0;
};

// P = finite subsets of the listed diagrams.
class SigmaPoset : public LiteralPoset {
 public:
  explicit SigmaPoset(std::vector<Condition> sigmas);
  bool contains(const Condition& p) const override;
  std::optional<std::pair<Condition, Condition>> split(const Condition& p) const override;
  const std::vector<Condition>& sigmas() const { return sigmas_; }
  std::vector<std::size_t> containing(const Condition& p) const;

 private:
  std::vector<Condition> sigmas_;
};

bool compatible(const LiteralPoset& P, const Condition& p, const Condition& q);
bool is_atom(const LiteralPoset& P, const Condition& p);

// A lazy dense family: the n-th member is the set of conditions deciding family[n].
Condition meet_decides(const LiteralPoset& P, const Condition& p, const Literal& l);
Condition build_generic_filter(const LiteralPoset& P, const std::vector<Literal>& family, const Condition& start);

using LiteralScheme = std::map<std::string, Condition>;
LiteralScheme cantor_scheme(const LiteralPoset& P, const std::vector<Literal>& family, int depth,
                            const Condition& start);

}  // namespace tcif
