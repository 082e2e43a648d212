#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tcif/poset.hpp"
#include "tcif/tci.hpp"

namespace tcif {

// Finite or cofinite set of naturals; `listed` holds members (finite) or non-members (cofinite).
struct NatSet {
  bool cofinite = false;
  std::set<std::uint64_t> listed;

  static NatSet finite(std::set<std::uint64_t> s) { return {false, std::move(s)}; }
  static NatSet omega() { return {true, {}}; }
  bool contains(std::uint64_t n) const { return cofinite != (listed.count(n) > 0); }
  std::string text() const;

  bool operator==(const NatSet&) const = default;
};

NatSet parse_natset(const std::string& text);

// Infinite-carrier TCI over universe elements "0", "1", ...; every answer comes
// from an analytic description, checked against finite truncations in tests.
class SchematicFamily {
 public:
  SchematicFamily(std::string universe, int cutoff) : universe_(std::move(universe)), cutoff_(cutoff) {}
  virtual ~SchematicFamily() = default;

  virtual std::string name() const = 0;
  const std::string& universe() const { return universe_; }
  int cutoff() const { return cutoff_; }

  Literal literal(std::uint64_t n, bool negated = false) const;
  std::optional<std::uint64_t> index_of(const Literal& l) const;
  // Literals of the family, consistent, every index well formed.
  bool well_formed(const Condition& p) const;
  bool satisfied_by(const NatSet& m, const Condition& p) const;  // p is a subset of Sigma(M)

  // P^(alpha); the empty poset from some stage on.
  virtual const LiteralPoset& stage(int alpha) const = 0;
  virtual int fixpoint() const = 0;
  // Minimal atoms of P^(alpha) that only mention indices below the cutoff.
  virtual std::vector<Condition> minimal_atoms(int alpha) const = 0;
  virtual std::string atoms_note(int alpha) const = 0;
  virtual std::string survivors_note(int alpha) const = 0;

  virtual bool is_model(const NatSet& m) const = 0;
  // Least alpha with an atom of P^(alpha) inside Sigma(M); nullopt if none.
  virtual std::optional<int> determination_rank(const NatSet& m) const = 0;
  // Models whose description fits the cutoff window.
  virtual std::vector<NatSet> window_models() const = 0;
  // Distinct diagrams restricted to indices below the cutoff.
  virtual std::vector<Condition> truncated_sigmas() const = 0;

 private:
  std::string universe_;
  int cutoff_;
};

std::unique_ptr<SchematicFamily> make_family(const TCI& t);

}  // namespace tcif
