#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace tcif {

// Hereditarily finite set, kept normalized: members sorted by canonical order, no duplicates.
class HFSet {
 public:
  HFSet() = default;
  static HFSet of(std::vector<HFSet> members);

  const std::vector<HFSet>& members() const { return members_; }
  int rank() const { return rank_; }
  bool empty() const { return members_.empty(); }
  bool contains(const HFSet& x) const;

  friend bool operator==(const HFSet&, const HFSet&) = default;

 private:
  std::vector<HFSet> members_;
  int rank_ = 0;
};

// Rank first, then lexicographic over member lists.
int compare(const HFSet& a, const HFSet& b);
struct HFLess {
  bool operator()(const HFSet& a, const HFSet& b) const { return compare(a, b) < 0; }
};

HFSet parse_set(const std::string& text);
std::string print_set(const HFSet& x);

HFSet transitive_closure(const HFSet& x);

using Code = std::set<std::uint64_t>;

std::uint64_t pair(std::uint64_t a, std::uint64_t b);
std::pair<std::uint64_t, std::uint64_t> unpair(std::uint64_t n);

Code encode_set(const HFSet& x);
HFSet decode_set(const Code& c);

Code parse_code(const std::string& text);
std::string print_code(const Code& c);

}  // namespace tcif
