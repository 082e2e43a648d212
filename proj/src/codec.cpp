#include "tcif/codec.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "tcif/error.hpp"

namespace tcif {

HFSet HFSet::of(std::vector<HFSet> members) {
  std::sort(members.begin(), members.end(), HFLess{});
  members.erase(std::unique(members.begin(), members.end()), members.end());
  HFSet s;
  s.rank_ = 0;
  for (const auto& m : members) s.rank_ = std::max(s.rank_, m.rank_ + 1);
  s.members_ = std::move(members);
  return s;
}

bool HFSet::contains(const HFSet& x) const {
  return std::binary_search(members_.begin(), members_.end(), x, HFLess{});
}

int compare(const HFSet& a, const HFSet& b) {
  if (a.rank() != b.rank()) return a.rank() < b.rank() ? -1 : 1;
  const auto& x = a.members();
  const auto& y = b.members();
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i)
    if (int c = compare(x[i], y[i])) return c;
  if (x.size() == y.size()) return 0;
  return x.size() < y.size() ? -1 : 1;
}

namespace {

class SetParser {
 public:
  explicit SetParser(const std::string& s) : s_(s) {}

  HFSet run() {
    HFSet x = set();
    skip();
    if (pos_ != s_.size()) fail("end of input");
    return x;
  }

 private:
  HFSet set() {
    skip();
    if (pos_ >= s_.size() || s_[pos_] != '{') fail("'{'");
    ++pos_;
    std::vector<HFSet> members;
    skip();
    if (pos_ < s_.size() && s_[pos_] == '}') {
      ++pos_;
      return HFSet{};
    }
    for (;;) {
      members.push_back(set());
      skip();
      if (pos_ < s_.size() && s_[pos_] == ',') {
        ++pos_;
        continue;
      }
      if (pos_ < s_.size() && s_[pos_] == '}') {
        ++pos_;
        return HFSet::of(std::move(members));
      }
      fail("',' or '}'");
    }
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& expected) {
    throw Error(Errc::bad_set_syntax, "at " + std::to_string(pos_) + ": expected " + expected);
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

void print_into(const HFSet& x, std::string& out) {
  out += '{';
  bool first = true;
  for (const auto& m : x.members()) {
    if (!first) out += ',';
    first = false;
    print_into(m, out);
  }
  out += '}';
}

void collect(const HFSet& x, std::set<HFSet, HFLess>& seen) {
  for (const auto& m : x.members())
    if (seen.insert(m).second) collect(m, seen);
}

}  // namespace

HFSet parse_set(const std::string& text) { return SetParser(text).run(); }

std::string print_set(const HFSet& x) {
  std::string out;
  print_into(x, out);
  return out;
}

HFSet transitive_closure(const HFSet& x) {
  std::set<HFSet, HFLess> seen;
  collect(x, seen);
  return HFSet::of({seen.begin(), seen.end()});
}

std::uint64_t pair(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 s = a + b;
  return static_cast<std::uint64_t>(s * (s + 1) / 2 + b);
}

std::pair<std::uint64_t, std::uint64_t> unpair(std::uint64_t n) {
  // largest w with w(w+1)/2 <= n
  auto tri = [](std::uint64_t w) { return static_cast<unsigned __int128>(w) * (w + 1) / 2; };
  std::uint64_t lo = 0, hi = 1;
  while (tri(hi) <= n) hi *= 2;
  while (lo + 1 < hi) {
    std::uint64_t mid = lo + (hi - lo) / 2;
    if (tri(mid) <= n) lo = mid;
    else hi = mid;
  }
  std::uint64_t b = n - static_cast<std::uint64_t>(tri(lo));
  return {lo - b, b};
}

Code encode_set(const HFSet& x) {
  std::vector<HFSet> y = transitive_closure(x).members();
  y.push_back(x);
  std::sort(y.begin(), y.end(), HFLess{});
  Code out;
  for (std::size_t beta = 0; beta < y.size(); ++beta)
    for (const auto& m : y[beta].members()) {
      auto it = std::lower_bound(y.begin(), y.end(), m, HFLess{});
      out.insert(pair(static_cast<std::uint64_t>(it - y.begin()), beta));
    }
  return out;
}

HFSet decode_set(const Code& c) {
  if (c.empty()) return HFSet{};
  std::map<std::uint64_t, std::vector<std::uint64_t>> below;  // node -> its members
  std::set<std::uint64_t> nodes, has_parent;
  for (std::uint64_t n : c) {
    auto [a, b] = unpair(n);
    below[b].push_back(a);
    nodes.insert(a);
    nodes.insert(b);
    has_parent.insert(a);
  }

  // Kahn's algorithm from the sinks upward; leftovers lie on a cycle.
  std::map<std::uint64_t, std::size_t> pending;
  std::map<std::uint64_t, std::vector<std::uint64_t>> above;
  for (std::uint64_t v : nodes) pending[v] = below.count(v) ? below[v].size() : 0;
  for (const auto& [b, ms] : below)
    for (std::uint64_t a : ms) above[a].push_back(b);
  std::vector<std::uint64_t> order, ready;
  for (const auto& [v, k] : pending)
    if (k == 0) ready.push_back(v);
  while (!ready.empty()) {
    std::uint64_t v = ready.back();
    ready.pop_back();
    order.push_back(v);
    for (std::uint64_t b : above[v])
      if (--pending[b] == 0) ready.push_back(b);
  }
  if (order.size() != nodes.size()) throw Error(Errc::ill_founded, "membership relation has a cycle");

  std::map<std::uint64_t, HFSet> value;
  std::map<HFSet, std::uint64_t, HFLess> owner;
  for (std::uint64_t v : order) {
    std::vector<HFSet> ms;
    if (below.count(v))
      for (std::uint64_t a : below[v]) ms.push_back(value.at(a));
    HFSet s = HFSet::of(std::move(ms));
    auto [it, fresh] = owner.emplace(s, v);
    if (!fresh)
      throw Error(Errc::non_extensional,
                  "nodes " + std::to_string(it->second) + " and " + std::to_string(v) + " have the same members");
    value.emplace(v, std::move(s));
  }

  std::vector<std::uint64_t> tops;
  for (std::uint64_t v : nodes)
    if (!has_parent.count(v)) tops.push_back(v);
  if (tops.size() != 1)
    throw Error(Errc::no_unique_maximum, std::to_string(tops.size()) + " maximal nodes");
  return value.at(tops[0]);
}

Code parse_code(const std::string& text) {
  Code out;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip();
  if (i == text.size()) return out;
  for (;;) {
    skip();
    std::size_t start = i;
    std::uint64_t v = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      if (v > (UINT64_MAX - 9) / 10) throw Error(Errc::bad_set_syntax, "code entry too large");
      v = v * 10 + static_cast<std::uint64_t>(text[i++] - '0');
    }
    if (i == start) throw Error(Errc::bad_set_syntax, "at " + std::to_string(i) + ": expected a natural number");
    out.insert(v);
    skip();
    if (i == text.size()) return out;
    if (text[i] != ',') throw Error(Errc::bad_set_syntax, "at " + std::to_string(i) + ": expected ','");
    ++i;
  }
}

std::string print_code(const Code& c) {
  std::string out;
  for (std::uint64_t v : c) {
    if (!out.empty()) out += ',';
    out += std::to_string(v);
  }
  return out;
}

}  // namespace tcif
