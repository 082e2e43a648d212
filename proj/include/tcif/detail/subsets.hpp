#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace tcif {

template <typename T>
std::vector<std::vector<T>> shortlex_subsets(const std::vector<T>& items) {
  std::vector<std::vector<T>> out;
  std::vector<std::size_t> pick;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t from, std::size_t left) {
    if (left == 0) {
      std::vector<T> s;
      s.reserve(pick.size());
      for (auto i : pick) s.push_back(items[i]);
      out.push_back(std::move(s));
      return;
    }
    for (std::size_t i = from; i + left <= items.size(); ++i) {
      pick.push_back(i);
      rec(i + 1, left - 1);
      pick.pop_back();
    }
  };
  for (std::size_t k = 0; k <= items.size(); ++k) rec(0, k);
  return out;
}

}  // namespace tcif
