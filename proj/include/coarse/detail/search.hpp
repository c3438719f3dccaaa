#pragma once

// Bounded graph searches over lazily supplied adjacency.

#include "coarse/dist.hpp"
#include "coarse/point.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <queue>
#include <unordered_map>
#include <utility>
#include <vector>

namespace coarse::detail {

/// Hop distances from x for every node within `hops` edges. `adjacent(v)` is only
/// called on nodes strictly inside the ball, so generators are never asked for
/// the neighbors of boundary nodes.
template <class Adjacent>
std::unordered_map<PointRef, std::int64_t> hop_ball(const PointRef& x, std::int64_t hops, Adjacent&& adjacent) {
  std::unordered_map<PointRef, std::int64_t> seen{{x, 0}};
  std::vector<PointRef> frontier{x};
  for (std::int64_t h = 0; h < hops && !frontier.empty(); ++h) {
    std::vector<PointRef> next;
    for (const auto& v : frontier) {
      for (const auto& w : adjacent(v)) {
        if (seen.emplace(w, h + 1).second) next.push_back(w);
      }
    }
    frontier = std::move(next);
  }
  return seen;
}

/// Exact weighted distances from x for every node with distance <= radius.
/// `adjacent(v)` yields (neighbor, weight) pairs; a node is expanded only when
/// some edge of weight `min_weight` could still stay inside the radius.
template <class Adjacent>
std::unordered_map<PointRef, Rational> weighted_ball(const PointRef& x, const Rational& radius,
                                                     const Rational& min_weight, Adjacent&& adjacent) {
  using Item = std::pair<Rational, PointRef>;
  auto cmp = [](const Item& a, const Item& b) {
    if (a.first != b.first) return b.first < a.first;
    return b.second < a.second;
  };
  std::priority_queue<Item, std::vector<Item>, decltype(cmp)> queue(cmp);
  std::unordered_map<PointRef, Rational> best{{x, Rational(0)}};
  std::unordered_map<PointRef, bool> done;
  queue.emplace(Rational(0), x);
  while (!queue.empty()) {
    auto [d, v] = queue.top();
    queue.pop();
    if (done[v]) continue;
    done[v] = true;
    if (radius < d + min_weight) continue;
    for (const auto& [w, weight] : adjacent(v)) {
      Rational nd = d + weight;
      if (radius < nd) continue;
      auto it = best.find(w);
      if (it == best.end() || nd < it->second) {
        best[w] = nd;
        queue.emplace(nd, w);
      }
    }
  }
  return best;
}

}  // namespace coarse::detail
