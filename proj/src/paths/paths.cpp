#include "coarse/paths.hpp"

#include "coarse/errors.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace coarse {

namespace {

// Breadth-first layers in the hop metric, remembering each expanded node's neighbors.
struct HopSearch {
  const MetricSpace& space;
  Dist delta;
  std::unordered_map<PointRef, std::int64_t> hops;
  std::unordered_map<PointRef, std::vector<PointRef>> adj;
  std::vector<PointRef> frontier;
  std::int64_t rounds = 0;

  HopSearch(const MetricSpace& s, const PointRef& x, Dist d) : space(s), delta(std::move(d)) {
    space.check(x);
    hops.emplace(x, 0);
    frontier.push_back(x);
  }

  const std::vector<PointRef>& neighbors(const PointRef& v) {
    auto it = adj.find(v);
    if (it == adj.end()) it = adj.emplace(v, space.delta_neighbors(v, delta)).first;
    return it->second;
  }

  // Expands one layer; returns false when nothing new appeared.
  bool step() {
    std::vector<PointRef> next;
    for (const auto& v : frontier) {
      for (const auto& w : neighbors(v)) {
        if (hops.emplace(w, rounds + 1).second) next.push_back(w);
      }
    }
    ++rounds;
    frontier = std::move(next);
    return !frontier.empty();
  }
};

std::string show(const PointRef& p) {
  std::ostringstream os;
  os << p;
  return os.str();
}

}  // namespace

bool validate_path(std::span<const PointRef> seq, const Dist& delta, const MetricSpace& space) {
  if (seq.empty()) throw PreconditionFailed("a path needs at least one point");
  for (const auto& p : seq) space.check(p);
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    if (space.distance(seq[i], seq[i + 1]) > delta) return false;
  }
  return true;
}

DeltaPath make_path(std::vector<PointRef> seq, const Dist& delta, const MetricSpace& space) {
  if (seq.empty()) throw PreconditionFailed("a path needs at least one point");
  for (const auto& p : seq) space.check(p);
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    Dist d = space.distance(seq[i], seq[i + 1]);
    if (d > delta) {
      throw PreconditionFailed("step " + std::to_string(i) + " from " + show(seq[i]) + " to " + show(seq[i + 1]) +
                               " has length " + d.to_string() + " > " + delta.to_string());
    }
  }
  return DeltaPath{std::move(seq), delta};
}

DeltaPath concat(const DeltaPath& u, const DeltaPath& v) {
  if (u.points.empty() || v.points.empty()) throw PreconditionFailed("cannot concatenate empty paths");
  if (u.back() != v.front()) {
    throw PreconditionFailed("endpoint mismatch: " + show(u.back()) + " vs " + show(v.front()));
  }
  if (u.delta != v.delta) {
    throw PreconditionFailed("delta mismatch: " + u.delta.to_string() + " vs " + v.delta.to_string());
  }
  DeltaPath out = u;
  out.points.insert(out.points.end(), v.points.begin() + 1, v.points.end());
  return out;
}

DeltaPath reverse(const DeltaPath& u) {
  DeltaPath out = u;
  std::reverse(out.points.begin(), out.points.end());
  return out;
}

DeltaPath pad_to_length(const DeltaPath& u, std::size_t length) {
  if (u.points.empty()) throw PreconditionFailed("cannot pad an empty path");
  if (length < u.length()) throw PreconditionFailed("path is already longer than the requested length");
  DeltaPath out = u;
  out.points.resize(length + 1, u.back());
  return out;
}

Dist orbit_distance(std::span<const PointRef> u, std::span<const PointRef> v, const MetricSpace& space) {
  if (u.size() != v.size()) {
    throw PreconditionFailed("orbit distance needs equal lengths (" + std::to_string(u.size()) + " vs " +
                             std::to_string(v.size()) + " points)");
  }
  Dist best(0);
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] == v[i]) continue;
    Dist d = space.distance(u[i], v[i]);
    if (d > best) best = d;
    if (best.is_infinite()) break;
  }
  return best;
}

Dist orbit_distance(const DeltaPath& u, const DeltaPath& v, const MetricSpace& space) {
  return orbit_distance(std::span<const PointRef>(u.points), std::span<const PointRef>(v.points), space);
}

std::vector<PointRef> OrbitSet::points(std::size_t i) const {
  std::vector<PointRef> out;
  out.reserve(static_cast<std::size_t>(n + 1));
  for (auto k : indices(i)) out.push_back(table[k]);
  return out;
}

OrbitSet make_orbit_set(const std::vector<DeltaPath>& paths, bool exhaustive) {
  if (paths.empty()) throw PreconditionFailed("an orbit set needs at least one path");
  OrbitSet out;
  out.n = static_cast<std::int64_t>(paths.front().length());
  out.delta = paths.front().delta;
  out.x0 = paths.front().front();
  out.exhaustive = exhaustive;
  for (const auto& p : paths) {
    if (static_cast<std::int64_t>(p.length()) != out.n) throw PreconditionFailed("orbit set paths differ in length");
    if (p.front() != out.x0) throw PreconditionFailed("orbit set paths differ in start point");
    if (p.delta != out.delta) throw PreconditionFailed("orbit set paths differ in delta");
    out.table.insert(out.table.end(), p.points.begin(), p.points.end());
  }
  std::sort(out.table.begin(), out.table.end());
  out.table.erase(std::unique(out.table.begin(), out.table.end()), out.table.end());
  out.flat.reserve(paths.size() * static_cast<std::size_t>(out.n + 1));
  for (const auto& p : paths) {
    for (const auto& q : p.points) {
      auto it = std::lower_bound(out.table.begin(), out.table.end(), q);
      out.flat.push_back(static_cast<std::uint32_t>(it - out.table.begin()));
    }
  }
  return out;
}

namespace {

// Interned successor lists (self included, PointRef order) for every point within n-1 hops.
struct SuccessorGraph {
  std::vector<PointRef> table;
  std::vector<std::int64_t> hop;
  std::vector<std::vector<std::uint32_t>> succ;
  std::uint32_t root = 0;
};

SuccessorGraph successor_graph(const MetricSpace& space, const PointRef& x0, std::int64_t n, const Dist& delta) {
  require_positive(delta, "delta");
  if (n < 0) throw InvalidArgument("path length must be nonnegative");
  HopSearch search(space, x0, delta);
  while (search.rounds < n && search.step()) {
  }
  SuccessorGraph g;
  g.table.reserve(search.hops.size());
  for (const auto& [p, h] : search.hops) g.table.push_back(p);
  std::sort(g.table.begin(), g.table.end());
  std::unordered_map<PointRef, std::uint32_t> index;
  index.reserve(g.table.size());
  for (std::uint32_t i = 0; i < g.table.size(); ++i) index.emplace(g.table[i], i);
  g.hop.resize(g.table.size());
  g.succ.resize(g.table.size());
  for (std::uint32_t i = 0; i < g.table.size(); ++i) {
    g.hop[i] = search.hops.at(g.table[i]);
    if (g.hop[i] >= n) continue;
    auto& s = g.succ[i];
    for (const auto& w : search.neighbors(g.table[i])) s.push_back(index.at(w));
    s.push_back(i);
    std::sort(s.begin(), s.end());
  }
  g.root = index.at(x0);
  return g;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b, std::uint64_t limit) {
  if (a >= limit || b >= limit - a) return limit;
  return a + b;
}

std::uint64_t count_paths(const SuccessorGraph& g, std::int64_t n, std::uint64_t saturate) {
  // cur[y] = number of paths with `k` steps from y
  std::vector<std::uint64_t> cur(g.table.size(), 1), next(g.table.size(), 0);
  for (std::int64_t k = 1; k <= n; ++k) {
    for (std::size_t y = 0; y < g.table.size(); ++y) {
      next[y] = 0;
      if (g.hop[y] > n - k) continue;
      std::uint64_t total = 0;
      for (auto z : g.succ[y]) total = sat_add(total, cur[z], saturate);
      next[y] = total;
    }
    std::swap(cur, next);
  }
  return std::min(cur[g.root], saturate);
}

}  // namespace

std::uint64_t count_orbits(const MetricSpace& space, const PointRef& x0, std::int64_t n, const Dist& delta,
                           std::uint64_t saturate) {
  auto g = successor_graph(space, x0, n, delta);
  return count_paths(g, n, saturate);
}

namespace {

void walk(const SuccessorGraph& g, std::int64_t n, const std::function<void(std::span<const std::uint32_t>)>& visit) {
  const auto len = static_cast<std::size_t>(n + 1);
  std::vector<std::uint32_t> cur(len);
  std::vector<std::size_t> pos(len, 0);
  cur[0] = g.root;
  if (n == 0) {
    visit(cur);
    return;
  }
  std::int64_t depth = 0;  // cur[0..depth] fixed, choosing cur[depth+1]
  while (depth >= 0) {
    const auto& s = g.succ[cur[depth]];
    auto& i = pos[depth];
    if (i == s.size()) {
      --depth;
      continue;
    }
    cur[depth + 1] = s[i++];
    if (depth + 1 == n) {
      visit(cur);
    } else {
      ++depth;
      pos[depth] = 0;
    }
  }
}

}  // namespace

OrbitSet enumerate_orbits(const MetricSpace& space, const PointRef& x0, std::int64_t n, const Dist& delta,
                          std::uint64_t cap) {
  auto g = successor_graph(space, x0, n, delta);
  std::uint64_t total = count_paths(g, n, cap == UINT64_MAX ? cap : cap + 1);
  if (total > cap) {
    throw CapExceeded("P(n=" + std::to_string(n) + ", delta=" + delta.to_string() + ", x0=" + show(x0) +
                          ") has more than " + std::to_string(cap) + " paths",
                      static_cast<std::size_t>(total));
  }
  OrbitSet out;
  out.n = n;
  out.delta = delta;
  out.x0 = x0;
  out.exhaustive = true;
  out.flat.reserve(static_cast<std::size_t>(total) * static_cast<std::size_t>(n + 1));
  walk(g, n, [&](std::span<const std::uint32_t> p) { out.flat.insert(out.flat.end(), p.begin(), p.end()); });
  out.table = std::move(g.table);
  return out;
}

void for_each_orbit(const MetricSpace& space, const PointRef& x0, std::int64_t n, const Dist& delta,
                    const std::function<void(const std::vector<PointRef>&, std::span<const std::uint32_t>)>& visit) {
  auto g = successor_graph(space, x0, n, delta);
  walk(g, n, [&](std::span<const std::uint32_t> p) { visit(g.table, p); });
}

std::unordered_map<PointRef, std::int64_t> hop_distances(const MetricSpace& space, const PointRef& x,
                                                         std::int64_t max_hops, const Dist& delta) {
  require_positive(delta, "delta");
  HopSearch search(space, x, delta);
  while (search.rounds < max_hops && search.step()) {
  }
  return std::move(search.hops);
}

std::vector<PointRef> step_ball(const MetricSpace& space, const PointRef& x, std::int64_t n, const Dist& delta) {
  auto hops = hop_distances(space, x, n, delta);
  std::vector<PointRef> out;
  out.reserve(hops.size());
  for (const auto& [p, h] : hops) out.push_back(p);
  std::sort(out.begin(), out.end());
  return out;
}

Component delta_component(const MetricSpace& space, const PointRef& x, const Dist& delta, std::int64_t hop_cap) {
  require_positive(delta, "delta");
  if (hop_cap < 1) throw InvalidArgument("hop_cap must be positive");
  HopSearch search(space, x, delta);
  Component out;
  while (search.rounds < hop_cap) {
    if (!search.step()) {
      out.complete = true;
      break;
    }
  }
  for (const auto& [p, h] : search.hops) out.points.push_back(p);
  std::sort(out.points.begin(), out.points.end());
  return out;
}

std::optional<std::int64_t> hop_distance(const MetricSpace& space, const PointRef& a, const PointRef& b,
                                         const Dist& delta, std::int64_t max_hops) {
  require_positive(delta, "delta");
  space.check(b);
  HopSearch search(space, a, delta);
  while (true) {
    auto it = search.hops.find(b);
    if (it != search.hops.end()) return it->second;
    if (search.rounds >= max_hops || !search.step()) return std::nullopt;
  }
}

std::optional<DeltaPath> shortest_delta_path(const MetricSpace& space, const PointRef& a, const PointRef& b,
                                             const Dist& delta, std::int64_t max_hops) {
  require_positive(delta, "delta");
  space.check(a);
  // layers around b, then walk forward from a taking the least successor one layer closer
  HopSearch search(space, b, delta);
  while (!search.hops.contains(a)) {
    if (search.rounds >= max_hops || !search.step()) return std::nullopt;
  }
  DeltaPath out{{a}, delta};
  PointRef cur = a;
  for (std::int64_t h = search.hops.at(a); h > 0; --h) {
    for (const auto& w : search.neighbors(cur)) {
      auto it = search.hops.find(w);
      if (it != search.hops.end() && it->second == h - 1) {
        cur = w;
        break;
      }
    }
    out.points.push_back(cur);
  }
  return out;
}

void write_jsonl(std::ostream& out, const OrbitSet& orbits, const MetricSpace& space) {
  for (std::size_t i = 0; i < orbits.size(); ++i) {
    auto line = nlohmann::json::array();
    for (auto k : orbits.indices(i)) line.push_back(space.encode(orbits.table[k]));
    out << line.dump() << '\n';
  }
}

}  // namespace coarse
