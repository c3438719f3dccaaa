#include "coarse/geometry.hpp"

#include "coarse/errors.hpp"
#include "coarse/extremal.hpp"
#include "coarse/graph.hpp"
#include "coarse/paths.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_set>

namespace coarse {

std::string to_string(BGVerdict v) {
  switch (v) {
    case BGVerdict::bounded_evidence: return "bounded-evidence";
    case BGVerdict::unbounded_evidence: return "unbounded-evidence";
    case BGVerdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

bool valid_bg_set(const MetricSpace& space, const std::vector<PointRef>& set, const Dist& s, const Dist& D) {
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (std::size_t j = i + 1; j < set.size(); ++j) {
      Dist d = space.distance(set[i], set[j]);
      if (d < s || d > D) return false;
    }
  }
  return true;
}

BGEvidence bounded_geometry_evidence(const MetricSpace& space, const Dist& s, const Dist& D,
                                     const std::vector<int>& depths, const BGOptions& options) {
  require_positive(s, "s");
  require_positive(D, "D");
  if (depths.empty()) throw InvalidArgument("bounded_geometry_evidence needs at least one depth");
  BGEvidence out;
  out.s = s;
  out.D = D;
  out.depths = depths;
  for (int depth : depths) {
    std::size_t best = 0;
    for (const auto& c : space.separation_centers(depth)) {
      std::vector<PointRef> window = space.delta_neighbors(c, D);
      window.insert(window.begin(), c);
      if (window.size() > options.window_points) {
        std::ostringstream os;
        os << "D-ball around " << c << " has " << window.size() << " points, over the window cap of "
           << options.window_points;
        throw BudgetExceeded(os.str());
      }
      const std::size_t n = window.size();
      std::vector<char> conflict(n * n, 0);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          Dist d = space.distance(window[i], window[j]);
          conflict[i * n + j] = conflict[j * n + i] = (d < s || d > D) ? 1 : 0;
        }
      }
      auto conflicts = [&](std::size_t i, std::size_t j) { return conflict[i * n + j] != 0; };
      BGRecord rec;
      rec.depth = depth;
      rec.center = c;
      rec.window_points = n;
      std::vector<std::size_t> chosen;
      if (n <= options.exact_limit) {
        auto mis = max_independent_set(n, conflicts, options.node_budget);
        chosen = std::move(mis.selected);
        rec.exact = mis.exact;
      } else {
        chosen = greedy_independent(n, conflicts);
      }
      std::sort(chosen.begin(), chosen.end());
      for (auto i : chosen) rec.set.push_back(window[i]);
      best = std::max(best, rec.set.size());
      out.records.push_back(std::move(rec));
    }
    out.cardinalities.push_back(best);
  }
  const auto& c = out.cardinalities;
  if (c.size() >= 2) {
    bool increasing = true;
    for (std::size_t i = 1; i < c.size(); ++i) increasing = increasing && c[i] > c[i - 1];
    if (increasing) {
      out.verdict = BGVerdict::unbounded_evidence;
    } else if (c[c.size() - 1] == c[c.size() - 2]) {
      out.verdict = BGVerdict::bounded_evidence;
    }
  }
  return out;
}

QGReport quasi_geodesic_check(const MetricSpace& space, const Dist& delta,
                              const std::vector<std::pair<PointRef, PointRef>>& pairs) {
  require_positive(delta, "delta");
  QGReport out;
  out.delta = delta;
  for (const auto& [a, b] : pairs) {
    QGPair q;
    q.a = a;
    q.b = b;
    q.distance = space.distance(a, b);
    if (q.distance.is_infinite()) {
      q.pass = false;
    } else {
      q.bound = q.distance.ceil();
      q.hops = hop_distance(space, a, b, delta, q.bound);
      q.pass = q.hops.has_value();
    }
    out.pass = out.pass && q.pass;
    out.pairs.push_back(std::move(q));
  }
  return out;
}

std::vector<std::pair<PointRef, PointRef>> default_qg_pairs(const MetricSpace& space, std::int64_t max_distance) {
  const PointRef x = space.basepoint();
  std::vector<PointRef> candidates;
  if (space.traits().finite) {
    candidates = space.points();
  } else {
    for (int j = 0; j < 62; ++j) {
      const std::int64_t m = std::int64_t{1} << j;
      for (auto y : {PointRef{m, 0}, PointRef{-m, 0}})
        if (space.contains(y)) candidates.push_back(y);
    }
  }
  std::vector<std::pair<Dist, PointRef>> by_distance;
  for (const auto& y : candidates) {
    if (y == x) continue;
    Dist d = space.distance(x, y);
    if (d.is_infinite() || d > Dist(max_distance)) continue;
    by_distance.emplace_back(d, y);
  }
  std::stable_sort(by_distance.begin(), by_distance.end(),
                   [](const auto& u, const auto& v) { return u.first < v.first; });
  std::vector<std::pair<PointRef, PointRef>> out;
  Dist next(0);
  for (const auto& [d, y] : by_distance) {
    if (d < next) continue;
    out.emplace_back(x, y);
    next = d * 2;
  }
  return out;
}

SpaceHandle rips_graph(const MetricSpace& space, const Dist& delta, const std::vector<PointRef>& window) {
  std::vector<PointRef> vertices = window;
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      if (space.distance(vertices[i], vertices[j]) <= delta) edges.push_back({vertices[i], vertices[j]});
    }
  }
  return build_graph(edges, vertices);
}

NetRetraction net_retraction(const MetricSpace& space, const Dist& r, const std::vector<PointRef>& window) {
  require_positive(r, "r");
  if (window.empty()) throw InvalidArgument("net_retraction needs a nonempty window");
  NetRetraction out;
  out.r = r;
  out.net = greedy_net(space, window, r * 3);
  for (const auto& x : window) {
    std::size_t best = 0;
    Dist best_d = space.distance(x, out.net[0]);
    for (std::size_t i = 1; i < out.net.size() && !best_d.is_zero(); ++i) {
      Dist d = space.distance(x, out.net[i]);
      if (d < best_d) best = i, best_d = d;
    }
    out.retraction.emplace(x, out.net[best]);
  }
  return out;
}

nlohmann::json to_json(const BGEvidence& e, const MetricSpace& space) {
  nlohmann::json records = nlohmann::json::array();
  for (const auto& r : e.records) {
    nlohmann::json set = nlohmann::json::array();
    for (const auto& p : r.set) set.push_back(space.encode(p));
    records.push_back({{"depth", r.depth},
                       {"center", space.encode(r.center)},
                       {"window_points", r.window_points},
                       {"cardinality", r.set.size()},
                       {"exact", r.exact},
                       {"set", set}});
  }
  return {{"s", e.s.to_string()},
          {"D", e.D.to_string()},
          {"depths", e.depths},
          {"cardinalities", e.cardinalities},
          {"verdict", to_string(e.verdict)},
          {"records", records}};
}

nlohmann::json to_json(const QGReport& q, const MetricSpace& space) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& p : q.pairs) {
    pairs.push_back({{"a", space.encode(p.a)},
                     {"b", space.encode(p.b)},
                     {"distance", p.distance.to_string()},
                     {"bound", p.bound},
                     {"hops", p.hops ? nlohmann::json(*p.hops) : nlohmann::json(nullptr)},
                     {"pass", p.pass}});
  }
  return {{"delta", q.delta.to_string()}, {"pass", q.pass}, {"pairs", pairs}};
}

}  // namespace coarse
