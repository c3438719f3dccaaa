#pragma once

#include "coarse/space.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace coarse {

enum class BGVerdict { bounded_evidence, unbounded_evidence, inconclusive };
std::string to_string(BGVerdict v);

/// Best set found around one center: pairwise distances in [s, D].
struct BGRecord {
  int depth = 0;
  PointRef center;
  std::size_t window_points = 0;
  std::vector<PointRef> set;
  bool exact = false;
};

struct BGEvidence {
  Dist s;
  Dist D;
  std::vector<int> depths;
  /// Largest cardinality per depth (max over that depth's centers).
  std::vector<std::size_t> cardinalities;
  std::vector<BGRecord> records;
  BGVerdict verdict = BGVerdict::inconclusive;
};

struct BGOptions {
  std::size_t window_points = 10'000;
  /// Windows up to this size are solved exactly (subject to the node budget).
  std::size_t exact_limit = 256;
  std::uint64_t node_budget = 2'000'000;
};

/// Scans the closed D-ball around each separation center of every depth for a
/// largest s-separated subset of diameter <= D.
BGEvidence bounded_geometry_evidence(const MetricSpace& space, const Dist& s, const Dist& D,
                                     const std::vector<int>& depths, const BGOptions& options = {});

/// Pairwise distances of `set` all lie in [s, D].
bool valid_bg_set(const MetricSpace& space, const std::vector<PointRef>& set, const Dist& s, const Dist& D);

struct QGPair {
  PointRef a;
  PointRef b;
  Dist distance;
  /// ceil(d(a, b)); the pair passes when a delta-path of at most this length exists.
  std::int64_t bound = 0;
  std::optional<std::int64_t> hops;
  bool pass = false;
};

struct QGReport {
  Dist delta;
  std::vector<QGPair> pairs;
  bool pass = true;
};

QGReport quasi_geodesic_check(const MetricSpace& space, const Dist& delta,
                              const std::vector<std::pair<PointRef, PointRef>>& pairs);

/// Pairs (basepoint, y) with d roughly doubling, up to max_distance.
std::vector<std::pair<PointRef, PointRef>> default_qg_pairs(const MetricSpace& space, std::int64_t max_distance = 4096);

/// Graph on the window with an edge for every pair at distance in (0, delta].
SpaceHandle rips_graph(const MetricSpace& space, const Dist& delta, const std::vector<PointRef>& window);

struct NetRetraction {
  Dist r;
  /// Greedy 3r-net of the window, in construction order.
  std::vector<PointRef> net;
  /// Window point -> nearest net point, ties to the earlier net point.
  std::map<PointRef, PointRef> retraction;
};

NetRetraction net_retraction(const MetricSpace& space, const Dist& r, const std::vector<PointRef>& window);

nlohmann::json to_json(const BGEvidence& e, const MetricSpace& space);
nlohmann::json to_json(const QGReport& q, const MetricSpace& space);

}  // namespace coarse
