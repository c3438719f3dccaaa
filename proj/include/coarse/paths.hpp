#pragma once

#include "coarse/space.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

namespace coarse {

/// A δ-path: consecutive points at distance <= delta. Length is the number of steps.
struct DeltaPath {
  std::vector<PointRef> points;
  Dist delta;

  std::size_t length() const { return points.size() - 1; }
  const PointRef& front() const { return points.front(); }
  const PointRef& back() const { return points.back(); }
  friend bool operator==(const DeltaPath& a, const DeltaPath& b) {
    return a.points == b.points && a.delta == b.delta;
  }
};

bool validate_path(std::span<const PointRef> seq, const Dist& delta, const MetricSpace& space);

/// Validated construction; throws PreconditionFailed when some step is longer than delta.
DeltaPath make_path(std::vector<PointRef> seq, const Dist& delta, const MetricSpace& space);

/// u * v: requires u.back() == v.front() and equal deltas; the first point of v is dropped.
DeltaPath concat(const DeltaPath& u, const DeltaPath& v);
DeltaPath reverse(const DeltaPath& u);
/// Lengthens u by repeating its last point.
DeltaPath pad_to_length(const DeltaPath& u, std::size_t length);

/// max_i d(u_i, v_i); the paths must have equal lengths.
Dist orbit_distance(std::span<const PointRef> u, std::span<const PointRef> v, const MetricSpace& space);
Dist orbit_distance(const DeltaPath& u, const DeltaPath& v, const MetricSpace& space);

/// Paths of a common length n from x0, stored flat over an interned point table.
struct OrbitSet {
  std::int64_t n = 0;
  Dist delta;
  PointRef x0;
  bool exhaustive = false;
  std::vector<PointRef> table;      // distinct points, sorted
  std::vector<std::uint32_t> flat;  // size() * (n + 1) indices into table

  std::size_t size() const { return flat.size() / static_cast<std::size_t>(n + 1); }
  std::span<const std::uint32_t> indices(std::size_t i) const {
    return {flat.data() + i * static_cast<std::size_t>(n + 1), static_cast<std::size_t>(n + 1)};
  }
  std::vector<PointRef> points(std::size_t i) const;
  DeltaPath path(std::size_t i) const { return DeltaPath{points(i), delta}; }
};

/// Builds an OrbitSet from explicit paths (all of one length, starting at one point).
OrbitSet make_orbit_set(const std::vector<DeltaPath>& paths, bool exhaustive = false);

/// |P(n, delta, x0)| computed by dynamic programming, saturating at `saturate`.
std::uint64_t count_orbits(const MetricSpace& space, const PointRef& x0, std::int64_t n, const Dist& delta,
                           std::uint64_t saturate = UINT64_MAX);

/// All δ-paths of length n from x0 (stationary steps included), depth-first with
/// successors in PointRef order. Throws CapExceeded when there are more than `cap`.
OrbitSet enumerate_orbits(const MetricSpace& space, const PointRef& x0, std::int64_t n, const Dist& delta,
                          std::uint64_t cap);

/// Streams P(n, delta, x0) in the same order as enumerate_orbits without storing it.
/// `visit` receives the interned point table and one path as indices into it.
void for_each_orbit(const MetricSpace& space, const PointRef& x0, std::int64_t n, const Dist& delta,
                    const std::function<void(const std::vector<PointRef>&, std::span<const std::uint32_t>)>& visit);

/// Hop distances d_δ(x, ·) for every point with d_δ <= max_hops.
std::unordered_map<PointRef, std::int64_t> hop_distances(const MetricSpace& space, const PointRef& x,
                                                         std::int64_t max_hops, const Dist& delta);

/// B_δ(x, n), sorted.
std::vector<PointRef> step_ball(const MetricSpace& space, const PointRef& x, std::int64_t n, const Dist& delta);

struct Component {
  std::vector<PointRef> points;
  bool complete = false;
};

/// Union of B_δ(x, k) for k <= hop_cap; complete once an expansion round adds nothing.
Component delta_component(const MetricSpace& space, const PointRef& x, const Dist& delta, std::int64_t hop_cap);

/// The smallest k <= max_hops with a δ-path of length k from a to b.
std::optional<std::int64_t> hop_distance(const MetricSpace& space, const PointRef& a, const PointRef& b,
                                         const Dist& delta, std::int64_t max_hops);

/// A shortest δ-path from a to b, lexicographically least in PointRef order among
/// shortest ones; nullopt when none has length <= max_hops.
std::optional<DeltaPath> shortest_delta_path(const MetricSpace& space, const PointRef& a, const PointRef& b,
                                             const Dist& delta, std::int64_t max_hops);

/// One JSON array of encoded points per line.
void write_jsonl(std::ostream& out, const OrbitSet& orbits, const MetricSpace& space);

}  // namespace coarse
