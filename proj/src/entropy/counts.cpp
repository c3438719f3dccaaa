#include "coarse/entropy.hpp"

#include "coarse/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>
#include <unordered_map>

namespace coarse {

double rate_of(std::uint64_t count, std::int64_t n) {
  if (n <= 0 || count <= 1) return 0.0;
  return std::log(static_cast<double>(count)) / static_cast<double>(n);
}

namespace {

constexpr std::size_t kDiameterScan = 1024;
constexpr std::size_t kGreedyCoverLimit = 4096;

RatePoint point(std::int64_t n, std::uint64_t count, Certificate c, std::string method) {
  RatePoint p;
  p.n = n;
  p.count = count;
  p.certificate = c;
  p.rate = rate_of(count, n);
  p.method = std::move(method);
  return p;
}

// True when every two delta-paths of length n from x0 are closer than R, which forces
// s = r = 1. Only small step balls are scanned.
bool all_within(const MetricSpace& space, const PointRef& x0, std::int64_t n, const Dist& delta, const Dist& R) {
  if (delta * (2 * n) < R) return true;
  auto ball = step_ball(space, x0, n, delta);
  if (ball.size() > kDiameterScan) return false;
  for (std::size_t i = 0; i < ball.size(); ++i)
    for (std::size_t j = i + 1; j < ball.size(); ++j)
      if (space.distance(ball[i], ball[j]) >= R) return false;
  return true;
}

// Memoized d(a, b) < R over the indices of one point table.
class CloseCache {
 public:
  CloseCache(const MetricSpace& space, const std::vector<PointRef>& table, Dist R)
      : space_(space), table_(table), R_(std::move(R)), n_(table.size()) {
    if (n_ * n_ <= (std::size_t{1} << 24)) dense_.assign(n_ * n_, 0);
  }

  bool operator()(std::uint32_t a, std::uint32_t b) {
    if (a == b) return true;
    if (a > b) std::swap(a, b);
    const std::uint64_t key = static_cast<std::uint64_t>(a) * n_ + b;
    if (!dense_.empty()) {
      auto& v = dense_[key];
      if (v == 0) v = space_.distance(table_[a], table_[b]) < R_ ? 1 : 2;
      return v == 1;
    }
    auto it = sparse_.find(key);
    if (it == sparse_.end()) it = sparse_.emplace(key, space_.distance(table_[a], table_[b]) < R_).first;
    return it->second;
  }

 private:
  const MetricSpace& space_;
  const std::vector<PointRef>& table_;
  Dist R_;
  std::size_t n_;
  std::vector<char> dense_;
  std::unordered_map<std::uint64_t, bool> sparse_;
};

std::int64_t checkpoint_gap(const Dist& delta, const Dist& R) {
  // largest k with k * delta < R
  std::int64_t k = (R / delta).ceil() - 1;
  while (k >= 1 && !(delta * k < R)) --k;
  while (delta * (k + 1) < R) ++k;
  return k;
}

}  // namespace

RatePoint separated_count(const SpaceHandle& space, const PointRef& x0, std::int64_t n, const Dist& delta,
                          const Dist& R, const Caps& caps) {
  require_positive(delta, "delta");
  require_positive(R, "R");
  if (n < 0) throw InvalidArgument("path length must be nonnegative");
  space->check(x0);
  if (n == 0) return point(0, 1, Certificate::exact, "trivial");
  if (all_within(*space, x0, n, delta, R)) return point(n, 1, Certificate::exact, "diameter");
  auto orbits = std::make_shared<const OrbitSet>(enumerate_orbits(*space, x0, n, delta, caps.orbits));
  auto items = MetricItems::of_paths(space, orbits);
  auto res = max_separated(items, R, caps.exact_packing, caps.node_budget);
  auto out = point(n, res.size(), res.certificate, res.certificate == Certificate::exact ? "solver" : "greedy");
  out.paths = orbits->size();
  return out;
}

RatePoint dense_count(const SpaceHandle& space, const PointRef& x0, std::int64_t n, const Dist& delta, const Dist& R,
                      const Caps& caps) {
  require_positive(delta, "delta");
  require_positive(R, "R");
  if (n < 0) throw InvalidArgument("path length must be nonnegative");
  space->check(x0);
  if (n == 0) return point(0, 1, Certificate::exact, "trivial");
  if (all_within(*space, x0, n, delta, R)) return point(n, 1, Certificate::exact, "diameter");
  auto orbits = std::make_shared<const OrbitSet>(enumerate_orbits(*space, x0, n, delta, caps.orbits));
  const std::size_t total = orbits->size();
  auto items = MetricItems::of_paths(space, orbits);
  if (total <= caps.exact_covering) {
    auto res = min_dense(items, R, caps.exact_covering);
    auto out = point(n, res.size(), res.certificate, "solver");
    out.paths = total;
    return out;
  }
  std::optional<RatePoint> best;
  auto offer = [&](std::uint64_t count, const char* method) {
    if (!best || count < best->count) best = point(n, count, Certificate::upper_bound, method);
  };
  if (total <= kGreedyCoverLimit) offer(min_dense(items, R, 0).size(), "greedy");
  if (auto cover = checkpoint_cover(*space, x0, n, delta, R, caps, orbits.get()); cover && cover->verified)
    offer(cover->family.size(), "construction");
  if (!best) offer(min_dense(items, R, 0).size(), "greedy");
  if (total <= kGreedyCoverLimit) {
    // s(2R) <= r(R): a matching packing closes the bracket
    auto lower = max_separated(items, R * 2, 0);
    if (lower.size() == best->count) {
      best->certificate = Certificate::exact;
      best->method += "+packing";
    }
  }
  best->paths = total;
  return *best;
}

std::optional<CheckpointCover> checkpoint_cover(const MetricSpace& space, const PointRef& x0, std::int64_t n,
                                                const Dist& delta, const Dist& R, const Caps& caps,
                                                const OrbitSet* all) {
  require_positive(delta, "delta");
  require_positive(R, "R");
  if (n < 0) throw InvalidArgument("path length must be nonnegative");
  if (!(delta < R)) return std::nullopt;
  CheckpointCover out;
  out.k = checkpoint_gap(delta, R);
  for (std::int64_t c = 0; c < n; c += out.k) out.checkpoints.push_back(c);
  out.checkpoints.push_back(n);
  const auto& cps = out.checkpoints;

  std::map<std::pair<PointRef, std::int64_t>, std::vector<PointRef>> balls;
  auto ball = [&](const PointRef& y, std::int64_t g) -> const std::vector<PointRef>& {
    auto key = std::make_pair(y, g);
    auto it = balls.find(key);
    if (it == balls.end()) it = balls.emplace(key, step_ball(space, y, g, delta)).first;
    return it->second;
  };
  std::map<std::tuple<PointRef, PointRef, std::int64_t>, DeltaPath> segments;
  auto segment = [&](const PointRef& a, const PointRef& b, std::int64_t g) -> const DeltaPath& {
    auto key = std::make_tuple(a, b, g);
    auto it = segments.find(key);
    if (it == segments.end()) {
      auto p = shortest_delta_path(space, a, b, delta, g);
      if (!p) throw Error("checkpoint cover: no delta-path between consecutive checkpoints");
      it = segments.emplace(key, pad_to_length(*p, static_cast<std::size_t>(g))).first;
    }
    return it->second;
  };

  // depth-first over realized checkpoint tuples
  std::vector<DeltaPath> family;
  std::vector<std::vector<PointRef>> tuples;
  std::vector<PointRef> tuple{x0};
  std::vector<std::size_t> pos{0};
  if (cps.size() == 1) {
    family.push_back(DeltaPath{{x0}, delta});
    tuples.push_back(tuple);
  }
  while (!pos.empty() && cps.size() > 1) {
    const std::size_t j = tuple.size() - 1;
    const std::int64_t gap = cps[j + 1] - cps[j];
    const auto& cand = ball(tuple.back(), gap);
    if (pos.back() == cand.size()) {
      pos.pop_back();
      tuple.pop_back();
      continue;
    }
    tuple.push_back(cand[pos.back()++]);
    if (tuple.size() == cps.size()) {
      if (family.size() >= caps.orbits)
        throw CapExceeded("checkpoint cover has more than " + std::to_string(caps.orbits) + " paths", family.size() + 1);
      DeltaPath p{{x0}, delta};
      for (std::size_t s = 0; s + 1 < tuple.size(); ++s) p = concat(p, segment(tuple[s], tuple[s + 1], cps[s + 1] - cps[s]));
      family.push_back(std::move(p));
      tuples.push_back(tuple);
      tuple.pop_back();
    } else {
      pos.push_back(0);
    }
  }
  out.family = make_orbit_set(family);

  if (all != nullptr && all->exhaustive && all->n == n && all->x0 == x0 && all->delta == delta) {
    auto index_of = [&](const PointRef& p) -> std::uint32_t {
      auto it = std::lower_bound(all->table.begin(), all->table.end(), p);
      if (it == all->table.end() || *it != p) throw Error("checkpoint cover left the step ball");
      return static_cast<std::uint32_t>(it - all->table.begin());
    };
    std::vector<std::vector<std::uint32_t>> reps(family.size());
    std::map<std::vector<std::uint32_t>, std::size_t> by_tuple;
    for (std::size_t f = 0; f < family.size(); ++f) {
      for (const auto& p : family[f].points) reps[f].push_back(index_of(p));
      std::vector<std::uint32_t> key;
      for (const auto& p : tuples[f]) key.push_back(index_of(p));
      by_tuple.emplace(std::move(key), f);
    }
    CloseCache close(space, all->table, R);
    bool ok = true;
    std::vector<std::uint32_t> key(cps.size());
    for (std::size_t i = 0; i < all->size() && ok; ++i) {
      auto idx = all->indices(i);
      for (std::size_t j = 0; j < cps.size(); ++j) key[j] = idx[static_cast<std::size_t>(cps[j])];
      auto it = by_tuple.find(key);
      if (it == by_tuple.end()) {
        ok = false;
        break;
      }
      const auto& rep = reps[it->second];
      for (std::size_t t = 0; t < idx.size() && ok; ++t) ok = close(idx[t], rep[t]);
    }
    out.verified = ok;
  }
  return out;
}

RateSeries rate_series(const SpaceHandle& space, const PointRef& x0, const Dist& delta, const Dist& R,
                       const std::vector<std::int64_t>& n_list, const Caps& caps, RateOptions options) {
  require_positive(delta, "delta");
  require_positive(R, "R");
  if (!std::is_sorted(n_list.begin(), n_list.end())) throw InvalidArgument("n_list must be ascending");
  for (auto n : n_list)
    if (n < 0) throw InvalidArgument("path lengths must be nonnegative");
  RateSeries out;
  out.x0 = x0;
  out.delta = delta;
  out.R = R;
  out.k = delta < R ? checkpoint_gap(delta, R) : 0;
  const std::int64_t big_k = (R / delta).ceil();

  // ball-volume maxima over the region the checkpoints can reach
  const std::int64_t n_max = n_list.empty() ? 0 : n_list.back();
  auto region = step_ball(*space, x0, n_max, delta);
  if (region.size() <= caps.window_points) {
    auto vmax = [&](std::int64_t k) {
      std::uint64_t v = 0;
      if (space->traits().vertex_transitive) return static_cast<std::uint64_t>(step_ball(*space, x0, k, delta).size());
      for (const auto& y : region) v = std::max<std::uint64_t>(v, step_ball(*space, y, k, delta).size());
      return v;
    };
    if (out.k >= 1) out.v_k = vmax(out.k);
    out.v_ceil = vmax(big_k);
  }

  for (auto n : n_list) {
    RateRow row;
    row.n = n;
    if (options.separated) row.separated = separated_count(space, x0, n, delta, R, caps);
    if (options.dense) row.dense = dense_count(space, x0, n, delta, R, caps);
    if (out.v_k) {
      row.checkpoint_bound_log =
          (static_cast<double>(n) / static_cast<double>(out.k) + 1.0) * std::log(static_cast<double>(*out.v_k));
    }
    if (out.v_ceil) {
      const double e = 2.0 * static_cast<double>(n) * delta.to_double() / R.to_double() + 1.0;
      row.covering_bound_log = e * std::log(static_cast<double>(*out.v_ceil));
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace coarse
