#include "coarse/entropy.hpp"

#include "coarse/errors.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace coarse {

std::string to_string(SupMode m) {
  return m == SupMode::transitive_exact ? "transitive-exact" : "window-lower-bound";
}

namespace {

// Ball values around one base point for l = 0..limit; lowers `limit` (or throws)
// when the ball outgrows the budget.
std::vector<Rational> ball_values(const MetricSpace& space, const PointRef& b, const Dist& delta,
                                  std::int64_t& limit, const GrowthOptions& options, const Measure* mu,
                                  bool& truncated) {
  std::unordered_set<PointRef> seen{b};
  std::vector<PointRef> frontier{b};
  Rational acc = mu ? (*mu)(b) : Rational(1);
  std::vector<Rational> out{acc};
  for (std::int64_t l = 1; l <= limit; ++l) {
    std::vector<PointRef> next;
    bool past_window = false;
    try {
      for (const auto& v : frontier) {
        for (const auto& w : space.delta_neighbors(v, delta)) {
          if (seen.insert(w).second) {
            next.push_back(w);
            acc += mu ? (*mu)(w) : Rational(1);
          }
        }
        if (seen.size() > options.point_budget) break;
      }
    } catch (const BudgetExceeded&) {
      // the ball left a generated space's window
      if (!options.stop_at_budget) throw;
      past_window = true;
    }
    if (past_window) {
      limit = l - 1;
      truncated = true;
      break;
    }
    if (seen.size() > options.point_budget) {
      if (!options.stop_at_budget) {
        throw CapExceeded("B_delta(x, " + std::to_string(l) + ") exceeds the point budget of " +
                              std::to_string(options.point_budget),
                          seen.size());
      }
      limit = l - 1;
      truncated = true;
      break;
    }
    out.push_back(acc);
    frontier = std::move(next);
  }
  return out;
}

}  // namespace

GrowthSeries growth_series(const MetricSpace& space, const PointRef& x, const Dist& delta,
                           const GrowthOptions& options, const Measure* mu) {
  require_positive(delta, "delta");
  if (options.l_max < 0) throw InvalidArgument("l_max must be nonnegative");
  space.check(x);
  GrowthSeries out;
  out.delta = delta;
  out.basepoint = x;
  out.measured = mu != nullptr;
  const auto& tr = space.traits();
  if (tr.vertex_transitive) {
    out.sup_mode = SupMode::transitive_exact;
    out.base_points = {x};
  } else {
    out.sup_mode = SupMode::window_lower_bound;
    const std::int64_t reach = options.l_max * std::max<std::int64_t>(1, delta.ceil());
    std::vector<PointRef> bases{x};
    if (tr.finite) {
      // sup over the delta-component of x
      auto comp = hop_distances(space, x, INT64_MAX, delta);
      for (const auto& p : space.growth_base_points(reach))
        if (p != x && comp.contains(p)) bases.push_back(p);
    } else if (!(delta < Dist(1))) {
      // catalog base points lie on one 1-connected space
      for (const auto& p : space.growth_base_points(reach))
        if (p != x) bases.push_back(p);
    }
    out.base_points = std::move(bases);
  }
  std::int64_t limit = options.l_max;
  std::vector<Rational> values;
  for (const auto& b : out.base_points) {
    auto v = ball_values(space, b, delta, limit, options, mu, out.truncated);
    v.resize(static_cast<std::size_t>(std::min<std::int64_t>(limit + 1, static_cast<std::int64_t>(v.size()))));
    if (values.size() > v.size()) values.resize(v.size());
    if (values.empty()) {
      values = std::move(v);
    } else {
      for (std::size_t l = 0; l < values.size(); ++l) values[l] = std::max(values[l], v[l]);
    }
  }
  out.values = std::move(values);
  out.window = space.describe() + ", l <= " + std::to_string(static_cast<std::int64_t>(out.values.size()) - 1) + ", " +
               std::to_string(out.base_points.size()) + " base point(s)";
  return out;
}

std::optional<double> fit_log_slope(const std::vector<Rational>& values) {
  if (values.size() < 2) return std::nullopt;
  const std::size_t last = values.size() - 1;
  const std::size_t from = last / 2;
  if (last - from < 1) return std::nullopt;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  double m = 0;
  for (std::size_t l = from; l <= last; ++l) {
    if (values[l] <= 0) return std::nullopt;
    const double x = static_cast<double>(l);
    const double y = std::log(to_double(values[l]));
    sx += x, sy += y, sxx += x * x, sxy += x * y, m += 1;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace coarse
