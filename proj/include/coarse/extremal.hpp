#pragma once

#include "coarse/paths.hpp"
#include "coarse/space.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace coarse {

enum class Certificate { exact, lower_bound, upper_bound };
std::string to_string(Certificate c);

enum class ExtremalKind { separated, dense };
std::string to_string(ExtremalKind k);

/// Finite indexed items with a symmetric distance: points of a space or paths of an OrbitSet.
class MetricItems {
 public:
  using DistanceFn = std::function<Dist(std::size_t, std::size_t)>;
  /// d(i, j) < R, evaluated cheaply once R is fixed.
  using Closeness = std::function<bool(std::size_t, std::size_t)>;

  MetricItems(std::size_t count, DistanceFn distance);

  static MetricItems of_points(SpaceHandle space, std::vector<PointRef> points);
  static MetricItems of_paths(SpaceHandle space, std::shared_ptr<const OrbitSet> orbits);
  static MetricItems of_matrix(std::vector<std::vector<Dist>> matrix);

  std::size_t size() const { return count_; }
  Dist distance(std::size_t i, std::size_t j) const { return i == j ? Dist(0) : distance_(i, j); }
  Closeness closer_than(const Dist& R) const;

 private:
  std::size_t count_;
  DistanceFn distance_;
  std::function<Closeness(const Dist&)> closeness_;
};

struct SolverStats {
  std::uint64_t nodes = 0;
  double seconds = 0;
};

struct ExtremalResult {
  std::vector<std::size_t> selected;
  Dist R;
  ExtremalKind kind = ExtremalKind::separated;
  Certificate certificate = Certificate::exact;
  SolverStats stats;

  std::size_t size() const { return selected.size(); }
};

inline constexpr std::size_t kExactPackingLimit = 40;
inline constexpr std::size_t kExactCoveringLimit = 25;
inline constexpr std::uint64_t kNodeBudget = 20'000'000;

/// Maximum R-separated subset (pairwise >= R). Exact branch and bound up to
/// exact_limit items, greedy (lower-bound) beyond or when the node budget runs out.
ExtremalResult max_separated(const MetricItems& items, const Dist& R, std::size_t exact_limit = kExactPackingLimit,
                             std::uint64_t node_budget = kNodeBudget);

/// Minimum R-dense subset (every item at distance < R from a chosen one). Exact set
/// cover up to exact_limit items (at most 64), greedy (upper-bound) beyond.
ExtremalResult min_dense(const MetricItems& items, const Dist& R, std::size_t exact_limit = kExactCoveringLimit);

struct IndependentSet {
  std::vector<std::size_t> selected;
  bool exact = false;
  std::uint64_t nodes = 0;
};

/// Maximum independent set of the graph on 0..n-1 with edges given by `conflict`.
/// Returns the best set found if the node budget is exhausted (exact = false).
IndependentSet max_independent_set(std::size_t n, const std::function<bool(std::size_t, std::size_t)>& conflict,
                                   std::uint64_t node_budget = kNodeBudget);

/// Greedy maximal subset in index order with no conflicting pair.
std::vector<std::size_t> greedy_independent(std::size_t n,
                                            const std::function<bool(std::size_t, std::size_t)>& conflict);

/// Maximal s-separated subset of the window: its first point, then the rest in PointRef order.
std::vector<PointRef> greedy_net(const MetricSpace& space, const std::vector<PointRef>& window, const Dist& s);

/// A pair of selected items closer than R, if any.
std::optional<std::pair<std::size_t, std::size_t>> separation_violation(const MetricItems& items,
                                                                        const std::vector<std::size_t>& selected,
                                                                        const Dist& R);
/// An item at distance >= R from every selected item, if any.
std::optional<std::size_t> density_violation(const MetricItems& items, const std::vector<std::size_t>& selected,
                                             const Dist& R);

bool is_separated(const MetricItems& items, const std::vector<std::size_t>& selected, const Dist& R);
bool is_dense(const MetricItems& items, const std::vector<std::size_t>& selected, const Dist& R);

}  // namespace coarse
