#pragma once

#include "coarse/dist.hpp"
#include "coarse/point.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace coarse {

enum class SpaceKind { finite_matrix, graph, weighted_graph, generated };

std::string to_string(SpaceKind kind);

enum class GrowthClass { unknown, subexponential, exponential };

std::string to_string(GrowthClass g);

/// Structural annotations. Catalog entries fill these from closed forms; spaces
/// built from data only get what can be checked exhaustively.
struct SpaceTraits {
  bool vertex_transitive = false;
  bool ultrametric = false;
  /// Every δ-component is bounded, for every δ > 0.
  bool bounded_components = false;
  /// Distance is the path metric of an unweighted graph.
  bool graph_metric = false;
  bool finite = false;
  std::optional<bool> quasi_geodesic;
  /// Coarsely equivalent to a space of bounded geometry.
  std::optional<bool> coarsely_bounded_geometry;
  std::optional<std::int64_t> max_degree;
  /// Growth of sup_x |B_δ(x,l)| in l, the same class for every δ > 0.
  GrowthClass step_growth = GrowthClass::unknown;
  /// Growth of the measured volume vol_δ(l) (measured catalog entries only).
  GrowthClass measured_growth = GrowthClass::unknown;
  /// vol_δ(l) is finite for every δ and l.
  bool measured_volume_finite = false;
  /// A coding-map argument bounds the separated counts subexponentially.
  bool coding_map_zero = false;
  std::string growth_formula;
  std::string catalog_tag;
};

/// Hub and candidate endpoints for the ping-pong construction.
struct WitnessTargets {
  PointRef hub;
  std::vector<PointRef> endpoints;
  std::string note;
};

/// A metric space given by a distance oracle and a δ-neighbor enumerator.
/// Implementations are immutable; any memoization must be internally synchronized.
class MetricSpace {
 public:
  virtual ~MetricSpace() = default;

  virtual SpaceKind kind() const = 0;
  virtual std::string describe() const = 0;
  const SpaceTraits& traits() const { return traits_; }

  /// Throws UnknownPoint for invalid encodings and BudgetExceeded outside the window.
  virtual void check(const PointRef& p) const = 0;
  bool contains(const PointRef& p) const;

  virtual Dist distance(const PointRef& a, const PointRef& b) const = 0;

  /// Exactly the points y with 0 < d(x,y) <= delta, sorted by PointRef.
  virtual std::vector<PointRef> delta_neighbors(const PointRef& x, const Dist& delta) const = 0;

  virtual PointRef basepoint() const = 0;

  /// All points; only finite spaces implement this.
  virtual std::vector<PointRef> points() const;

  virtual nlohmann::json encode(const PointRef& p) const;
  virtual PointRef decode(const nlohmann::json& j) const;

  /// Base points over which sup-type growth is taken; `reach` is the largest metric
  /// radius the caller will explore around each of them.
  virtual std::vector<PointRef> growth_base_points(std::int64_t reach) const;
  /// Centers to scan for large separated sets of bounded diameter at a window level.
  virtual std::vector<PointRef> separation_centers(int level) const;
  /// Catalog hint for a lower-bound witness; empty when the space has none.
  virtual std::optional<WitnessTargets> witness_targets(const Dist& delta, const Dist& R, int level) const;

 protected:
  SpaceTraits traits_;
  /// Encode every point as [major, minor] rather than a bare integer for minor == 0.
  bool pair_points_ = false;
};

using SpaceHandle = std::shared_ptr<const MetricSpace>;

/// Atomic measure attached to a space.
using Measure = std::function<Rational(const PointRef&)>;

struct MeasuredSpaceHandle {
  SpaceHandle space;
  Measure mu;

  Rational mass(const std::vector<PointRef>& set) const;
};

/// Throws InvalidArgument unless delta is finite and positive.
void require_positive(const Dist& delta, const char* what);

}  // namespace coarse
