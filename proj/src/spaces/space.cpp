#include "coarse/space.hpp"

#include "coarse/errors.hpp"

#include <ostream>

namespace coarse {

std::ostream& operator<<(std::ostream& os, const PointRef& p) {
  if (p.minor == 0) return os << p.major;
  return os << '(' << p.major << ',' << p.minor << ')';
}

std::string to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::finite_matrix: return "finite-matrix";
    case SpaceKind::graph: return "graph";
    case SpaceKind::weighted_graph: return "weighted-graph";
    case SpaceKind::generated: return "generated";
  }
  return "unknown";
}

std::string to_string(GrowthClass g) {
  switch (g) {
    case GrowthClass::unknown: return "unknown";
    case GrowthClass::subexponential: return "subexponential";
    case GrowthClass::exponential: return "exponential";
  }
  return "unknown";
}

bool MetricSpace::contains(const PointRef& p) const {
  try {
    check(p);
    return true;
  } catch (const UnknownPoint&) {
    return false;
  } catch (const BudgetExceeded&) {
    return false;
  }
}

std::vector<PointRef> MetricSpace::points() const {
  throw PreconditionFailed(describe() + " is not a finite space");
}

nlohmann::json MetricSpace::encode(const PointRef& p) const {
  if (p.minor == 0 && !pair_points_) return p.major;
  return nlohmann::json::array({p.major, p.minor});
}

PointRef MetricSpace::decode(const nlohmann::json& j) const {
  PointRef p;
  if (j.is_number_integer()) {
    p = PointRef{j.get<std::int64_t>(), 0};
  } else if (j.is_array() && j.size() == 2 && j[0].is_number_integer() && j[1].is_number_integer()) {
    p = PointRef{j[0].get<std::int64_t>(), j[1].get<std::int64_t>()};
  } else {
    throw UnknownPoint("cannot decode point " + j.dump() + " in " + describe());
  }
  check(p);
  return p;
}

std::vector<PointRef> MetricSpace::growth_base_points(std::int64_t) const {
  if (traits_.finite) return points();
  return {basepoint()};
}

std::vector<PointRef> MetricSpace::separation_centers(int) const {
  if (traits_.finite) return points();
  return {basepoint()};
}

std::optional<WitnessTargets> MetricSpace::witness_targets(const Dist&, const Dist&, int) const {
  return std::nullopt;
}

Rational MeasuredSpaceHandle::mass(const std::vector<PointRef>& set) const {
  Rational total(0);
  for (const auto& p : set) total += mu(p);
  return total;
}

void require_positive(const Dist& delta, const char* what) {
  if (delta.is_infinite() || delta.is_zero()) throw InvalidArgument(std::string(what) + " must be finite and positive");
}

}  // namespace coarse
