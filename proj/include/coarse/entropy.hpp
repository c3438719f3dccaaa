#pragma once

#include "coarse/extremal.hpp"
#include "coarse/geometry.hpp"
#include "coarse/paths.hpp"
#include "coarse/space.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace coarse {

struct Caps {
  std::uint64_t orbits = 1'000'000;
  std::size_t window_points = 10'000;
  std::size_t exact_packing = kExactPackingLimit;
  std::size_t exact_covering = kExactCoveringLimit;
  std::uint64_t node_budget = kNodeBudget;
};

/// ln(count) / n, and 0 for n = 0.
double rate_of(std::uint64_t count, std::int64_t n);

struct RatePoint {
  std::int64_t n = 0;
  std::uint64_t count = 1;
  Certificate certificate = Certificate::exact;
  double rate = 0;
  /// How the count was obtained: trivial, diameter, solver, greedy, construction.
  std::string method;
  /// |P(n, delta, x0)| when it was enumerated.
  std::optional<std::uint64_t> paths;
};

/// s(n, R, delta, x0). When the whole step ball has diameter < R the answer is 1
/// without enumeration; otherwise P(n) is enumerated under caps.orbits.
RatePoint separated_count(const SpaceHandle& space, const PointRef& x0, std::int64_t n, const Dist& delta,
                          const Dist& R, const Caps& caps = {});

/// r(n, R, delta, x0). Past the exact limit the smaller of a greedy cover and the
/// checkpoint construction is reported as an upper bound.
RatePoint dense_count(const SpaceHandle& space, const PointRef& x0, std::int64_t n, const Dist& delta, const Dist& R,
                      const Caps& caps = {});

/// Covering family built from checkpoints 0, k, 2k, ..., n with k the largest integer
/// such that k * delta < R: one path per realized checkpoint tuple, made of the least
/// shortest delta-path between consecutive checkpoints padded by staying put.
struct CheckpointCover {
  std::int64_t k = 0;
  std::vector<std::int64_t> checkpoints;
  OrbitSet family;
  /// Density against the full P(n) was checked path by path.
  bool verified = false;
};

/// nullopt when R <= delta (no k >= 1). `all`, if given, must be the exhaustive P(n);
/// every member is then checked to lie within R of its representative.
std::optional<CheckpointCover> checkpoint_cover(const MetricSpace& space, const PointRef& x0, std::int64_t n,
                                                const Dist& delta, const Dist& R, const Caps& caps = {},
                                                const OrbitSet* all = nullptr);

struct RateRow {
  std::int64_t n = 0;
  std::optional<RatePoint> separated;
  std::optional<RatePoint> dense;
  /// ln of V_delta(k)^(n/k + 1) with k = ceil(R/delta) - 1.
  std::optional<double> checkpoint_bound_log;
  /// ln of V_delta(ceil(R/delta))^(2 n delta / R + 1).
  std::optional<double> covering_bound_log;
};

struct RateSeries {
  PointRef x0;
  Dist delta;
  Dist R;
  std::int64_t k = 0;
  /// max |B_delta(y, k)| and max |B_delta(y, ceil(R/delta))| over y in B_delta(x0, max n).
  std::optional<std::uint64_t> v_k;
  std::optional<std::uint64_t> v_ceil;
  std::vector<RateRow> rows;
};

struct RateOptions {
  bool separated = true;
  bool dense = true;
};

RateSeries rate_series(const SpaceHandle& space, const PointRef& x0, const Dist& delta, const Dist& R,
                       const std::vector<std::int64_t>& n_list, const Caps& caps = {}, RateOptions options = {});

// ---------------------------------------------------------------- ping-pong witness

/// The family base * a_{i1} * a_{i1}^-1 * ... * a_{ip} * a_{ip}^-1 over all index words,
/// generated on demand. Member i spells its word in base |arms|, most significant first.
class PingPongFamily {
 public:
  PingPongFamily(DeltaPath base, std::vector<DeltaPath> arms, std::int64_t p, Dist R);

  const DeltaPath& base() const { return base_; }
  const std::vector<DeltaPath>& arms() const { return arms_; }
  std::int64_t p() const { return p_; }
  const Dist& R() const { return R_; }
  std::size_t arm_length() const { return arms_.front().length(); }

  /// |arms|^p, or nullopt if it does not fit in 64 bits.
  std::optional<std::uint64_t> size() const;
  std::size_t length() const { return base_.length() + 2 * static_cast<std::size_t>(p_) * arm_length(); }
  std::vector<std::size_t> word(std::uint64_t i) const;
  DeltaPath member(std::uint64_t i) const;
  /// p ln|arms| / (L + 2pD).
  double rate_bound() const;
  OrbitSet materialize(std::uint64_t cap) const;

 private:
  DeltaPath base_;
  std::vector<DeltaPath> arms_;
  std::int64_t p_;
  Dist R_;
};

/// Checks the preconditions (base starts at x0, arms start at the base's end and share
/// one length and delta, arm endpoints pairwise >= R) and throws PreconditionFailed
/// naming the first failure.
PingPongFamily pingpong_witness(const MetricSpace& space, const PointRef& x0, DeltaPath base,
                                std::vector<DeltaPath> arms, std::int64_t p, const Dist& R);

/// Pads every path to the longest one by repeating its last point.
std::vector<DeltaPath> pad_arms(std::vector<DeltaPath> arms);

/// Base and arms from the space's witness targets at `level`, as least shortest delta-paths.
PingPongFamily build_pingpong(const MetricSpace& space, const PointRef& x0, const Dist& delta, const Dist& R,
                              std::int64_t p, int level);

struct SeparationCheck {
  bool ok = true;
  std::uint64_t pairs = 0;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> violation;
};

/// Brute force over all member pairs: some coordinate must be >= R apart.
SeparationCheck check_separation(const MetricSpace& space, const PingPongFamily& family, std::uint64_t max_members);

// ---------------------------------------------------------------- transfer maps

/// A map given by finitely many point images.
class PointMap {
 public:
  PointMap() = default;
  explicit PointMap(const std::vector<std::pair<PointRef, PointRef>>& images);

  std::optional<PointRef> image(const PointRef& x) const;
  /// f^k(x); throws PreconditionFailed when an iterate leaves the domain.
  PointRef power(const PointRef& x, std::int64_t k) const;
  const std::map<PointRef, PointRef>& images() const { return images_; }

 private:
  std::map<PointRef, PointRef> images_;
};

struct IsometryCheck {
  bool ok = true;
  std::size_t pairs = 0;
  std::optional<std::pair<PointRef, PointRef>> violation;
};

/// d(f(a), f(b)) == d(a, b) for all a, b in `domain`.
IsometryCheck check_isometry(const MetricSpace& space, const PointMap& f, const std::vector<PointRef>& domain);

enum class TransferDirection { forward, backward };

/// forward:  (x0, ..., xn) -> (x0, f(x1), ..., f^n(xn)), identity paths to f-pseudoorbits.
/// backward: (x0, ..., xn) -> (f^n(x0), f^{n-1}(x1), ..., xn), f-pseudoorbits to identity paths.
/// f must be distance-preserving on every point it is applied to; this is checked.
OrbitSet transfer_orbits(TransferDirection direction, const MetricSpace& space, const PointMap& f,
                         const OrbitSet& orbits);

/// d(f(y_i), y_{i+1}) <= delta for every step.
bool is_pseudoorbit(std::span<const PointRef> seq, const Dist& delta, const MetricSpace& space, const PointMap& f);

// ---------------------------------------------------------------- growth

enum class SupMode { transitive_exact, window_lower_bound };
std::string to_string(SupMode m);

struct GrowthSeries {
  Dist delta;
  PointRef basepoint;
  bool measured = false;
  SupMode sup_mode = SupMode::window_lower_bound;
  std::string window;
  std::vector<PointRef> base_points;
  /// values[l] = sup over base points of |B_delta(x, l)| or mu(B_delta(x, l)).
  std::vector<Rational> values;
  /// True when the series stopped before l_max because a ball outgrew the point budget.
  bool truncated = false;
};

struct GrowthOptions {
  std::int64_t l_max = 32;
  std::size_t point_budget = 2'000'000;
  /// Stop at the last l whose balls fit the budget and the window instead of throwing.
  bool stop_at_budget = false;
};

GrowthSeries growth_series(const MetricSpace& space, const PointRef& x, const Dist& delta,
                           const GrowthOptions& options = {}, const Measure* mu = nullptr);

/// Least-squares slope of ln(values[l]) against l over the top half of the window.
std::optional<double> fit_log_slope(const std::vector<Rational>& values);

// ---------------------------------------------------------------- coding map

struct CodingMapRow {
  std::int64_t n = 0;
  std::uint64_t paths = 0;
  std::uint64_t codes = 0;
  std::uint64_t largest_group = 0;
  /// Largest orbit distance between two paths sharing a code.
  Dist worst;
  bool ok = true;
};

struct CodingMapReport {
  Dist delta;
  Dist R;
  Rational r;
  std::int64_t q = 0;
  std::size_t net_size = 0;
  std::size_t window_points = 0;
  std::vector<CodingMapRow> rows;
  bool ok = true;
};

/// Codes each path of P(n) by the Voronoi cells (of a greedy maximal R/4-net) of its
/// points at positions 0, q, 2q, ... with q = floor(R / (4 delta)), and checks that
/// equal codes force orbit distance < R, for n = 1..n_max.
CodingMapReport check_coding_map(const MetricSpace& space, const PointRef& x0, const Dist& delta, const Dist& R,
                                 std::int64_t n_max, const Caps& caps = {});

// ---------------------------------------------------------------- classification

enum class Verdict { zero, infinite, inconclusive };
std::string to_string(Verdict v);

struct ClassifyConfig {
  bool allow_zero_rules = true;
  bool allow_bounded_geometry_rule = true;
  bool allow_growth_rule = true;
  bool allow_measured_rule = true;
  std::vector<Dist> deltas{Dist(1), Dist(2)};
  std::int64_t l_max = 1024;
  std::size_t ball_budget = 60'000;
  double zero_slope = 0.05;
  double positive_slope = 0.2;
  Dist bg_s = Dist(2);
  Dist bg_D = Dist(2);
  std::vector<int> bg_depths{1, 2, 3, 4, 5, 6, 7, 8};
  int witness_level = 4;
  std::int64_t witness_p = 2;
  /// Finite spaces up to this size get the ultrametric inequality checked on all triples.
  std::size_t exhaustive_limit = 150;
  Caps caps;
};

struct ClassificationReport {
  std::string space;
  Verdict verdict = Verdict::inconclusive;
  std::string rule;
  bool certified = false;
  /// What the fired rule's evidence points to, before certification is applied.
  Verdict indicated = Verdict::inconclusive;
  nlohmann::json evidence = nlohmann::json::object();
  std::string caveat;
};

ClassificationReport classify(const SpaceHandle& space, const ClassifyConfig& config = {},
                              const std::optional<MeasuredSpaceHandle>& measured = std::nullopt);

struct Obstruction {
  bool obstructed = false;
  std::string reason;
};

/// Coarse entropy cannot drop along a coarse embedding: infinite source and zero target
/// rule one out.
Obstruction embedding_obstruction(const ClassificationReport& source, const ClassificationReport& target);

// ---------------------------------------------------------------- serialization

nlohmann::json to_json(const RatePoint& p);
nlohmann::json to_json(const RateSeries& s, const MetricSpace& space);
nlohmann::json to_json(const GrowthSeries& g, const MetricSpace& space);
nlohmann::json to_json(const CodingMapReport& c);
nlohmann::json to_json(const ClassificationReport& r);

}  // namespace coarse
