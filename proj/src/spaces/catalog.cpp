#include "coarse/catalog.hpp"

#include "coarse/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace coarse {

namespace {

constexpr std::int64_t kMaxUltrametricNeighborBits = 24;
constexpr std::int64_t kMaxPrimeCycleWindow = 50'000'000;

std::string point_text(const PointRef& p) {
  std::ostringstream os;
  os << p;
  return os.str();
}

[[noreturn]] void unknown(const PointRef& p, const std::string& space) {
  throw UnknownPoint("unknown point " + point_text(p) + " in " + space);
}

[[noreturn]] void beyond(const std::string& what, const std::string& space) {
  throw BudgetExceeded(what + " lies outside the window of " + space);
}

int heap_depth(std::int64_t h) { return static_cast<int>(std::bit_width(static_cast<std::uint64_t>(h))) - 1; }

std::int64_t factorial(int n) {
  std::int64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

// ---------------------------------------------------------------- integer line

IntegerLine::IntegerLine(std::int64_t window) : window_(window) {
  if (window < 1) throw InvalidArgument("integer_line window must be positive");
  traits_.vertex_transitive = true;
  traits_.graph_metric = true;
  traits_.quasi_geodesic = true;
  traits_.coarsely_bounded_geometry = true;
  traits_.max_degree = 2;
  traits_.step_growth = GrowthClass::subexponential;
  traits_.growth_formula = "|B(x,l)| = 2l+1";
  traits_.catalog_tag = "integer_line";
}

std::string IntegerLine::describe() const { return "integer_line(window=" + std::to_string(window_) + ")"; }

void IntegerLine::check(const PointRef& p) const {
  if (p.minor != 0) unknown(p, describe());
  if (p.major < -window_ || p.major > window_) beyond("point " + point_text(p), describe());
}

Dist IntegerLine::distance(const PointRef& a, const PointRef& b) const {
  check(a);
  check(b);
  return Dist(std::abs(a.major - b.major));
}

std::vector<PointRef> IntegerLine::delta_neighbors(const PointRef& x, const Dist& delta) const {
  require_positive(delta, "delta");
  check(x);
  std::int64_t k = delta.floor();
  if (std::abs(x.major) + k > window_) beyond("a " + delta.to_string() + "-neighbor of " + point_text(x), describe());
  std::vector<PointRef> out;
  for (std::int64_t m = x.major - k; m <= x.major + k; ++m)
    if (m != x.major) out.push_back(PointRef{m, 0});
  return out;
}

// ---------------------------------------------------------------- log line

namespace {

Dist log_distance(std::int64_t gap) {
  if (gap == 0) return Dist(0);
  auto g = static_cast<std::uint64_t>(gap) + 1;
  if (std::has_single_bit(g)) return Dist(static_cast<std::int64_t>(std::bit_width(g)) - 1);
  return Dist::approx(std::log2(static_cast<double>(g)));
}

}  // namespace

LogLine::LogLine(std::int64_t window) : window_(window) {
  if (window < 1) throw InvalidArgument("log_line window must be positive");
  traits_.vertex_transitive = true;
  traits_.quasi_geodesic = false;
  traits_.coarsely_bounded_geometry = true;
  traits_.step_growth = GrowthClass::subexponential;
  traits_.growth_formula = "V_delta(l) = 2l*K+1 with K = floor(2^delta)-1";
  traits_.catalog_tag = "log_line";
}

std::string LogLine::describe() const { return "log_line(window=" + std::to_string(window_) + ")"; }

void LogLine::check(const PointRef& p) const {
  if (p.minor != 0) unknown(p, describe());
  if (p.major < -window_ || p.major > window_) beyond("point " + point_text(p), describe());
}

Dist LogLine::distance(const PointRef& a, const PointRef& b) const {
  check(a);
  check(b);
  return log_distance(std::abs(a.major - b.major));
}

std::int64_t LogLine::reach(const Dist& delta) {
  require_positive(delta, "delta");
  double v = delta.to_double();
  if (v > 61.0) throw BudgetExceeded("log_line neighbor reach for delta " + delta.to_string() + " overflows");
  auto k = static_cast<std::int64_t>(std::floor(std::exp2(v))) - 1;
  k = std::max<std::int64_t>(k, 0);
  while (log_distance(k + 1) <= delta) ++k;
  while (k > 0 && log_distance(k) > delta) --k;
  return k;
}

std::vector<PointRef> LogLine::delta_neighbors(const PointRef& x, const Dist& delta) const {
  check(x);
  std::int64_t k = reach(delta);
  if (std::abs(x.major) + k > window_) beyond("a " + delta.to_string() + "-neighbor of " + point_text(x), describe());
  std::vector<PointRef> out;
  out.reserve(static_cast<std::size_t>(2 * k));
  for (std::int64_t m = x.major - k; m <= x.major + k; ++m)
    if (m != x.major) out.push_back(PointRef{m, 0});
  return out;
}

// ---------------------------------------------------------------- ultrametric product

UltrametricProduct::UltrametricProduct(int window) : window_(window) {
  if (window < 1 || window > 62) throw InvalidArgument("ultrametric_product window must be in [1, 62]");
  traits_.vertex_transitive = true;
  traits_.ultrametric = true;
  traits_.bounded_components = true;
  traits_.quasi_geodesic = false;
  traits_.coarsely_bounded_geometry = true;
  traits_.step_growth = GrowthClass::subexponential;
  traits_.growth_formula = "|B(x,r)| = 2^floor(r); V_delta(l) = 2^floor(delta) for l >= 1";
  traits_.catalog_tag = "ultrametric_product";
}

std::string UltrametricProduct::describe() const {
  return "ultrametric_product(window=" + std::to_string(window_) + ")";
}

void UltrametricProduct::check(const PointRef& p) const {
  if (p.minor != 0 || p.major < 0) unknown(p, describe());
  if ((static_cast<std::uint64_t>(p.major) >> window_) != 0) beyond("point " + point_text(p), describe());
}

Dist UltrametricProduct::distance(const PointRef& a, const PointRef& b) const {
  check(a);
  check(b);
  auto diff = static_cast<std::uint64_t>(a.major ^ b.major);
  return Dist(static_cast<std::int64_t>(std::bit_width(diff)));
}

std::vector<PointRef> UltrametricProduct::delta_neighbors(const PointRef& x, const Dist& delta) const {
  require_positive(delta, "delta");
  check(x);
  std::int64_t bits = delta.floor();
  if (bits > window_) beyond("coordinate " + std::to_string(bits), describe());
  if (bits > kMaxUltrametricNeighborBits)
    throw BudgetExceeded("ultrametric_product: 2^" + std::to_string(bits) + " neighbors exceed the enumeration budget");
  std::vector<PointRef> out;
  const std::int64_t count = std::int64_t{1} << bits;
  out.reserve(static_cast<std::size_t>(count));
  for (std::int64_t s = 1; s < count; ++s) out.push_back(PointRef{x.major ^ s, 0});
  std::sort(out.begin(), out.end());
  return out;
}

nlohmann::json UltrametricProduct::encode(const PointRef& p) const {
  auto j = nlohmann::json::array();
  auto mask = static_cast<std::uint64_t>(p.major);
  int top = static_cast<int>(std::bit_width(mask));
  for (int k = 1; k <= top; ++k) j.push_back(((mask >> (k - 1)) & 1U) ? k : 0);
  return j;
}

PointRef UltrametricProduct::decode(const nlohmann::json& j) const {
  if (!j.is_array()) throw UnknownPoint("ultrametric_product points are coordinate lists, got " + j.dump());
  std::int64_t mask = 0;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto k = static_cast<std::int64_t>(i + 1);
    if (!j[i].is_number_integer()) throw UnknownPoint("bad coordinate in " + j.dump());
    auto v = j[i].get<std::int64_t>();
    if (v != 0 && v != k) throw UnknownPoint("coordinate " + std::to_string(k) + " must be 0 or " + std::to_string(k));
    if (v != 0) {
      if (k > window_) beyond("coordinate " + std::to_string(k), describe());
      mask |= std::int64_t{1} << (k - 1);
    }
  }
  return PointRef{mask, 0};
}

// ---------------------------------------------------------------- decorated line

void DecoratedLine::check(const PointRef& p) const {
  if (p.major < 0) unknown(p, describe());
  if (p.major > window_) beyond("point " + point_text(p), describe());
  if (p.minor != 0 && !valid_position(p.major, p.minor)) unknown(p, describe());
}

Dist DecoratedLine::distance(const PointRef& a, const PointRef& b) const {
  check(a);
  check(b);
  if (a.major == b.major) return Dist(gadget_distance(a.major, a.minor, b.minor));
  return Dist(depth(a.major, a.minor) + std::abs(a.major - b.major) + depth(b.major, b.minor));
}

std::vector<PointRef> DecoratedLine::delta_neighbors(const PointRef& x, const Dist& delta) const {
  require_positive(delta, "delta");
  check(x);
  const std::int64_t rho = delta.floor();
  const std::int64_t a = x.major;
  const std::int64_t rem = rho - depth(a, x.minor);
  std::vector<PointRef> out;
  if (rem < 0) {
    for (auto j : gadget_ball(a, x.minor, rho)) out.push_back(PointRef{a, j});
    std::sort(out.begin(), out.end());
    return out;
  }
  if (a + rem > window_) beyond("a " + delta.to_string() + "-neighbor of " + point_text(x), describe());
  for (std::int64_t m = std::max<std::int64_t>(0, a - rem); m <= a + rem; ++m)
    if (m != a || x.minor != 0) out.push_back(PointRef{m, 0});
  for (auto b : attachments(std::max<std::int64_t>(0, a - rem), a + rem)) {
    if (b == a) {
      for (auto j : gadget_ball(a, x.minor, rho)) out.push_back(PointRef{a, j});
    } else if (rem - std::abs(a - b) >= 1) {
      for (auto j : gadget_ball(b, 0, rem - std::abs(a - b))) out.push_back(PointRef{b, j});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------- prime cycle

PrimeCycle::PrimeCycle(std::int64_t window) : DecoratedLine(window) {
  if (window < 1 || window > kMaxPrimeCycleWindow)
    throw InvalidArgument("prime_cycle window must be in [1, " + std::to_string(kMaxPrimeCycleWindow) + "]");
  std::vector<bool> composite(static_cast<std::size_t>(window) + 1, false);
  for (std::int64_t p = 2; p <= window; ++p) {
    if (composite[p]) continue;
    for (std::int64_t m = p * p; m <= window; m += p) composite[m] = true;
    std::int64_t pk = p;
    for (std::int64_t k = 1; pk <= window; ++k) {
      powers_.emplace(pk, std::make_pair(p, k));
      if (pk > window / p) break;
      pk *= p;
    }
  }
  traits_.quasi_geodesic = false;
  traits_.coarsely_bounded_geometry = false;
  traits_.coding_map_zero = true;
  traits_.growth_formula = "V_delta(1) unbounded for delta >= 2 (cycles G_2^k of size 2k)";
  traits_.catalog_tag = "prime_cycle";
}

std::string PrimeCycle::describe() const { return "prime_cycle(window=" + std::to_string(window_) + ")"; }

std::vector<std::int64_t> PrimeCycle::attachments(std::int64_t lo, std::int64_t hi) const {
  std::vector<std::int64_t> out;
  for (auto it = powers_.lower_bound(lo); it != powers_.end() && it->first <= hi; ++it) out.push_back(it->first);
  return out;
}

std::optional<std::pair<std::int64_t, std::int64_t>> PrimeCycle::prime_power(std::int64_t a) const {
  auto it = powers_.find(a);
  if (it == powers_.end()) return std::nullopt;
  return it->second;
}

std::vector<PointRef> PrimeCycle::separation_centers(int level) const {
  std::vector<PointRef> out;
  for (std::int64_t p : {2, 3, 5, 7}) {
    std::int64_t pk = 1;
    bool fits = true;
    for (int k = 0; k < level && fits; ++k) {
      if (pk > window_ / p) fits = false;
      pk *= p;
    }
    if (fits && level >= 1) out.push_back(PointRef{pk, 0});
  }
  if (out.empty()) beyond("level " + std::to_string(level), describe());
  return out;
}

bool PrimeCycle::valid_position(std::int64_t a, std::int64_t pos) const {
  auto pp = prime_power(a);
  return pp && pos >= 1 && pos < pp->first * pp->second;
}

std::int64_t PrimeCycle::ring(std::int64_t a, std::int64_t i, std::int64_t j) const {
  auto [p, k] = powers_.at(a);
  std::int64_t n = p * k;
  std::int64_t d = std::abs(i - j);
  return std::min(d, n - d);
}

std::int64_t PrimeCycle::depth(std::int64_t a, std::int64_t pos) const {
  if (pos == 0) return 0;
  return std::min(ring(a, pos, 0), powers_.at(a).first);
}

std::int64_t PrimeCycle::gadget_distance(std::int64_t a, std::int64_t i, std::int64_t j) const {
  if (i == j) return 0;
  return std::min(ring(a, i, j), powers_.at(a).first);
}

std::vector<std::int64_t> PrimeCycle::gadget_ball(std::int64_t a, std::int64_t i, std::int64_t radius) const {
  auto pp = prime_power(a);
  if (!pp || radius < 1) return {};
  auto [p, k] = *pp;
  const std::int64_t n = p * k;
  std::vector<std::int64_t> out;
  if (radius >= p) {
    for (std::int64_t j = 1; j < n; ++j)
      if (j != i) out.push_back(j);
    return out;
  }
  std::set<std::int64_t> found;
  for (std::int64_t t = 1; t <= radius && t < n; ++t) {
    found.insert((i + t) % n);
    found.insert(((i - t) % n + n) % n);
  }
  for (auto j : found)
    if (j != 0 && j != i) out.push_back(j);
  return out;
}

// ---------------------------------------------------------------- tree line

TreeLine::TreeLine(std::int64_t window, std::vector<std::int64_t> schedule) : DecoratedLine(window) {
  if (window < 1) throw InvalidArgument("tree_line window must be positive");
  if (schedule.empty()) throw InvalidArgument("tree_line schedule is empty");
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (schedule[i] < 0) throw InvalidArgument("tree_line schedule entries must be nonnegative");
    if (i > 0 && schedule[i] <= schedule[i - 1]) throw InvalidArgument("tree_line schedule must be strictly increasing");
  }
  for (std::size_t i = 0; i < schedule.size() && schedule[i] <= window; ++i) {
    schedule_.push_back(schedule[i]);
    height_.emplace(schedule[i], static_cast<std::int64_t>(i + 1));
  }
  if (!schedule_.empty() && schedule_.size() > 60) throw InvalidArgument("tree_line supports at most 60 trees");
  traits_.graph_metric = true;
  traits_.quasi_geodesic = true;
  traits_.coarsely_bounded_geometry = true;
  traits_.max_degree = 4;
  traits_.step_growth = GrowthClass::exponential;
  traits_.growth_formula = "sup_x |B(x,l)| >= 2^(l+1)-1 at roots x_n with n >= l";
  traits_.catalog_tag = "tree_line";
}

std::string TreeLine::describe() const { return "tree_line(window=" + std::to_string(window_) + ")"; }

std::vector<std::int64_t> TreeLine::attachments(std::int64_t lo, std::int64_t hi) const {
  std::vector<std::int64_t> out;
  for (auto it = height_.lower_bound(lo); it != height_.end() && it->first <= hi; ++it) out.push_back(it->first);
  return out;
}

std::int64_t TreeLine::root(std::int64_t n) const {
  if (n < 1) throw InvalidArgument("tree_line trees are indexed from 1");
  if (n > static_cast<std::int64_t>(schedule_.size())) beyond("x_" + std::to_string(n), describe());
  return schedule_[static_cast<std::size_t>(n - 1)];
}

std::int64_t TreeLine::height_at(std::int64_t a) const {
  auto it = height_.find(a);
  return it == height_.end() ? 0 : it->second;
}

std::vector<PointRef> TreeLine::growth_base_points(std::int64_t reach) const {
  std::vector<PointRef> out{PointRef{0, 0}};
  for (auto x : schedule_)
    if (x != 0 && x + reach <= window_) out.push_back(PointRef{x, 0});
  return out;
}

std::optional<WitnessTargets> TreeLine::witness_targets(const Dist& delta, const Dist& R, int) const {
  if (!R.is_exact() || !is_integer(R.rational()) || R.rational() < 1)
    throw PreconditionFailed("tree_line witness needs a positive integer R, got " + R.to_string());
  if (delta < Dist(1)) throw PreconditionFailed("tree_line witness needs delta >= 1");
  const std::int64_t r = R.floor();
  if (r > 20) throw BudgetExceeded("tree_line witness with 2^" + std::to_string(r) + " arms");
  WitnessTargets t;
  t.hub = PointRef{root(2 * r), 0};
  for (std::int64_t y = std::int64_t{1} << r; y < (std::int64_t{1} << (r + 1)); ++y)
    t.endpoints.push_back(PointRef{t.hub.major, y << r});
  t.note = "hub x_{2R}; one leaf below each level-R vertex of T_{2R}";
  return t;
}

bool TreeLine::valid_position(std::int64_t a, std::int64_t pos) const {
  std::int64_t n = height_at(a);
  return n > 0 && pos >= 2 && heap_depth(pos) <= n;
}

std::int64_t TreeLine::depth(std::int64_t, std::int64_t pos) const { return pos == 0 ? 0 : heap_depth(pos); }

std::int64_t TreeLine::gadget_distance(std::int64_t, std::int64_t i, std::int64_t j) const {
  std::int64_t u = i == 0 ? 1 : i;
  std::int64_t v = j == 0 ? 1 : j;
  std::int64_t d = 0;
  while (heap_depth(u) > heap_depth(v)) u >>= 1, ++d;
  while (heap_depth(v) > heap_depth(u)) v >>= 1, ++d;
  while (u != v) u >>= 1, v >>= 1, d += 2;
  return d;
}

std::vector<std::int64_t> TreeLine::gadget_ball(std::int64_t a, std::int64_t i, std::int64_t radius) const {
  const std::int64_t n = height_at(a);
  if (n == 0 || radius < 1) return {};
  const std::int64_t start = i == 0 ? 1 : i;
  std::unordered_set<std::int64_t> seen{start};
  std::vector<std::int64_t> frontier{start};
  std::vector<std::int64_t> out;
  for (std::int64_t r = 0; r < radius && !frontier.empty(); ++r) {
    std::vector<std::int64_t> next;
    for (auto h : frontier) {
      std::int64_t cand[3] = {h > 1 ? h / 2 : 0, heap_depth(h) < n ? 2 * h : 0, heap_depth(h) < n ? 2 * h + 1 : 0};
      for (auto c : cand)
        if (c != 0 && seen.insert(c).second) {
          next.push_back(c);
          if (c >= 2) out.push_back(c);
        }
    }
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------- branch tree

BranchTree::BranchTree(int window) : window_(window) {
  if (window < 1 || window > 19) throw InvalidArgument("branch_tree window (maximum depth) must be in [1, 19]");
  traits_.graph_metric = true;
  traits_.quasi_geodesic = true;
  traits_.coarsely_bounded_geometry = false;
  traits_.measured_volume_finite = true;
  traits_.measured_growth = GrowthClass::exponential;
  traits_.growth_formula = "mu(T_v(l)) = (2^(l+1)-1) mu(v); mu(B(v,l)) <= 2^(l+2)";
  traits_.catalog_tag = "branch_tree";
  pair_points_ = true;
}

std::string BranchTree::describe() const { return "branch_tree(window=" + std::to_string(window_) + ")"; }

void BranchTree::check(const PointRef& p) const {
  if (p.major < 0 || p.major > 19 || p.minor < 0) unknown(p, describe());
  if (p.minor >= factorial(static_cast<int>(p.major) + 1)) unknown(p, describe());
  if (p.major > window_) beyond("point " + point_text(p), describe());
}

std::vector<PointRef> BranchTree::children(const PointRef& v) const {
  check(v);
  if (v.major >= window_) beyond("children of " + point_text(v), describe());
  std::vector<PointRef> out;
  const std::int64_t c = v.major + 2;
  for (std::int64_t j = 0; j < c; ++j) out.push_back(PointRef{v.major + 1, v.minor * c + j});
  return out;
}

std::optional<PointRef> BranchTree::parent(const PointRef& v) const {
  if (v.major == 0) return std::nullopt;
  return PointRef{v.major - 1, v.minor / (v.major + 1)};
}

Rational BranchTree::measure(const PointRef& v) {
  return Rational(Integer(std::int64_t{1} << v.major), Integer(factorial(static_cast<int>(v.major) + 1)));
}

Dist BranchTree::distance(const PointRef& a, const PointRef& b) const {
  check(a);
  check(b);
  PointRef u = a;
  PointRef v = b;
  std::int64_t d = 0;
  while (u.major > v.major) u = *parent(u), ++d;
  while (v.major > u.major) v = *parent(v), ++d;
  while (u != v) u = *parent(u), v = *parent(v), d += 2;
  return Dist(d);
}

std::vector<PointRef> BranchTree::delta_neighbors(const PointRef& x, const Dist& delta) const {
  require_positive(delta, "delta");
  check(x);
  std::int64_t rho = delta.floor();
  std::unordered_set<PointRef> seen{x};
  std::vector<PointRef> frontier{x};
  std::vector<PointRef> out;
  for (std::int64_t r = 0; r < rho && !frontier.empty(); ++r) {
    std::vector<PointRef> next;
    for (const auto& v : frontier) {
      auto adj = children(v);
      if (auto p = parent(v)) adj.push_back(*p);
      for (const auto& w : adj)
        if (seen.insert(w).second) {
          next.push_back(w);
          out.push_back(w);
        }
    }
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PointRef> BranchTree::separation_centers(int level) const {
  if (level < 0 || level > window_) beyond("level " + std::to_string(level), describe());
  return {PointRef{level, 0}};
}

std::optional<WitnessTargets> BranchTree::witness_targets(const Dist&, const Dist& R, int level) const {
  if (R.is_infinite()) throw PreconditionFailed("R must be finite");
  const std::int64_t m = std::max<std::int64_t>(1, R.ceil() / 2 + (R.ceil() % 2));
  WitnessTargets t;
  t.hub = PointRef{level, 0};
  check(t.hub);
  for (auto c : children(t.hub)) {
    PointRef leaf = c;
    for (std::int64_t s = 1; s < m; ++s) leaf = children(leaf).front();
    t.endpoints.push_back(leaf);
  }
  t.note = "hub at depth " + std::to_string(level) + "; one descendant " + std::to_string(m) +
           " levels down through each child";
  return t;
}

// ---------------------------------------------------------------- regular tree

RegularTree::RegularTree(int degree, int window) : degree_(degree), window_(window) {
  if (degree < 3) throw InvalidArgument("regular_tree degree must be at least 3");
  if (window < 1) throw InvalidArgument("regular_tree window must be positive");
  double count = std::log2(static_cast<double>(degree)) + (window - 1) * std::log2(static_cast<double>(degree - 1));
  if (count > 60) throw InvalidArgument("regular_tree window too deep for 64-bit vertex indices");
  traits_.vertex_transitive = true;
  traits_.graph_metric = true;
  traits_.quasi_geodesic = true;
  traits_.coarsely_bounded_geometry = true;
  traits_.max_degree = degree;
  traits_.step_growth = GrowthClass::exponential;
  traits_.growth_formula = "|B(x,l)| = 1 + d((d-1)^l - 1)/(d-2)";
  traits_.catalog_tag = "regular_tree";
  pair_points_ = true;
}

std::string RegularTree::describe() const {
  return "regular_tree(degree=" + std::to_string(degree_) + ", window=" + std::to_string(window_) + ")";
}

void RegularTree::check(const PointRef& p) const {
  if (p.major < 0 || p.minor < 0) unknown(p, describe());
  if (p.major > window_) beyond("point " + point_text(p), describe());
  std::int64_t count = 1;
  if (p.major >= 1) {
    count = degree_;
    for (std::int64_t n = 1; n < p.major; ++n) count *= degree_ - 1;
  }
  if (p.minor >= count) unknown(p, describe());
}

std::optional<PointRef> RegularTree::parent(const PointRef& v) const {
  if (v.major == 0) return std::nullopt;
  if (v.major == 1) return PointRef{0, 0};
  return PointRef{v.major - 1, v.minor / (degree_ - 1)};
}

std::vector<PointRef> RegularTree::adjacent(const PointRef& v) const {
  check(v);
  if (v.major >= window_) beyond("children of " + point_text(v), describe());
  std::vector<PointRef> out;
  if (auto p = parent(v)) out.push_back(*p);
  if (v.major == 0) {
    for (std::int64_t j = 0; j < degree_; ++j) out.push_back(PointRef{1, j});
  } else {
    for (std::int64_t j = 0; j < degree_ - 1; ++j) out.push_back(PointRef{v.major + 1, v.minor * (degree_ - 1) + j});
  }
  return out;
}

Dist RegularTree::distance(const PointRef& a, const PointRef& b) const {
  check(a);
  check(b);
  PointRef u = a;
  PointRef v = b;
  std::int64_t d = 0;
  while (u.major > v.major) u = *parent(u), ++d;
  while (v.major > u.major) v = *parent(v), ++d;
  while (u != v) u = *parent(u), v = *parent(v), d += 2;
  return Dist(d);
}

std::vector<PointRef> RegularTree::delta_neighbors(const PointRef& x, const Dist& delta) const {
  require_positive(delta, "delta");
  check(x);
  std::int64_t rho = delta.floor();
  std::unordered_set<PointRef> seen{x};
  std::vector<PointRef> frontier{x};
  std::vector<PointRef> out;
  for (std::int64_t r = 0; r < rho && !frontier.empty(); ++r) {
    std::vector<PointRef> next;
    for (const auto& v : frontier)
      for (const auto& w : adjacent(v))
        if (seen.insert(w).second) {
          next.push_back(w);
          out.push_back(w);
        }
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PointRef> RegularTree::separation_centers(int level) const {
  if (level < 0 || level > window_) beyond("level " + std::to_string(level), describe());
  return {PointRef{level, 0}};
}

// ---------------------------------------------------------------- coarse union

CoarseUnion::CoarseUnion(std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>> pieces, std::string label)
    : label_(std::move(label)) {
  if (pieces.empty()) throw InvalidArgument("coarse_union needs at least one piece");
  for (std::size_t n = 0; n < pieces.size(); ++n) {
    Piece piece;
    std::int64_t size = 1;
    for (auto [a, b] : pieces[n]) {
      if (a < 0 || b < 0) throw InvalidArgument("coarse_union vertex labels must be nonnegative");
      if (a == b) throw InvalidArgument("loop edge in coarse_union piece " + std::to_string(n + 1));
      size = std::max({size, a + 1, b + 1});
    }
    if (size > 2000) throw InvalidArgument("coarse_union piece too large");
    std::vector<std::vector<std::int64_t>> adj(static_cast<std::size_t>(size));
    for (auto [a, b] : pieces[n]) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    piece.size = size;
    piece.hops.assign(size, std::vector<std::int64_t>(size, -1));
    for (std::int64_t s = 0; s < size; ++s) {
      auto& row = piece.hops[s];
      std::deque<std::int64_t> queue{s};
      row[s] = 0;
      while (!queue.empty()) {
        auto v = queue.front();
        queue.pop_front();
        for (auto w : adj[v])
          if (row[w] < 0) row[w] = row[v] + 1, queue.push_back(w);
      }
      for (auto h : row) {
        if (h < 0) throw InvalidArgument("coarse_union piece " + std::to_string(n + 1) + " is not connected");
        piece.diameter = std::max(piece.diameter, h);
      }
    }
    pieces_.push_back(std::move(piece));
  }
  traits_.finite = true;
  traits_.bounded_components = true;
  traits_.growth_formula = "d(x,y) = max(n, m, diam X_n, diam X_m) across pieces";
  traits_.catalog_tag = "coarse_union";
  pair_points_ = true;
}

void CoarseUnion::check(const PointRef& p) const {
  if (p.major < 1 || p.minor < 0) unknown(p, describe());
  if (p.major > static_cast<std::int64_t>(pieces_.size())) beyond("piece " + std::to_string(p.major), describe());
  if (p.minor >= pieces_[p.major - 1].size) unknown(p, describe());
}

std::int64_t CoarseUnion::diameter(std::int64_t piece) const {
  if (piece < 1 || piece > static_cast<std::int64_t>(pieces_.size()))
    throw InvalidArgument("no piece " + std::to_string(piece));
  return pieces_[piece - 1].diameter;
}

Dist CoarseUnion::distance(const PointRef& a, const PointRef& b) const {
  check(a);
  check(b);
  if (a.major == b.major) return Dist(pieces_[a.major - 1].hops[a.minor][b.minor]);
  return Dist(std::max({a.major, b.major, diameter(a.major), diameter(b.major)}));
}

std::vector<PointRef> CoarseUnion::delta_neighbors(const PointRef& x, const Dist& delta) const {
  require_positive(delta, "delta");
  check(x);
  std::vector<PointRef> out;
  for (const auto& p : points())
    if (p != x && distance(x, p) <= delta) out.push_back(p);
  return out;
}

std::vector<PointRef> CoarseUnion::points() const {
  std::vector<PointRef> out;
  for (std::size_t n = 0; n < pieces_.size(); ++n)
    for (std::int64_t v = 0; v < pieces_[n].size; ++v) out.push_back(PointRef{static_cast<std::int64_t>(n + 1), v});
  return out;
}

// ---------------------------------------------------------------- factory

namespace {

class Params {
 public:
  Params(const nlohmann::json& j, std::string tag, std::set<std::string> allowed) : j_(j), tag_(std::move(tag)) {
    if (j_.is_null()) return;
    if (!j_.is_object()) throw InvalidArgument(tag_ + ": parameters must be a JSON object");
    for (const auto& [key, value] : j_.items())
      if (!allowed.count(key)) throw InvalidArgument(tag_ + ": unknown parameter '" + key + "'");
  }

  std::int64_t integer(const std::string& key, std::int64_t fallback) const {
    if (j_.is_null() || !j_.contains(key)) return fallback;
    const auto& v = j_.at(key);
    if (!v.is_number_integer()) throw InvalidArgument(tag_ + ": parameter '" + key + "' must be an integer");
    return v.get<std::int64_t>();
  }

  const nlohmann::json* get(const std::string& key) const {
    if (j_.is_null() || !j_.contains(key)) return nullptr;
    return &j_.at(key);
  }

 private:
  const nlohmann::json& j_;
  std::string tag_;
};

std::vector<std::int64_t> tree_schedule(const nlohmann::json* spec, std::int64_t window) {
  std::int64_t base = 4;
  if (spec) {
    if (spec->is_array()) {
      std::vector<std::int64_t> out;
      for (const auto& v : *spec) {
        if (!v.is_number_integer()) throw InvalidArgument("tree_line: schedule entries must be integers");
        out.push_back(v.get<std::int64_t>());
      }
      return out;
    }
    if (!spec->is_object() || spec->size() != 1 || !spec->contains("base") || !(*spec)["base"].is_number_integer())
      throw InvalidArgument("tree_line: schedule must be a list or {\"base\": b}");
    base = (*spec)["base"].get<std::int64_t>();
    if (base < 2) throw InvalidArgument("tree_line: schedule base must be at least 2");
  }
  std::vector<std::int64_t> out;
  std::int64_t x = base;
  for (int n = 1; n <= 60; ++n) {
    out.push_back(x);
    if (x > window || x > INT64_MAX / base) break;
    x *= base;
  }
  return out;
}

std::vector<std::pair<std::int64_t, std::int64_t>> family_piece(const std::string& family, std::int64_t n) {
  std::vector<std::pair<std::int64_t, std::int64_t>> edges;
  if (family == "path") {
    for (std::int64_t v = 0; v < n; ++v) edges.emplace_back(v, v + 1);
  } else if (family == "cycle") {
    const std::int64_t size = n + 2;
    for (std::int64_t v = 0; v < size; ++v) edges.emplace_back(v, (v + 1) % size);
  } else if (family == "complete") {
    for (std::int64_t v = 0; v <= n; ++v)
      for (std::int64_t w = v + 1; w <= n; ++w) edges.emplace_back(v, w);
  } else {
    throw InvalidArgument("coarse_union: family must be path, cycle or complete");
  }
  return edges;
}

}  // namespace

std::vector<std::string> catalog_tags() {
  return {"integer_line", "log_line",     "ultrametric_product", "prime_cycle",
          "tree_line",    "branch_tree",  "regular_tree",        "coarse_union"};
}

Example make_example(const std::string& tag, const nlohmann::json& params) {
  Example ex;
  if (tag == "integer_line") {
    Params p(params, tag, {"window"});
    ex.space = std::make_shared<IntegerLine>(p.integer("window", 10'000));
  } else if (tag == "log_line") {
    Params p(params, tag, {"window"});
    ex.space = std::make_shared<LogLine>(p.integer("window", std::int64_t{1} << 22));
  } else if (tag == "ultrametric_product") {
    Params p(params, tag, {"window"});
    ex.space = std::make_shared<UltrametricProduct>(static_cast<int>(p.integer("window", 40)));
  } else if (tag == "prime_cycle") {
    Params p(params, tag, {"window"});
    ex.space = std::make_shared<PrimeCycle>(p.integer("window", 10'000));
  } else if (tag == "tree_line") {
    Params p(params, tag, {"window", "schedule"});
    std::int64_t window = p.integer("window", std::int64_t{1} << 32);
    ex.space = std::make_shared<TreeLine>(window, tree_schedule(p.get("schedule"), window));
  } else if (tag == "branch_tree") {
    Params p(params, tag, {"window"});
    auto tree = std::make_shared<BranchTree>(static_cast<int>(p.integer("window", 12)));
    ex.space = tree;
    ex.measured = MeasuredSpaceHandle{tree, [](const PointRef& v) { return BranchTree::measure(v); }};
  } else if (tag == "regular_tree") {
    Params p(params, tag, {"degree", "window"});
    ex.space = std::make_shared<RegularTree>(static_cast<int>(p.integer("degree", 3)),
                                             static_cast<int>(p.integer("window", 20)));
  } else if (tag == "coarse_union") {
    Params p(params, tag, {"family", "count", "pieces"});
    std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>> pieces;
    std::string label;
    if (const auto* explicit_pieces = p.get("pieces")) {
      if (p.get("family") || p.get("count"))
        throw InvalidArgument("coarse_union: give either pieces or family/count");
      if (!explicit_pieces->is_array()) throw InvalidArgument("coarse_union: pieces must be a list of edge lists");
      for (const auto& piece : *explicit_pieces) {
        std::vector<std::pair<std::int64_t, std::int64_t>> edges;
        for (const auto& e : piece) {
          if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
            throw InvalidArgument("coarse_union: edges must be [a, b] integer pairs");
          edges.emplace_back(e[0].get<std::int64_t>(), e[1].get<std::int64_t>());
        }
        pieces.push_back(std::move(edges));
      }
      label = "coarse_union(pieces=" + std::to_string(pieces.size()) + ")";
    } else {
      std::string family = "cycle";
      if (const auto* f = p.get("family")) {
        if (!f->is_string()) throw InvalidArgument("coarse_union: family must be a string");
        family = f->get<std::string>();
      }
      std::int64_t count = p.integer("count", 6);
      if (count < 1 || count > 200) throw InvalidArgument("coarse_union: count must be in [1, 200]");
      for (std::int64_t n = 1; n <= count; ++n) pieces.push_back(family_piece(family, n));
      label = "coarse_union(family=" + family + ", count=" + std::to_string(count) + ")";
    }
    ex.space = std::make_shared<CoarseUnion>(std::move(pieces), label);
  } else {
    throw InvalidArgument("unknown catalog tag '" + tag + "'");
  }
  return ex;
}

}  // namespace coarse
