#include "coarse/entropy.hpp"

#include "coarse/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>

namespace coarse {

namespace {

std::string show(const PointRef& p) {
  std::ostringstream os;
  os << p;
  return os.str();
}

}  // namespace

PingPongFamily::PingPongFamily(DeltaPath base, std::vector<DeltaPath> arms, std::int64_t p, Dist R)
    : base_(std::move(base)), arms_(std::move(arms)), p_(p), R_(std::move(R)) {
  if (arms_.empty()) throw PreconditionFailed("a ping-pong family needs at least one arm");
  if (p_ < 1) throw PreconditionFailed("p must be positive");
}

std::optional<std::uint64_t> PingPongFamily::size() const {
  std::uint64_t total = 1;
  for (std::int64_t i = 0; i < p_; ++i) {
    if (total > UINT64_MAX / arms_.size()) return std::nullopt;
    total *= arms_.size();
  }
  return total;
}

std::vector<std::size_t> PingPongFamily::word(std::uint64_t i) const {
  std::vector<std::size_t> w(static_cast<std::size_t>(p_));
  for (auto k = w.size(); k-- > 0;) {
    w[k] = static_cast<std::size_t>(i % arms_.size());
    i /= arms_.size();
  }
  if (i != 0) throw InvalidArgument("member index out of range");
  return w;
}

DeltaPath PingPongFamily::member(std::uint64_t i) const {
  DeltaPath out = base_;
  out.points.reserve(length() + 1);
  for (auto a : word(i)) {
    const auto& arm = arms_[a].points;
    out.points.insert(out.points.end(), arm.begin() + 1, arm.end());
    out.points.insert(out.points.end(), arm.rbegin() + 1, arm.rend());
  }
  return out;
}

double PingPongFamily::rate_bound() const {
  if (arms_.size() == 1) return 0.0;
  return static_cast<double>(p_) * std::log(static_cast<double>(arms_.size())) / static_cast<double>(length());
}

OrbitSet PingPongFamily::materialize(std::uint64_t cap) const {
  auto n = size();
  if (!n || *n > cap) throw CapExceeded("ping-pong family exceeds the cap of " + std::to_string(cap), n ? *n : SIZE_MAX);
  std::vector<DeltaPath> members;
  members.reserve(*n);
  for (std::uint64_t i = 0; i < *n; ++i) members.push_back(member(i));
  return make_orbit_set(members);
}

std::vector<DeltaPath> pad_arms(std::vector<DeltaPath> arms) {
  std::size_t longest = 0;
  for (const auto& a : arms) longest = std::max(longest, a.length());
  for (auto& a : arms) a = pad_to_length(a, longest);
  return arms;
}

PingPongFamily pingpong_witness(const MetricSpace& space, const PointRef& x0, DeltaPath base,
                                std::vector<DeltaPath> arms, std::int64_t p, const Dist& R) {
  require_positive(R, "R");
  if (p < 1) throw PreconditionFailed("p must be positive, got " + std::to_string(p));
  if (arms.empty()) throw PreconditionFailed("no arms given");
  if (base.points.empty()) throw PreconditionFailed("base path is empty");
  if (base.front() != x0) throw PreconditionFailed("base starts at " + show(base.front()) + ", not at x0 = " + show(x0));
  if (!validate_path(base.points, base.delta, space))
    throw PreconditionFailed("base has a step longer than delta = " + base.delta.to_string());
  for (std::size_t i = 0; i < arms.size(); ++i) {
    const auto& a = arms[i];
    const std::string name = "arm " + std::to_string(i);
    if (a.points.empty()) throw PreconditionFailed(name + " is empty");
    if (a.delta != base.delta)
      throw PreconditionFailed(name + " has delta " + a.delta.to_string() + " but the base has " + base.delta.to_string());
    if (a.front() != base.back())
      throw PreconditionFailed(name + " starts at " + show(a.front()) + ", not at the base endpoint " + show(base.back()));
    if (a.length() != arms[0].length())
      throw PreconditionFailed(name + " has length " + std::to_string(a.length()) + " but arm 0 has length " +
                               std::to_string(arms[0].length()) + "; pad the arms first");
    if (!validate_path(a.points, a.delta, space))
      throw PreconditionFailed(name + " has a step longer than delta = " + a.delta.to_string());
  }
  for (std::size_t i = 0; i < arms.size(); ++i) {
    for (std::size_t j = i + 1; j < arms.size(); ++j) {
      Dist d = space.distance(arms[i].back(), arms[j].back());
      if (d < R) {
        throw PreconditionFailed("endpoints of arms " + std::to_string(i) + " and " + std::to_string(j) + " (" +
                                 show(arms[i].back()) + ", " + show(arms[j].back()) + ") are at distance " +
                                 d.to_string() + " < R = " + R.to_string());
      }
    }
  }
  return PingPongFamily(std::move(base), std::move(arms), p, R);
}

PingPongFamily build_pingpong(const MetricSpace& space, const PointRef& x0, const Dist& delta, const Dist& R,
                              std::int64_t p, int level) {
  auto targets = space.witness_targets(delta, R, level);
  if (!targets) throw PreconditionFailed(space.describe() + " offers no witness targets");
  constexpr std::int64_t hop_limit = std::int64_t{1} << 24;
  auto base = shortest_delta_path(space, x0, targets->hub, delta, hop_limit);
  if (!base) throw PreconditionFailed("no delta-path from x0 to the hub " + show(targets->hub));
  std::vector<DeltaPath> arms;
  for (const auto& e : targets->endpoints) {
    auto arm = shortest_delta_path(space, targets->hub, e, delta, hop_limit);
    if (!arm) throw PreconditionFailed("no delta-path from the hub to " + show(e));
    arms.push_back(std::move(*arm));
  }
  return pingpong_witness(space, x0, std::move(*base), pad_arms(std::move(arms)), p, R);
}

SeparationCheck check_separation(const MetricSpace& space, const PingPongFamily& family, std::uint64_t max_members) {
  auto size = family.size();
  if (!size || *size > max_members)
    throw CapExceeded("separation check limited to " + std::to_string(max_members) + " members", size ? *size : SIZE_MAX);
  const std::uint64_t n = *size;
  SeparationCheck out;
  // columns on which all members agree cannot separate anything
  const auto first = family.member(0).points;
  std::vector<char> varying(first.size(), 0);
  for (std::uint64_t i = 1; i < n; ++i) {
    auto m = family.member(i).points;
    for (std::size_t t = 0; t < m.size(); ++t) varying[t] = varying[t] || (m[t] != first[t]);
  }
  std::vector<std::size_t> cols;
  for (std::size_t t = 0; t < varying.size(); ++t)
    if (varying[t]) cols.push_back(t);

  std::vector<PointRef> table;
  std::unordered_map<PointRef, std::uint32_t> index;
  std::vector<std::uint32_t> rows(n * cols.size());
  for (std::uint64_t i = 0; i < n; ++i) {
    auto m = family.member(i).points;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      auto [it, fresh] = index.emplace(m[cols[c]], static_cast<std::uint32_t>(table.size()));
      if (fresh) table.push_back(m[cols[c]]);
      rows[i * cols.size() + c] = it->second;
    }
  }
  const std::size_t k = table.size();
  std::vector<char> far(k * k, 0);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b) far[a * k + b] = far[b * k + a] = space.distance(table[a], table[b]) >= family.R();

  for (std::uint64_t i = 0; i < n; ++i) {
    for (std::uint64_t j = i + 1; j < n; ++j) {
      ++out.pairs;
      bool separated = false;
      for (std::size_t c = 0; c < cols.size() && !separated; ++c)
        separated = far[rows[i * cols.size() + c] * k + rows[j * cols.size() + c]] != 0;
      if (!separated) {
        out.ok = false;
        out.violation = std::make_pair(i, j);
        return out;
      }
    }
  }
  return out;
}

}  // namespace coarse
