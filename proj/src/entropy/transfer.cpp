#include "coarse/entropy.hpp"

#include "coarse/errors.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace coarse {

namespace {

std::string show(const PointRef& p) {
  std::ostringstream os;
  os << p;
  return os.str();
}

}  // namespace

PointMap::PointMap(const std::vector<std::pair<PointRef, PointRef>>& images) {
  for (const auto& [x, y] : images) {
    auto [it, fresh] = images_.emplace(x, y);
    if (!fresh && it->second != y) throw InvalidArgument("point " + show(x) + " is given two images");
  }
}

std::optional<PointRef> PointMap::image(const PointRef& x) const {
  auto it = images_.find(x);
  if (it == images_.end()) return std::nullopt;
  return it->second;
}

PointRef PointMap::power(const PointRef& x, std::int64_t k) const {
  if (k < 0) throw InvalidArgument("negative iterate");
  PointRef y = x;
  for (std::int64_t i = 0; i < k; ++i) {
    auto next = image(y);
    if (!next) {
      throw PreconditionFailed("iterate domain exhausted: f^" + std::to_string(i + 1) + "(" + show(x) +
                               ") needs f at " + show(y));
    }
    y = *next;
  }
  return y;
}

IsometryCheck check_isometry(const MetricSpace& space, const PointMap& f, const std::vector<PointRef>& domain) {
  IsometryCheck out;
  std::vector<PointRef> pts = domain;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<PointRef> img;
  for (const auto& p : pts) {
    auto y = f.image(p);
    if (!y) throw PreconditionFailed("iterate domain exhausted: f is not defined at " + show(p));
    img.push_back(*y);
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      ++out.pairs;
      if (space.distance(pts[i], pts[j]) != space.distance(img[i], img[j])) {
        out.ok = false;
        out.violation = std::make_pair(pts[i], pts[j]);
        return out;
      }
    }
  }
  return out;
}

OrbitSet transfer_orbits(TransferDirection direction, const MetricSpace& space, const PointMap& f,
                         const OrbitSet& orbits) {
  const std::int64_t n = orbits.n;
  // iterates[t][j] = f^j(table[t]) for j <= n
  std::vector<std::vector<PointRef>> iterates(orbits.table.size());
  std::vector<PointRef> domain;
  for (std::size_t t = 0; t < orbits.table.size(); ++t) {
    auto& it = iterates[t];
    it.push_back(orbits.table[t]);
    for (std::int64_t j = 1; j <= n; ++j) {
      domain.push_back(it.back());
      it.push_back(f.power(it.back(), 1));
    }
  }
  auto iso = check_isometry(space, f, domain);
  if (!iso.ok) {
    throw PreconditionFailed("f is not distance-preserving on the pair " + show(iso.violation->first) + ", " +
                             show(iso.violation->second));
  }
  std::vector<DeltaPath> mapped;
  mapped.reserve(orbits.size());
  for (std::size_t i = 0; i < orbits.size(); ++i) {
    auto idx = orbits.indices(i);
    DeltaPath p{{}, orbits.delta};
    for (std::size_t k = 0; k < idx.size(); ++k) {
      const auto power = direction == TransferDirection::forward ? k : static_cast<std::size_t>(n) - k;
      p.points.push_back(iterates[idx[k]][power]);
    }
    mapped.push_back(std::move(p));
  }
  if (mapped.empty()) {
    OrbitSet empty;
    empty.n = n;
    empty.delta = orbits.delta;
    empty.x0 = direction == TransferDirection::forward ? orbits.x0 : f.power(orbits.x0, n);
    return empty;
  }
  return make_orbit_set(mapped);
}

bool is_pseudoorbit(std::span<const PointRef> seq, const Dist& delta, const MetricSpace& space, const PointMap& f) {
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    auto y = f.image(seq[i]);
    if (!y || space.distance(*y, seq[i + 1]) > delta) return false;
  }
  return true;
}

}  // namespace coarse
