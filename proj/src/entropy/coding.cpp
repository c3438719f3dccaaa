#include "coarse/entropy.hpp"

#include "coarse/errors.hpp"

#include <algorithm>
#include <map>

namespace coarse {

namespace {

struct Group {
  std::uint64_t count = 0;
  std::vector<std::vector<std::uint32_t>> coords;  // distinct table indices per position
};

}  // namespace

CodingMapReport check_coding_map(const MetricSpace& space, const PointRef& x0, const Dist& delta, const Dist& R,
                                 std::int64_t n_max, const Caps& caps) {
  require_positive(delta, "delta");
  require_positive(R, "R");
  if (!delta.is_exact() || !R.is_exact()) throw InvalidArgument("the coding map check needs exact delta and R");
  if (n_max < 1) throw InvalidArgument("n_max must be positive");
  space.check(x0);
  CodingMapReport out;
  out.delta = delta;
  out.R = R;
  out.r = R.rational() / 4;
  out.q = floor_of(out.r / delta.rational());
  if (out.q < 1) throw PreconditionFailed("R/4 = " + format_rational(out.r) + " is smaller than delta");
  const Dist r(out.r);

  // every point of P(n_max) is within n_max*delta of x0, and its nearest net point within r of it
  auto window = space.delta_neighbors(x0, delta * n_max + r);
  window.insert(window.begin(), x0);
  if (window.size() > caps.window_points)
    throw BudgetExceeded("coding-map window has " + std::to_string(window.size()) + " points");
  out.window_points = window.size();
  const auto net = greedy_net(space, window, r);
  out.net_size = net.size();

  std::map<PointRef, std::uint32_t> cells;
  auto cell = [&](const PointRef& p) {
    auto it = cells.find(p);
    if (it != cells.end()) return it->second;
    std::uint32_t best = 0;
    Dist best_d = space.distance(p, net[0]);
    for (std::uint32_t i = 1; i < net.size(); ++i) {
      Dist d = space.distance(p, net[i]);
      if (d < best_d) best = i, best_d = d;
    }
    cells.emplace(p, best);
    return best;
  };
  std::map<std::pair<PointRef, PointRef>, Dist> dcache;
  auto dist = [&](const PointRef& a, const PointRef& b) {
    if (a == b) return Dist(0);
    auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
    auto it = dcache.find(key);
    if (it == dcache.end()) it = dcache.emplace(key, space.distance(a, b)).first;
    return it->second;
  };

  for (std::int64_t n = 1; n <= n_max; ++n) {
    CodingMapRow row;
    row.n = n;
    row.worst = Dist(0);
    const std::uint64_t total = count_orbits(space, x0, n, delta, caps.orbits + 1);
    if (total > caps.orbits)
      throw CapExceeded("P(n=" + std::to_string(n) + ") has more than " + std::to_string(caps.orbits) + " paths",
                        total);
    std::vector<std::size_t> positions;
    for (std::int64_t j = 0; j <= n; j += out.q) positions.push_back(static_cast<std::size_t>(j));

    std::vector<PointRef> table;
    std::vector<std::uint32_t> table_cells;
    std::map<std::vector<std::uint32_t>, Group> groups;
    std::vector<std::uint32_t> key(positions.size());
    for_each_orbit(space, x0, n, delta, [&](const std::vector<PointRef>& tbl, std::span<const std::uint32_t> idx) {
      if (table.empty()) {
        table = tbl;
        table_cells.assign(table.size(), UINT32_MAX);
      }
      ++row.paths;
      for (std::size_t j = 0; j < positions.size(); ++j) {
        auto t = idx[positions[j]];
        if (table_cells[t] == UINT32_MAX) table_cells[t] = cell(table[t]);
        key[j] = table_cells[t];
      }
      auto& g = groups[key];
      if (g.coords.empty()) g.coords.resize(idx.size());
      ++g.count;
      for (std::size_t t = 0; t < idx.size(); ++t) {
        auto& c = g.coords[t];
        if (std::find(c.begin(), c.end(), idx[t]) == c.end()) c.push_back(idx[t]);
      }
    });
    row.codes = groups.size();
    // equal codes force orbit distance < R iff every position's point set has diameter < R
    for (const auto& [code, g] : groups) {
      row.largest_group = std::max(row.largest_group, g.count);
      for (const auto& c : g.coords) {
        for (std::size_t a = 0; a < c.size(); ++a)
          for (std::size_t b = a + 1; b < c.size(); ++b) row.worst = max(row.worst, dist(table[c[a]], table[c[b]]));
      }
    }
    row.ok = row.worst < R;
    out.ok = out.ok && row.ok;
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace coarse
