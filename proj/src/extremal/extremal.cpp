#include "coarse/extremal.hpp"

#include "coarse/errors.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <bit>
#include <chrono>

namespace coarse {

namespace {

using Bits = boost::dynamic_bitset<std::uint64_t>;

// Pairwise matrices are only precomputed up to this many entries.
constexpr std::size_t kMatrixEntries = std::size_t{1} << 26;

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

class CliqueSearch {
 public:
  CliqueSearch(std::vector<Bits> adj, std::uint64_t budget) : adj_(std::move(adj)), budget_(budget) {}

  void run(std::vector<std::size_t> incumbent) {
    best_ = std::move(incumbent);
    Bits all(adj_.size());
    all.set();
    if (!adj_.empty()) expand(all);
  }

  const std::vector<std::size_t>& best() const { return best_; }
  bool aborted() const { return aborted_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  void expand(Bits P) {
    if (++nodes_ > budget_) {
      aborted_ = true;
      return;
    }
    // greedy coloring gives each vertex an upper bound on cliques through it
    std::vector<std::size_t> order, color;
    Bits U = P;
    std::size_t c = 0;
    while (U.any()) {
      ++c;
      Bits Q = U;
      for (auto v = Q.find_first(); v != Bits::npos; v = Q.find_first()) {
        Q.reset(v);
        Q -= adj_[v];
        U.reset(v);
        order.push_back(v);
        color.push_back(c);
      }
    }
    for (std::size_t i = order.size(); i-- > 0;) {
      if (cur_.size() + color[i] <= best_.size()) return;
      auto v = order[i];
      cur_.push_back(v);
      Bits next = P & adj_[v];
      if (next.none()) {
        if (cur_.size() > best_.size()) best_ = cur_;
      } else {
        expand(std::move(next));
      }
      cur_.pop_back();
      if (aborted_) return;
      P.reset(v);
    }
  }

  std::vector<Bits> adj_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
  std::vector<std::size_t> best_, cur_;
};

}  // namespace

std::string to_string(Certificate c) {
  switch (c) {
    case Certificate::exact: return "exact";
    case Certificate::lower_bound: return "lower-bound";
    case Certificate::upper_bound: return "upper-bound";
  }
  return "unknown";
}

std::string to_string(ExtremalKind k) { return k == ExtremalKind::separated ? "separated" : "dense"; }

MetricItems::MetricItems(std::size_t count, DistanceFn distance) : count_(count), distance_(std::move(distance)) {
  closeness_ = [d = distance_](const Dist& R) -> Closeness {
    return [d, R](std::size_t i, std::size_t j) { return i == j || d(i, j) < R; };
  };
}

MetricItems MetricItems::of_points(SpaceHandle space, std::vector<PointRef> points) {
  auto pts = std::make_shared<const std::vector<PointRef>>(std::move(points));
  MetricItems items(pts->size(), [space, pts](std::size_t i, std::size_t j) {
    return space->distance((*pts)[i], (*pts)[j]);
  });
  items.closeness_ = [space, pts](const Dist& R) -> Closeness {
    const std::size_t n = pts->size();
    if (n * n > kMatrixEntries) {
      return [space, pts, R](std::size_t i, std::size_t j) {
        return i == j || space->distance((*pts)[i], (*pts)[j]) < R;
      };
    }
    auto lt = std::make_shared<std::vector<char>>(n * n, 1);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        char v = space->distance((*pts)[i], (*pts)[j]) < R;
        (*lt)[i * n + j] = v;
        (*lt)[j * n + i] = v;
      }
    }
    return [lt, n](std::size_t i, std::size_t j) { return (*lt)[i * n + j] != 0; };
  };
  return items;
}

MetricItems MetricItems::of_paths(SpaceHandle space, std::shared_ptr<const OrbitSet> orbits) {
  MetricItems items(orbits->size(), [space, orbits](std::size_t i, std::size_t j) {
    Dist best(0);
    auto a = orbits->indices(i), b = orbits->indices(j);
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (a[k] == b[k]) continue;
      Dist d = space->distance(orbits->table[a[k]], orbits->table[b[k]]);
      if (d > best) best = d;
    }
    return best;
  });
  items.closeness_ = [space, orbits](const Dist& R) -> Closeness {
    const std::size_t t = orbits->table.size();
    if (t * t > kMatrixEntries) {
      return [space, orbits, R](std::size_t i, std::size_t j) {
        auto a = orbits->indices(i), b = orbits->indices(j);
        for (std::size_t k = 0; k < a.size(); ++k) {
          if (a[k] != b[k] && !(space->distance(orbits->table[a[k]], orbits->table[b[k]]) < R)) return false;
        }
        return true;
      };
    }
    // orbit distance < R iff every coordinate is < R
    auto lt = std::make_shared<std::vector<char>>(t * t, 1);
    for (std::size_t i = 0; i < t; ++i) {
      for (std::size_t j = i + 1; j < t; ++j) {
        char v = space->distance(orbits->table[i], orbits->table[j]) < R;
        (*lt)[i * t + j] = v;
        (*lt)[j * t + i] = v;
      }
    }
    return [lt, t, orbits](std::size_t i, std::size_t j) {
      auto a = orbits->indices(i), b = orbits->indices(j);
      for (std::size_t k = 0; k < a.size(); ++k) {
        if (!(*lt)[a[k] * t + b[k]]) return false;
      }
      return true;
    };
  };
  return items;
}

MetricItems MetricItems::of_matrix(std::vector<std::vector<Dist>> matrix) {
  const std::size_t n = matrix.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (matrix[i].size() != n) throw InvalidArgument("distance matrix must be square");
    if (!matrix[i][i].is_zero()) throw InvalidArgument("distance matrix must vanish on the diagonal");
    for (std::size_t j = 0; j < i; ++j) {
      if (matrix[i][j] != matrix[j][i]) throw InvalidArgument("distance matrix must be symmetric");
    }
  }
  auto m = std::make_shared<const std::vector<std::vector<Dist>>>(std::move(matrix));
  return MetricItems(n, [m](std::size_t i, std::size_t j) { return (*m)[i][j]; });
}

MetricItems::Closeness MetricItems::closer_than(const Dist& R) const { return closeness_(R); }

std::vector<std::size_t> greedy_independent(std::size_t n,
                                            const std::function<bool(std::size_t, std::size_t)>& conflict) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i) {
    bool ok = std::none_of(out.begin(), out.end(), [&](std::size_t j) { return conflict(j, i); });
    if (ok) out.push_back(i);
  }
  return out;
}

IndependentSet max_independent_set(std::size_t n, const std::function<bool(std::size_t, std::size_t)>& conflict,
                                   std::uint64_t node_budget) {
  std::vector<Bits> compat(n, Bits(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!conflict(i, j)) {
        compat[i].set(j);
        compat[j].set(i);
      }
    }
  }
  CliqueSearch search(std::move(compat), node_budget);
  search.run(greedy_independent(n, conflict));
  IndependentSet out;
  out.selected = search.best();
  std::sort(out.selected.begin(), out.selected.end());
  out.exact = !search.aborted();
  out.nodes = search.nodes();
  return out;
}

ExtremalResult max_separated(const MetricItems& items, const Dist& R, std::size_t exact_limit,
                             std::uint64_t node_budget) {
  require_positive(R, "R");
  auto start = std::chrono::steady_clock::now();
  auto close = items.closer_than(R);
  ExtremalResult out;
  out.R = R;
  out.kind = ExtremalKind::separated;
  if (items.size() <= exact_limit) {
    auto mis = max_independent_set(items.size(), close, node_budget);
    out.selected = std::move(mis.selected);
    out.certificate = mis.exact ? Certificate::exact : Certificate::lower_bound;
    out.stats.nodes = mis.nodes;
  } else {
    out.selected = greedy_independent(items.size(), close);
    out.certificate = Certificate::lower_bound;
  }
  if (items.size() == 1) out.certificate = Certificate::exact;
  out.stats.seconds = seconds_since(start);
  return out;
}

namespace {

class CoverSearch {
 public:
  explicit CoverSearch(std::vector<std::uint64_t> balls) : balls_(std::move(balls)) {
    for (auto b : balls_) widest_ = std::max(widest_, std::popcount(b));
  }

  bool solve(std::uint64_t uncovered, int k) {
    ++nodes_;
    if (uncovered == 0) return true;
    if (k == 0 || static_cast<long>(k) * widest_ < std::popcount(uncovered)) return false;
    const int e = std::countr_zero(uncovered);
    // some chosen ball must contain e; by symmetry these are the balls of e's neighbors
    for (std::uint64_t cand = balls_[e]; cand != 0; cand &= cand - 1) {
      const int c = std::countr_zero(cand);
      chosen_.push_back(static_cast<std::size_t>(c));
      if (solve(uncovered & ~balls_[c], k - 1)) return true;
      chosen_.pop_back();
    }
    return false;
  }

  std::vector<std::size_t> chosen_;
  std::uint64_t nodes_ = 0;

 private:
  std::vector<std::uint64_t> balls_;
  int widest_ = 0;
};

std::vector<std::size_t> greedy_cover(std::size_t n, const MetricItems::Closeness& close) {
  std::vector<std::size_t> out;
  if (n <= 4096) {
    std::vector<Bits> ball(n, Bits(n));
    for (std::size_t i = 0; i < n; ++i) {
      ball[i].set(i);
      for (std::size_t j = i + 1; j < n; ++j) {
        if (close(i, j)) {
          ball[i].set(j);
          ball[j].set(i);
        }
      }
    }
    Bits uncovered(n);
    uncovered.set();
    while (uncovered.any()) {
      std::size_t best = 0, gain = 0;
      for (std::size_t i = 0; i < n; ++i) {
        auto g = (ball[i] & uncovered).count();
        if (g > gain) {
          gain = g;
          best = i;
        }
      }
      out.push_back(best);
      uncovered -= ball[best];
    }
  } else {
    // first uncovered item becomes a center
    std::vector<char> covered(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (covered[i]) continue;
      out.push_back(i);
      for (std::size_t j = i; j < n; ++j) {
        if (!covered[j] && close(i, j)) covered[j] = 1;
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

ExtremalResult min_dense(const MetricItems& items, const Dist& R, std::size_t exact_limit) {
  require_positive(R, "R");
  auto start = std::chrono::steady_clock::now();
  const std::size_t n = items.size();
  auto close = items.closer_than(R);
  ExtremalResult out;
  out.R = R;
  out.kind = ExtremalKind::dense;
  out.selected = greedy_cover(n, close);
  out.certificate = Certificate::upper_bound;
  if (n <= std::min<std::size_t>(exact_limit, 64)) {
    std::vector<std::uint64_t> balls(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      balls[i] |= std::uint64_t{1} << i;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (close(i, j)) {
          balls[i] |= std::uint64_t{1} << j;
          balls[j] |= std::uint64_t{1} << i;
        }
      }
    }
    const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    CoverSearch search(std::move(balls));
    for (int k = 1; k < static_cast<int>(out.selected.size()); ++k) {
      if (search.solve(all, k)) {
        out.selected = search.chosen_;
        std::sort(out.selected.begin(), out.selected.end());
        break;
      }
    }
    out.certificate = Certificate::exact;
    out.stats.nodes = search.nodes_;
  }
  if (n == 1) out.certificate = Certificate::exact;
  out.stats.seconds = seconds_since(start);
  return out;
}

std::vector<PointRef> greedy_net(const MetricSpace& space, const std::vector<PointRef>& window, const Dist& s) {
  if (window.empty()) throw PreconditionFailed("greedy_net needs a nonempty window");
  require_positive(s, "s");
  std::vector<PointRef> order(window.begin() + 1, window.end());
  std::sort(order.begin(), order.end());
  order.erase(std::unique(order.begin(), order.end()), order.end());
  std::vector<PointRef> net{window.front()};
  for (const auto& p : order) {
    if (p == window.front()) continue;
    bool far = std::all_of(net.begin(), net.end(), [&](const PointRef& q) { return !(space.distance(p, q) < s); });
    if (far) net.push_back(p);
  }
  return net;
}

std::optional<std::pair<std::size_t, std::size_t>> separation_violation(const MetricItems& items,
                                                                        const std::vector<std::size_t>& selected,
                                                                        const Dist& R) {
  for (std::size_t a = 0; a < selected.size(); ++a) {
    for (std::size_t b = a + 1; b < selected.size(); ++b) {
      if (selected[a] == selected[b] || items.distance(selected[a], selected[b]) < R) {
        return std::pair{selected[a], selected[b]};
      }
    }
  }
  return std::nullopt;
}

std::optional<std::size_t> density_violation(const MetricItems& items, const std::vector<std::size_t>& selected,
                                             const Dist& R) {
  for (std::size_t i = 0; i < items.size(); ++i) {
    bool covered =
        std::any_of(selected.begin(), selected.end(), [&](std::size_t c) { return items.distance(i, c) < R; });
    if (!covered) return i;
  }
  return std::nullopt;
}

bool is_separated(const MetricItems& items, const std::vector<std::size_t>& selected, const Dist& R) {
  return !separation_violation(items, selected, R).has_value();
}

bool is_dense(const MetricItems& items, const std::vector<std::size_t>& selected, const Dist& R) {
  return !density_violation(items, selected, R).has_value();
}

}  // namespace coarse
