#include "coarse/graph.hpp"

#include "coarse/errors.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <istream>
#include <map>
#include <memory>
#include <mutex>
#include <queue>
#include <sstream>
#include <unordered_map>

namespace coarse {

namespace {

class FiniteBase : public MetricSpace {
 public:
  FiniteBase(std::vector<PointRef> pts, std::string name) : points_(std::move(pts)), name_(std::move(name)) {
    std::sort(points_.begin(), points_.end());
    points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
    if (points_.empty()) throw InvalidArgument("a space needs at least one point");
    for (std::size_t i = 0; i < points_.size(); ++i) index_.emplace(points_[i], i);
    traits_.finite = true;
    traits_.bounded_components = true;
  }

  std::string describe() const override { return name_; }
  void check(const PointRef& p) const override { (void)index_of(p); }
  PointRef basepoint() const override { return points_.front(); }
  std::vector<PointRef> points() const override { return points_; }

 protected:
  std::size_t index_of(const PointRef& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) {
      std::ostringstream os;
      os << "unknown point " << p << " in " << name_;
      throw UnknownPoint(os.str());
    }
    return it->second;
  }

  std::vector<PointRef> points_;
  std::unordered_map<PointRef, std::size_t> index_;
  std::string name_;
};

class GraphSpace final : public FiniteBase {
 public:
  GraphSpace(std::vector<PointRef> pts, const std::vector<std::pair<PointRef, PointRef>>& edges)
      : FiniteBase(std::move(pts), "graph"), adjacency_(points_.size()), rows_(points_.size()) {
    for (const auto& [a, b] : edges) {
      std::size_t i = index_of(a);
      std::size_t j = index_of(b);
      adjacency_[i].push_back(j);
      adjacency_[j].push_back(i);
    }
    std::int64_t max_degree = 0;
    for (auto& adj : adjacency_) {
      std::sort(adj.begin(), adj.end());
      adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
      max_degree = std::max<std::int64_t>(max_degree, static_cast<std::int64_t>(adj.size()));
    }
    traits_.graph_metric = true;
    traits_.max_degree = max_degree;
    traits_.coarsely_bounded_geometry = true;
    if (connected()) traits_.quasi_geodesic = true;
  }

  SpaceKind kind() const override { return SpaceKind::graph; }

  bool connected() const {
    const auto& r = row(0);
    return std::all_of(r.begin(), r.end(), [](std::int32_t h) { return h >= 0; });
  }

  Dist distance(const PointRef& a, const PointRef& b) const override {
    std::size_t i = index_of(a);
    std::size_t j = index_of(b);
    std::int32_t h = row(i)[j];
    return h < 0 ? Dist::infinity() : Dist(h);
  }

  std::vector<PointRef> delta_neighbors(const PointRef& x, const Dist& delta) const override {
    require_positive(delta, "delta");
    std::size_t start = index_of(x);
    std::int64_t hops = delta.floor();
    std::vector<std::int32_t> seen(points_.size(), -1);
    std::vector<std::size_t> frontier{start};
    seen[start] = 0;
    std::vector<PointRef> out;
    for (std::int64_t h = 0; h < hops && !frontier.empty(); ++h) {
      std::vector<std::size_t> next;
      for (std::size_t v : frontier)
        for (std::size_t w : adjacency_[v])
          if (seen[w] < 0) {
            seen[w] = static_cast<std::int32_t>(h + 1);
            next.push_back(w);
            out.push_back(points_[w]);
          }
      frontier = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  const std::vector<std::int32_t>& row(std::size_t i) const {
    std::lock_guard lock(mutex_);
    if (!rows_[i]) {
      auto r = std::make_unique<std::vector<std::int32_t>>(points_.size(), -1);
      std::deque<std::size_t> queue{i};
      (*r)[i] = 0;
      while (!queue.empty()) {
        std::size_t v = queue.front();
        queue.pop_front();
        for (std::size_t w : adjacency_[v])
          if ((*r)[w] < 0) {
            (*r)[w] = (*r)[v] + 1;
            queue.push_back(w);
          }
      }
      rows_[i] = std::move(r);
    }
    return *rows_[i];
  }

  std::vector<std::vector<std::size_t>> adjacency_;
  mutable std::vector<std::unique_ptr<std::vector<std::int32_t>>> rows_;
  mutable std::mutex mutex_;
};

class WeightedGraphSpace final : public FiniteBase {
 public:
  WeightedGraphSpace(std::vector<PointRef> pts, const std::map<std::pair<PointRef, PointRef>, Rational>& edges)
      : FiniteBase(std::move(pts), "weighted_graph"), adjacency_(points_.size()), rows_(points_.size()) {
    for (const auto& [key, w] : edges) {
      std::size_t i = index_of(key.first);
      std::size_t j = index_of(key.second);
      adjacency_[i].emplace_back(j, w);
      adjacency_[j].emplace_back(i, w);
    }
    std::int64_t max_degree = 0;
    for (auto& adj : adjacency_) {
      std::sort(adj.begin(), adj.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      max_degree = std::max<std::int64_t>(max_degree, static_cast<std::int64_t>(adj.size()));
    }
    traits_.max_degree = max_degree;
    traits_.coarsely_bounded_geometry = true;
  }

  SpaceKind kind() const override { return SpaceKind::weighted_graph; }

  Dist distance(const PointRef& a, const PointRef& b) const override {
    std::size_t i = index_of(a);
    std::size_t j = index_of(b);
    const auto& d = row(i)[j];
    return d ? Dist(*d) : Dist::infinity();
  }

  std::vector<PointRef> delta_neighbors(const PointRef& x, const Dist& delta) const override {
    require_positive(delta, "delta");
    std::size_t i = index_of(x);
    const auto& r = row(i);
    std::vector<PointRef> out;
    for (std::size_t j = 0; j < r.size(); ++j)
      if (j != i && r[j] && Dist(*r[j]) <= delta) out.push_back(points_[j]);
    return out;
  }

 private:
  const std::vector<std::optional<Rational>>& row(std::size_t i) const {
    std::lock_guard lock(mutex_);
    if (!rows_[i]) {
      auto r = std::make_unique<std::vector<std::optional<Rational>>>(points_.size());
      using Item = std::pair<Rational, std::size_t>;
      auto cmp = [](const Item& a, const Item& b) {
        if (a.first != b.first) return b.first < a.first;
        return b.second < a.second;
      };
      std::priority_queue<Item, std::vector<Item>, decltype(cmp)> queue(cmp);
      std::vector<bool> done(points_.size(), false);
      (*r)[i] = Rational(0);
      queue.emplace(Rational(0), i);
      while (!queue.empty()) {
        auto [d, v] = queue.top();
        queue.pop();
        if (done[v]) continue;
        done[v] = true;
        for (const auto& [w, weight] : adjacency_[v]) {
          Rational nd = d + weight;
          auto& cur = (*r)[w];
          if (!cur || nd < *cur) {
            cur = nd;
            queue.emplace(nd, w);
          }
        }
      }
      rows_[i] = std::move(r);
    }
    return *rows_[i];
  }

  std::vector<std::vector<std::pair<std::size_t, Rational>>> adjacency_;
  mutable std::vector<std::unique_ptr<std::vector<std::optional<Rational>>>> rows_;
  mutable std::mutex mutex_;
};

class MatrixSpace final : public FiniteBase {
 public:
  MatrixSpace(std::vector<PointRef> pts, const MetricFn& metric, std::string name)
      : FiniteBase(std::move(pts), std::move(name)) {
    const std::size_t n = points_.size();
    matrix_.assign(n * n, Dist(0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        Dist d = metric(points_[i], points_[j]);
        if (d.is_zero()) throw InvalidArgument("distinct points at distance zero in " + name_);
        matrix_[i * n + j] = d;
        matrix_[j * n + i] = d;
      }
  }

  SpaceKind kind() const override { return SpaceKind::finite_matrix; }

  Dist distance(const PointRef& a, const PointRef& b) const override {
    return matrix_[index_of(a) * points_.size() + index_of(b)];
  }

  std::vector<PointRef> delta_neighbors(const PointRef& x, const Dist& delta) const override {
    require_positive(delta, "delta");
    std::size_t i = index_of(x);
    std::vector<PointRef> out;
    for (std::size_t j = 0; j < points_.size(); ++j)
      if (j != i && matrix_[i * points_.size() + j] <= delta) out.push_back(points_[j]);
    return out;
  }

  void set_traits(const SpaceTraits& t) { traits_ = t; }

 private:
  std::vector<Dist> matrix_;
};

std::vector<PointRef> collect_vertices(const std::vector<PointRef>& extra,
                                       const std::vector<std::pair<PointRef, PointRef>>& edges) {
  std::vector<PointRef> out = extra;
  for (const auto& [a, b] : edges) {
    out.push_back(a);
    out.push_back(b);
  }
  return out;
}

void require_connected(const MetricSpace& space) {
  auto pts = space.points();
  for (const auto& p : pts)
    if (space.distance(pts.front(), p).is_infinite()) throw InvalidArgument("graph is not connected");
}

std::string trim(std::string s) {
  auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::int64_t parse_label(const std::string& s, std::size_t line_no) {
  try {
    std::size_t used = 0;
    std::int64_t v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw InvalidArgument("edge list line " + std::to_string(line_no) + ": bad vertex label '" + s + "'");
  }
}

}  // namespace

SpaceHandle build_graph(const std::vector<Edge>& edges, const std::vector<PointRef>& extra_vertices,
                        GraphOptions options) {
  std::vector<std::pair<PointRef, PointRef>> pairs;
  pairs.reserve(edges.size());
  for (const auto& e : edges) {
    if (e.a == e.b) {
      std::ostringstream os;
      os << "loop edge at " << e.a;
      throw InvalidArgument(os.str());
    }
    pairs.emplace_back(std::min(e.a, e.b), std::max(e.a, e.b));
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  auto space = std::make_shared<GraphSpace>(collect_vertices(extra_vertices, pairs), pairs);
  if (options.require_connected && !space->connected()) throw InvalidArgument("graph is not connected");
  return space;
}

SpaceHandle build_weighted_graph(const std::vector<WeightedEdge>& edges, const std::vector<PointRef>& extra_vertices,
                                 GraphOptions options) {
  std::map<std::pair<PointRef, PointRef>, Rational> merged;
  for (const auto& e : edges) {
    if (e.a == e.b) {
      std::ostringstream os;
      os << "loop edge at " << e.a;
      throw InvalidArgument(os.str());
    }
    if (e.weight <= 0) throw InvalidArgument("nonpositive edge weight " + format_rational(e.weight));
    auto key = std::make_pair(std::min(e.a, e.b), std::max(e.a, e.b));
    auto [it, inserted] = merged.emplace(key, e.weight);
    if (!inserted && e.weight < it->second) it->second = e.weight;
  }
  std::vector<std::pair<PointRef, PointRef>> pairs;
  for (const auto& [key, w] : merged) pairs.push_back(key);
  auto space = std::make_shared<WeightedGraphSpace>(collect_vertices(extra_vertices, pairs), merged);
  if (options.require_connected) require_connected(*space);
  return space;
}

SpaceHandle build_finite_space(std::vector<PointRef> points, const MetricFn& metric, std::string name) {
  return std::make_shared<MatrixSpace>(std::move(points), metric, std::move(name));
}

SpaceHandle build_matrix_space(const std::vector<std::vector<Dist>>& matrix, std::string name) {
  const std::size_t n = matrix.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (matrix[i].size() != n) throw InvalidArgument("distance matrix is not square");
    if (!matrix[i][i].is_zero()) throw InvalidArgument("nonzero diagonal in distance matrix");
    for (std::size_t j = 0; j < i; ++j)
      if (matrix[i][j] != matrix[j][i]) throw InvalidArgument("distance matrix is not symmetric");
  }
  std::vector<PointRef> pts;
  for (std::size_t i = 0; i < n; ++i) pts.push_back(PointRef{static_cast<std::int64_t>(i), 0});
  return build_finite_space(
      std::move(pts), [&](const PointRef& a, const PointRef& b) { return matrix[a.major][b.major]; },
      std::move(name));
}

SpaceHandle induced_subspace(const SpaceHandle& space, std::vector<PointRef> subset) {
  for (const auto& p : subset) space->check(p);
  auto sub = std::make_shared<MatrixSpace>(
      std::move(subset), [&](const PointRef& a, const PointRef& b) { return space->distance(a, b); },
      space->describe() + "[subset]");
  SpaceTraits t;
  t.finite = true;
  t.bounded_components = true;
  t.ultrametric = space->traits().ultrametric;
  sub->set_traits(t);
  return sub;
}

EdgeList read_edge_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  bool weighted = false;
  EdgeList list;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto cells = split_csv(line);
    if (!have_header) {
      if (cells.size() == 2 && cells[0] == "src" && cells[1] == "dst") {
        weighted = false;
      } else if (cells.size() == 3 && cells[0] == "src" && cells[1] == "dst" && cells[2] == "weight") {
        weighted = true;
      } else {
        throw InvalidArgument("edge list header must be 'src,dst' or 'src,dst,weight'");
      }
      have_header = true;
      continue;
    }
    if (cells.size() != (weighted ? 3u : 2u))
      throw InvalidArgument("edge list line " + std::to_string(line_no) + ": wrong number of fields");
    WeightedEdge e{PointRef{parse_label(cells[0], line_no), 0}, PointRef{parse_label(cells[1], line_no), 0},
                   Rational(1)};
    if (weighted) {
      try {
        e.weight = parse_rational(cells[2]);
      } catch (const InvalidArgument& err) {
        throw InvalidArgument("edge list line " + std::to_string(line_no) + ": " + err.what());
      }
    }
    list.edges.push_back(e);
  }
  if (!have_header) throw InvalidArgument("edge list is empty");
  list.weighted = weighted;
  return list;
}

EdgeList load_edge_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open edge list '" + path + "'");
  return read_edge_csv(in);
}

SpaceHandle space_from_edges(const EdgeList& list, GraphOptions options) {
  if (list.edges.empty()) throw InvalidArgument("edge list has no edges");
  if (list.weighted) return build_weighted_graph(list.edges, {}, options);
  std::vector<Edge> edges;
  for (const auto& e : list.edges) edges.push_back(Edge{e.a, e.b});
  return build_graph(edges, {}, options);
}

}  // namespace coarse
