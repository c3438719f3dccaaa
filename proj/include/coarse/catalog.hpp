#pragma once

#include "coarse/space.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace coarse {

/// A catalog space, plus its measure for the measured entries.
struct Example {
  SpaceHandle space;
  std::optional<MeasuredSpaceHandle> measured;
};

/// Tags: integer_line, log_line, ultrametric_product, prime_cycle, tree_line,
/// branch_tree, regular_tree, coarse_union. Unknown tags or parameters throw InvalidArgument.
Example make_example(const std::string& tag, const nlohmann::json& params = nlohmann::json::object());

std::vector<std::string> catalog_tags();

/// Integers [-window, window] with |m - n|. Points are (m, 0).
class IntegerLine final : public MetricSpace {
 public:
  explicit IntegerLine(std::int64_t window);
  SpaceKind kind() const override { return SpaceKind::generated; }
  std::string describe() const override;
  void check(const PointRef& p) const override;
  Dist distance(const PointRef& a, const PointRef& b) const override;
  std::vector<PointRef> delta_neighbors(const PointRef& x, const Dist& delta) const override;
  PointRef basepoint() const override { return PointRef{0, 0}; }

 private:
  std::int64_t window_;
};

/// Integers [-window, window] with d(m, n) = log2(1 + |m - n|).
class LogLine final : public MetricSpace {
 public:
  explicit LogLine(std::int64_t window);
  SpaceKind kind() const override { return SpaceKind::generated; }
  std::string describe() const override;
  void check(const PointRef& p) const override;
  Dist distance(const PointRef& a, const PointRef& b) const override;
  std::vector<PointRef> delta_neighbors(const PointRef& x, const Dist& delta) const override;
  PointRef basepoint() const override { return PointRef{0, 0}; }
  /// Largest offset k with log2(1 + k) <= delta.
  static std::int64_t reach(const Dist& delta);

 private:
  std::int64_t window_;
};

/// Finitely supported sequences in prod_k {0, k} with the sup metric. A point is
/// (mask, 0) where bit k-1 of mask says coordinate k is nonzero; coordinates
/// beyond `window` are outside the budget.
class UltrametricProduct final : public MetricSpace {
 public:
  explicit UltrametricProduct(int window);
  SpaceKind kind() const override { return SpaceKind::generated; }
  std::string describe() const override;
  void check(const PointRef& p) const override;
  Dist distance(const PointRef& a, const PointRef& b) const override;
  std::vector<PointRef> delta_neighbors(const PointRef& x, const Dist& delta) const override;
  PointRef basepoint() const override { return PointRef{0, 0}; }
  nlohmann::json encode(const PointRef& p) const override;
  PointRef decode(const nlohmann::json& j) const override;

 private:
  int window_;
};

/// The half-line 0..window with gadgets hanging off some of its vertices.
/// Line vertex m is (m, 0); gadget vertex `pos` attached at a is (a, pos).
/// Every gadget meets the line in one vertex, so paths between gadgets run along the line.
class DecoratedLine : public MetricSpace {
 public:
  SpaceKind kind() const override { return SpaceKind::generated; }
  void check(const PointRef& p) const override;
  Dist distance(const PointRef& a, const PointRef& b) const override;
  std::vector<PointRef> delta_neighbors(const PointRef& x, const Dist& delta) const override;
  PointRef basepoint() const override { return PointRef{0, 0}; }
  std::int64_t window() const { return window_; }
  /// Attachment points in [lo, hi], ascending.
  virtual std::vector<std::int64_t> attachments(std::int64_t lo, std::int64_t hi) const = 0;

 protected:
  explicit DecoratedLine(std::int64_t window) : window_(window) {}

  virtual bool valid_position(std::int64_t a, std::int64_t pos) const = 0;
  /// Distance from a gadget position to its attachment vertex.
  virtual std::int64_t depth(std::int64_t a, std::int64_t pos) const = 0;
  virtual std::int64_t gadget_distance(std::int64_t a, std::int64_t i, std::int64_t j) const = 0;
  /// Positions j != 0, j != i within `radius` of i inside the gadget at a (i may be 0).
  virtual std::vector<std::int64_t> gadget_ball(std::int64_t a, std::int64_t i, std::int64_t radius) const = 0;

  std::int64_t window_;
};

/// The weighted graph on the half-line with a cycle G_p^k on pk vertices attached at
/// every prime power p^k: ring edges of weight 1 and an edge of weight p between any two
/// cycle vertices. Cycle vertex 0 is the line vertex p^k; the others are (p^k, j).
class PrimeCycle final : public DecoratedLine {
 public:
  explicit PrimeCycle(std::int64_t window);
  std::string describe() const override;
  std::vector<std::int64_t> attachments(std::int64_t lo, std::int64_t hi) const override;
  std::vector<PointRef> separation_centers(int level) const override;
  /// (p, k) for a prime power, nullopt otherwise.
  std::optional<std::pair<std::int64_t, std::int64_t>> prime_power(std::int64_t a) const;

 protected:
  bool valid_position(std::int64_t a, std::int64_t pos) const override;
  std::int64_t depth(std::int64_t a, std::int64_t pos) const override;
  std::int64_t gadget_distance(std::int64_t a, std::int64_t i, std::int64_t j) const override;
  std::vector<std::int64_t> gadget_ball(std::int64_t a, std::int64_t i, std::int64_t radius) const override;

 private:
  std::int64_t ring(std::int64_t a, std::int64_t i, std::int64_t j) const;
  std::map<std::int64_t, std::pair<std::int64_t, std::int64_t>> powers_;
};

/// The half-line with a full binary tree T_n of height n rooted at x_n. Tree vertices
/// use heap numbering: the root (heap index 1) is the line vertex x_n, and heap index
/// h >= 2 is (x_n, h).
class TreeLine final : public DecoratedLine {
 public:
  TreeLine(std::int64_t window, std::vector<std::int64_t> schedule);
  std::string describe() const override;
  std::vector<std::int64_t> attachments(std::int64_t lo, std::int64_t hi) const override;
  std::vector<PointRef> growth_base_points(std::int64_t reach) const override;
  std::optional<WitnessTargets> witness_targets(const Dist& delta, const Dist& R, int level) const override;
  /// x_n for n >= 1; throws BudgetExceeded beyond the schedule or the window.
  std::int64_t root(std::int64_t n) const;
  /// Height of the tree at attachment a.
  std::int64_t height_at(std::int64_t a) const;

 protected:
  bool valid_position(std::int64_t a, std::int64_t pos) const override;
  std::int64_t depth(std::int64_t a, std::int64_t pos) const override;
  std::int64_t gadget_distance(std::int64_t a, std::int64_t i, std::int64_t j) const override;
  std::vector<std::int64_t> gadget_ball(std::int64_t a, std::int64_t i, std::int64_t radius) const override;

 private:
  std::vector<std::int64_t> schedule_;  // schedule_[n-1] = x_n, all within the window
  std::map<std::int64_t, std::int64_t> height_;
};

/// Rooted tree whose depth-n vertices have n + 2 children. Vertex (n, i) has children
/// (n+1, i(n+2)+j), 0 <= j < n+2; the root is (0, 0). Depth is capped at `window`.
class BranchTree final : public MetricSpace {
 public:
  explicit BranchTree(int window);
  SpaceKind kind() const override { return SpaceKind::generated; }
  std::string describe() const override;
  void check(const PointRef& p) const override;
  Dist distance(const PointRef& a, const PointRef& b) const override;
  std::vector<PointRef> delta_neighbors(const PointRef& x, const Dist& delta) const override;
  PointRef basepoint() const override { return PointRef{0, 0}; }
  std::vector<PointRef> separation_centers(int level) const override;
  std::optional<WitnessTargets> witness_targets(const Dist& delta, const Dist& R, int level) const override;

  std::vector<PointRef> children(const PointRef& v) const;
  std::optional<PointRef> parent(const PointRef& v) const;
  /// 2^n / (n+1)! for a depth-n vertex.
  static Rational measure(const PointRef& v);

 private:
  int window_;
};

/// The d-regular tree. The root (0, 0) has d children (1, j); every other vertex (n, i)
/// has d-1 children (n+1, i(d-1)+j).
class RegularTree final : public MetricSpace {
 public:
  RegularTree(int degree, int window);
  SpaceKind kind() const override { return SpaceKind::generated; }
  std::string describe() const override;
  void check(const PointRef& p) const override;
  Dist distance(const PointRef& a, const PointRef& b) const override;
  std::vector<PointRef> delta_neighbors(const PointRef& x, const Dist& delta) const override;
  PointRef basepoint() const override { return PointRef{0, 0}; }
  std::vector<PointRef> separation_centers(int level) const override;

  std::vector<PointRef> adjacent(const PointRef& v) const;
  std::optional<PointRef> parent(const PointRef& v) const;

 private:
  int degree_;
  int window_;
};

/// Disjoint union of finite connected graphs X_1, X_2, ... where points of different
/// pieces n != m are at distance max(n, m, diam X_n, diam X_m). Points are (n, v).
class CoarseUnion final : public MetricSpace {
 public:
  /// pieces[n-1] is the edge list of X_n over vertices 0..size-1.
  CoarseUnion(std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>> pieces, std::string label);
  SpaceKind kind() const override { return SpaceKind::generated; }
  std::string describe() const override { return label_; }
  void check(const PointRef& p) const override;
  Dist distance(const PointRef& a, const PointRef& b) const override;
  std::vector<PointRef> delta_neighbors(const PointRef& x, const Dist& delta) const override;
  PointRef basepoint() const override { return PointRef{1, 0}; }
  std::vector<PointRef> points() const override;
  std::int64_t diameter(std::int64_t piece) const;

 private:
  struct Piece {
    std::int64_t size = 0;
    std::vector<std::vector<std::int64_t>> hops;
    std::int64_t diameter = 0;
  };
  std::vector<Piece> pieces_;
  std::string label_;
};

}  // namespace coarse
