#include "coarse/catalog.hpp"
#include "coarse/errors.hpp"
#include "coarse/graph.hpp"
#include "coarse/paths.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

using namespace coarse;

namespace {

std::vector<PointRef> line(std::int64_t lo, std::int64_t hi) {
  std::vector<PointRef> out;
  for (auto m = lo; m <= hi; ++m) out.push_back(pt(m));
  return out;
}

// Every point of a prime_cycle window: line vertices plus the off-line cycle vertices.
std::vector<PointRef> prime_cycle_points(const PrimeCycle& s) {
  std::vector<PointRef> out = line(0, s.window());
  for (auto a : s.attachments(0, s.window())) {
    auto [p, k] = *s.prime_power(a);
    for (std::int64_t j = 1; j < p * k; ++j) out.push_back(pt(a, j));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PointRef> tree_line_points(const TreeLine& s) {
  std::vector<PointRef> out = line(0, s.window());
  for (auto a : s.attachments(0, s.window())) {
    auto h = s.height_at(a);
    for (std::int64_t v = 2; v < (std::int64_t{2} << h); ++v) out.push_back(pt(a, v));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PointRef> brute_neighbors(const MetricSpace& s, const std::vector<PointRef>& all, const PointRef& x,
                                      const Dist& delta) {
  std::vector<PointRef> out;
  for (const auto& y : all) {
    if (y != x && !(delta < s.distance(x, y))) out.push_back(y);
  }
  return out;
}

void check_triangles(const MetricSpace& s, const std::vector<PointRef>& pool, std::uint64_t seed, int trials,
                     bool ultra = false) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (int t = 0; t < trials; ++t) {
    const auto& a = pool[pick(rng)];
    const auto& b = pool[pick(rng)];
    const auto& c = pool[pick(rng)];
    Dist ab = s.distance(a, b), bc = s.distance(b, c), ac = s.distance(a, c);
    CHECK(ab == s.distance(b, a));
    CHECK((ab.is_zero() == (a == b)));
    CHECK(ac <= ab + bc);
    if (ultra) CHECK(ac <= max(ab, bc));
  }
}

}  // namespace

TEST_SUITE("spaces") {
  TEST_CASE("dist arithmetic and parsing") {
    CHECK(Dist::parse("3/6") == Dist(make_rational(1, 2)));
    CHECK(Dist::parse("0.125").rational() == make_rational(1, 8));
    CHECK(Dist::parse("inf").is_infinite());
    CHECK(Dist(2) + Dist::parse("1/3") == Dist(make_rational(7, 3)));
    CHECK(Dist(3) < Dist::infinity());
    CHECK(Dist::approx(3.0 + 1e-12) == Dist(3));
    CHECK(Dist::parse("7/2").floor() == 3);
    CHECK(Dist::parse("7/2").ceil() == 4);
    CHECK(Dist::approx(2.9999999999999).ceil() == 3);
    CHECK(format_rational(make_rational(6, 4)) == "3/2");
    CHECK_THROWS_AS(Dist(make_rational(-1)), InvalidArgument);
    CHECK(Dist::parse("007").rational() == make_rational(7));
    CHECK(Dist::parse("10.05").rational() == make_rational(201, 20));
  }

  TEST_CASE("graph distances") {
    auto path = build_graph({{pt(0), pt(1)}, {pt(1), pt(2)}, {pt(2), pt(3)}});
    CHECK(path->distance(pt(0), pt(3)) == Dist(3));
    auto two = build_graph({{pt(0), pt(1)}, {pt(1), pt(2)}});
    CHECK(two->distance(pt(0), pt(2)) == Dist(2));
    auto single = build_graph({}, {pt(0)});
    CHECK(single->distance(pt(0), pt(0)) == Dist(0));
    auto square = build_graph({{pt(0), pt(1)}, {pt(1), pt(2)}, {pt(2), pt(3)}, {pt(3), pt(0)}});
    CHECK(square->distance(pt(0), pt(2)) == Dist(2));
    CHECK_THROWS_AS(build_graph({{pt(1), pt(1)}}), InvalidArgument);

    auto split = build_graph({{pt(0), pt(1)}, {pt(5), pt(6)}});
    CHECK(split->distance(pt(0), pt(6)).is_infinite());
    CHECK_THROWS_AS(build_graph({{pt(0), pt(1)}, {pt(5), pt(6)}}, {}, GraphOptions{true}), InvalidArgument);
    auto dup = build_graph({{pt(0), pt(1)}, {pt(1), pt(0)}, {pt(0), pt(1)}});
    CHECK(dup->delta_neighbors(pt(0), Dist(1)) == std::vector<PointRef>{pt(1)});
  }

  TEST_CASE("weighted graph distances") {
    auto tri = build_weighted_graph({{pt(0), pt(1), make_rational(1)},
                                     {pt(1), pt(2), make_rational(1)},
                                     {pt(0), pt(2), make_rational(3)}});
    CHECK(tri->distance(pt(0), pt(2)) == Dist(2));
    auto half = build_weighted_graph({{pt(0), pt(1), make_rational(1, 2)}});
    CHECK(half->distance(pt(0), pt(1)).rational() == make_rational(1, 2));
    auto routes = build_weighted_graph({{pt(0), pt(1), make_rational(5)},
                                        {pt(0), pt(9), make_rational(1)},
                                        {pt(9), pt(1), make_rational(1)}});
    CHECK(routes->distance(pt(0), pt(1)) == Dist(2));
    auto dup = build_weighted_graph({{pt(0), pt(1), make_rational(4)}, {pt(1), pt(0), make_rational(3)}});
    CHECK(dup->distance(pt(0), pt(1)) == Dist(3));
    CHECK_THROWS_AS(build_weighted_graph({{pt(0), pt(1), make_rational(0)}}), InvalidArgument);
  }

  TEST_CASE("edge csv") {
    std::istringstream plain("src,dst\n0,1\n1,2\n");
    auto g = space_from_edges(read_edge_csv(plain));
    CHECK(g->kind() == SpaceKind::graph);
    CHECK(g->distance(pt(0), pt(2)) == Dist(2));
    std::istringstream weighted("src,dst,weight\n0,1,1/3\n1,2,0.5\n");
    auto w = space_from_edges(read_edge_csv(weighted));
    CHECK(w->kind() == SpaceKind::weighted_graph);
    CHECK(w->distance(pt(0), pt(2)).rational() == make_rational(5, 6));
    std::istringstream bad("a,b\n0,1\n");
    CHECK_THROWS_AS(read_edge_csv(bad), InvalidArgument);
  }

  TEST_CASE("catalog distances") {
    auto log_line = make_example("log_line").space;
    CHECK(log_line->distance(pt(0), pt(7)) == Dist(3));
    CHECK(log_line->distance(pt(0), pt(7)).is_exact());

    auto ultra = make_example("ultrametric_product").space;
    auto x = ultra->decode(nlohmann::json::parse("[0,2]"));
    auto y = ultra->decode(nlohmann::json::parse("[1]"));
    CHECK(ultra->distance(x, y) == Dist(2));
    CHECK(ultra->encode(x) == nlohmann::json::parse("[0,2]"));
    CHECK_THROWS_AS(ultra->decode(nlohmann::json::parse("[0,1]")), UnknownPoint);

    auto branch = make_example("branch_tree");
    REQUIRE(branch.measured.has_value());
    CHECK(branch.measured->mu(pt(1, 0)) == make_rational(1));
    CHECK(branch.measured->mu(pt(0, 0)) == make_rational(1));
    CHECK(branch.measured->mu(pt(2, 5)) == make_rational(2, 3));

    CHECK_THROWS_AS(make_example("no_such_space"), InvalidArgument);
    CHECK_THROWS_AS(make_example("tree_line", {{"schedule", {4, 4, 16}}}), InvalidArgument);
    CHECK_THROWS_AS(make_example("log_line", {{"width", 3}}), InvalidArgument);
  }

  TEST_CASE("catalog neighbors") {
    auto integers = make_example("integer_line").space;
    CHECK(integers->delta_neighbors(pt(5), Dist(1)) == std::vector<PointRef>{pt(4), pt(6)});

    auto ultra = make_example("ultrametric_product").space;
    auto nb = ultra->delta_neighbors(pt(0), Dist(2));
    CHECK(nb.size() == 3);
    std::vector<nlohmann::json> enc;
    for (const auto& p : nb) enc.push_back(ultra->encode(p));
    CHECK(enc == std::vector<nlohmann::json>{nlohmann::json::parse("[1]"), nlohmann::json::parse("[0,2]"),
                                             nlohmann::json::parse("[1,2]")});

    auto prime = make_example("prime_cycle", {{"window", 100}}).space;
    CHECK(prime->delta_neighbors(pt(2, 1), Dist(1)) == std::vector<PointRef>{pt(2)});
    CHECK_THROWS_AS(integers->delta_neighbors(pt(10'000), Dist(1)), BudgetExceeded);
  }

  TEST_CASE("ultrametric balls have 2^n points") {
    auto ultra = make_example("ultrametric_product").space;
    for (int n = 1; n <= 12; ++n) {
      CHECK(ultra->delta_neighbors(pt(0), Dist(n)).size() + 1 == (std::size_t{1} << n));
    }
  }

  TEST_CASE("tree_line trees are full binary trees") {
    auto space = make_example("tree_line", {{"window", 5000}}).space;
    const auto& tl = dynamic_cast<const TreeLine&>(*space);
    for (int n = 1; n <= 5; ++n) {
      auto root = tl.root(n);
      CHECK(root == (std::int64_t{1} << (2 * n)));
      std::int64_t count = 1;
      for (std::int64_t h = 2; h < (std::int64_t{4} << n); ++h) count += tl.contains(pt(root, h));
      CHECK(count == (std::int64_t{2} << n) - 1);
      CHECK(!tl.contains(pt(root, std::int64_t{2} << n)));
    }
  }

  TEST_CASE("prime_cycle agrees with an explicit weighted graph") {
    auto space = make_example("prime_cycle", {{"window", 40}}).space;
    const auto& pc = dynamic_cast<const PrimeCycle&>(*space);
    std::vector<WeightedEdge> edges;
    for (std::int64_t m = 0; m < 40; ++m) edges.push_back({pt(m), pt(m + 1), make_rational(1)});
    for (auto a : pc.attachments(0, 40)) {
      auto [p, k] = *pc.prime_power(a);
      auto vertex = [&](std::int64_t j) { return j == 0 ? pt(a) : pt(a, j); };
      for (std::int64_t i = 0; i < p * k; ++i) {
        edges.push_back({vertex(i), vertex((i + 1) % (p * k)), make_rational(1)});
        for (std::int64_t j = i + 1; j < p * k; ++j) edges.push_back({vertex(i), vertex(j), make_rational(p)});
      }
    }
    auto oracle = build_weighted_graph(edges);
    auto all = prime_cycle_points(pc);
    for (const auto& a : all) {
      for (const auto& b : all) CHECK(pc.distance(a, b) == oracle->distance(a, b));
    }
    // the cycles have diameter p
    for (auto a : pc.attachments(0, 40)) {
      auto [p, k] = *pc.prime_power(a);
      Dist diam(0);
      for (std::int64_t i = 0; i < p * k; ++i)
        for (std::int64_t j = 0; j < p * k; ++j) diam = max(diam, pc.distance(i ? pt(a, i) : pt(a), j ? pt(a, j) : pt(a)));
      CHECK(diam == Dist(std::min<std::int64_t>(p, p * k / 2)));
    }
  }

  TEST_CASE("neighbors agree with brute force") {
    auto prime = make_example("prime_cycle", {{"window", 60}}).space;
    auto pall = prime_cycle_points(dynamic_cast<const PrimeCycle&>(*prime));
    for (const auto& x : pall) {
      if (x.major < 15 || x.major > 45) continue;
      for (auto d : {"1", "2", "5/2", "7"}) {
        CHECK(prime->delta_neighbors(x, Dist::parse(d)) == brute_neighbors(*prime, pall, x, Dist::parse(d)));
      }
    }

    auto tree = make_example("tree_line", {{"window", 200}}).space;
    auto tall = tree_line_points(dynamic_cast<const TreeLine&>(*tree));
    for (const auto& x : tall) {
      if (x.major < 30 || x.major > 100) continue;
      for (auto d : {"1", "3/2", "3", "6"}) {
        CHECK(tree->delta_neighbors(x, Dist::parse(d)) == brute_neighbors(*tree, tall, x, Dist::parse(d)));
      }
    }

    auto ultra = make_example("ultrametric_product", {{"window", 8}}).space;
    std::vector<PointRef> uall;
    for (std::int64_t m = 0; m < 256; ++m) uall.push_back(pt(m));
    for (std::int64_t m = 0; m < 256; m += 7) {
      for (int d = 1; d <= 8; ++d) CHECK(ultra->delta_neighbors(pt(m), Dist(d)) == brute_neighbors(*ultra, uall, pt(m), Dist(d)));
    }

    auto log_line = make_example("log_line", {{"window", 400}}).space;
    auto lall = line(-400, 400);
    for (std::int64_t m = -100; m <= 100; m += 13) {
      for (auto d : {"1", "3/2", "2", "5"}) {
        CHECK(log_line->delta_neighbors(pt(m), Dist::parse(d)) == brute_neighbors(*log_line, lall, pt(m), Dist::parse(d)));
      }
    }

    auto branch = make_example("branch_tree", {{"window", 6}}).space;
    const auto& bt = dynamic_cast<const BranchTree&>(*branch);
    std::vector<PointRef> ball = step_ball(bt, pt(0, 0), 5, Dist(1));
    for (const auto& x : ball) {
      if (x.major > 2) continue;
      for (int d = 1; d <= 3; ++d) CHECK(bt.delta_neighbors(x, Dist(d)) == brute_neighbors(bt, ball, x, Dist(d)));
    }

    auto regular = make_example("regular_tree", {{"degree", 4}, {"window", 8}}).space;
    std::vector<PointRef> rball = step_ball(*regular, pt(0, 0), 6, Dist(1));
    for (const auto& x : rball) {
      if (x.major > 2) continue;
      for (int d = 1; d <= 3; ++d) CHECK(regular->delta_neighbors(x, Dist(d)) == brute_neighbors(*regular, rball, x, Dist(d)));
    }

    auto onion = make_example("coarse_union", {{"family", "cycle"}, {"count", 5}}).space;
    auto oall = onion->points();
    for (const auto& x : oall) {
      for (int d = 1; d <= 6; ++d) CHECK(onion->delta_neighbors(x, Dist(d)) == brute_neighbors(*onion, oall, x, Dist(d)));
    }
  }

  TEST_CASE("triangle inequality on catalog spaces") {
    auto ultra = make_example("ultrametric_product", {{"window", 16}}).space;
    std::vector<PointRef> upool;
    for (std::int64_t m = 0; m < 65536; m += 97) upool.push_back(pt(m));
    check_triangles(*ultra, upool, 1, 2000, true);

    auto log_line = make_example("log_line").space;
    check_triangles(*log_line, line(-3000, 3000), 2, 2000);

    auto prime = make_example("prime_cycle", {{"window", 300}}).space;
    check_triangles(*prime, prime_cycle_points(dynamic_cast<const PrimeCycle&>(*prime)), 3, 3000);

    auto tree = make_example("tree_line", {{"window", 2000}}).space;
    check_triangles(*tree, tree_line_points(dynamic_cast<const TreeLine&>(*tree)), 4, 3000);

    auto branch = make_example("branch_tree", {{"window", 8}}).space;
    check_triangles(*branch, step_ball(*branch, pt(0, 0), 5, Dist(1)), 5, 3000);

    auto regular = make_example("regular_tree").space;
    check_triangles(*regular, step_ball(*regular, pt(0, 0), 6, Dist(1)), 6, 3000);

    for (auto fam : {"path", "cycle", "complete"}) {
      auto onion = make_example("coarse_union", {{"family", fam}, {"count", 7}}).space;
      check_triangles(*onion, onion->points(), 7, 3000);
    }
  }

  TEST_CASE("coarse_union metric") {
    auto onion = make_example("coarse_union", {{"family", "path"}, {"count", 4}}).space;
    const auto& cu = dynamic_cast<const CoarseUnion&>(*onion);
    CHECK(cu.diameter(3) == 3);
    CHECK(cu.distance(pt(1, 0), pt(1, 1)) == Dist(1));
    CHECK(cu.distance(pt(1, 0), pt(3, 2)) == Dist(3));
    CHECK(cu.distance(pt(2, 0), pt(4, 0)) == Dist(4));
    CHECK(cu.distance(pt(3, 0), pt(3, 3)) == Dist(3));
  }

  TEST_CASE("branch_tree measure doubles on children") {
    auto branch = make_example("branch_tree", {{"window", 10}});
    const auto& bt = dynamic_cast<const BranchTree&>(*branch.space);
    std::vector<PointRef> layer{pt(0, 0)};
    for (int depth = 0; depth < 6; ++depth) {
      std::vector<PointRef> next;
      for (const auto& v : layer) {
        auto kids = bt.children(v);
        CHECK(kids.size() == static_cast<std::size_t>(depth + 2));
        CHECK(branch.measured->mass(kids) == 2 * branch.measured->mu(v));
        for (const auto& k : kids) CHECK(bt.parent(k) == v);
        next.insert(next.end(), kids.begin(), kids.end());
      }
      layer = std::move(next);
    }
  }

  TEST_CASE("induced subspaces and matrices") {
    auto ultra = make_example("ultrametric_product").space;
    auto sub = induced_subspace(ultra, {pt(0), pt(1), pt(6)});
    CHECK(sub->traits().finite);
    CHECK(sub->distance(pt(1), pt(6)) == Dist(3));
    CHECK(sub->delta_neighbors(pt(0), Dist(1)) == std::vector<PointRef>{pt(1)});
    CHECK_THROWS_AS(build_matrix_space({{Dist(0), Dist(1)}, {Dist(2), Dist(0)}}), InvalidArgument);
    CHECK_THROWS_AS(sub->distance(pt(0), pt(2)), UnknownPoint);
  }
}
