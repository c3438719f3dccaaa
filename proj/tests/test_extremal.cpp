#include "coarse/catalog.hpp"
#include "coarse/extremal.hpp"
#include "coarse/graph.hpp"
#include "generators.hpp"

#include <doctest.h>

#include <bit>
#include <random>

using namespace coarse;

namespace {

MetricItems interval(std::int64_t lo, std::int64_t hi) {
  std::vector<PointRef> pts;
  for (auto m = lo; m <= hi; ++m) pts.push_back(pt(m));
  return MetricItems::of_points(make_example("integer_line").space, pts);
}

// Exhaustive oracles over all subsets (items <= 16).
std::size_t brute_separated(const MetricItems& items, const Dist& R) {
  const std::size_t n = items.size();
  std::size_t best = 0;
  for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = i + 1; j < n && ok; ++j)
        if ((mask >> i & 1U) && (mask >> j & 1U) && items.distance(i, j) < R) ok = false;
    if (ok) best = std::max<std::size_t>(best, std::popcount(mask));
  }
  return best;
}

std::size_t brute_dense(const MetricItems& items, const Dist& R) {
  const std::size_t n = items.size();
  std::size_t best = n;
  for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      bool covered = false;
      for (std::size_t j = 0; j < n && !covered; ++j) covered = (mask >> j & 1U) && items.distance(i, j) < R;
      ok = covered;
    }
    if (ok) best = std::min<std::size_t>(best, std::popcount(mask));
  }
  return best;
}

}  // namespace

TEST_SUITE("extremal") {
  TEST_CASE("packing on an interval") {
    auto items = interval(0, 10);
    auto r = max_separated(items, Dist(3));
    CHECK(r.size() == 4);
    CHECK(r.certificate == Certificate::exact);
    CHECK(is_separated(items, r.selected, Dist(3)));
    CHECK(brute_separated(items, Dist(3)) == 4);

    CHECK(max_separated(items, Dist(1)).size() == 11);
    CHECK(max_separated(interval(4, 4), Dist(100)).size() == 1);
    CHECK(max_separated(interval(4, 4), Dist(100)).certificate == Certificate::exact);
  }

  TEST_CASE("covering on an interval") {
    auto items = interval(0, 10);
    auto r = min_dense(items, Dist(3));
    CHECK(r.size() == 3);
    CHECK(r.certificate == Certificate::exact);
    CHECK(is_dense(items, r.selected, Dist(3)));
    CHECK(brute_dense(items, Dist(3)) == 3);
    CHECK(min_dense(items, Dist::parse("21/2")).size() == 1);
    CHECK(min_dense(interval(0, 0), Dist(1)).size() == 1);
    // beyond the exact limit the greedy cover is still a cover
    auto big = interval(0, 99);
    auto g = min_dense(big, Dist(3));
    CHECK(g.certificate == Certificate::upper_bound);
    CHECK(is_dense(big, g.selected, Dist(3)));
    CHECK(g.size() >= 20);
  }

  TEST_CASE("greedy nets") {
    auto line = make_example("integer_line").space;
    std::vector<PointRef> window;
    for (int m = 0; m <= 9; ++m) window.push_back(pt(m));
    CHECK(greedy_net(*line, window, Dist(3)) == std::vector<PointRef>{pt(0), pt(3), pt(6), pt(9)});
    CHECK(greedy_net(*line, window, Dist(10)) == std::vector<PointRef>{pt(0)});
    std::vector<PointRef> shuffled{pt(5), pt(0), pt(9), pt(2)};
    CHECK(greedy_net(*line, shuffled, Dist(3)) == std::vector<PointRef>{pt(5), pt(0), pt(9)});
    CHECK_THROWS(greedy_net(*line, {}, Dist(1)));

    std::mt19937_64 rng(21);
    for (int t = 0; t < 50; ++t) {
      auto space = test::random_metric(rng, 4 + static_cast<int>(rng() % 12));
      auto pts = space->points();
      Dist s = Dist(1 + static_cast<std::int64_t>(rng() % 5));
      auto net = greedy_net(*space, pts, s);
      auto items = MetricItems::of_points(space, pts);
      std::vector<std::size_t> idx;
      for (const auto& p : net) idx.push_back(static_cast<std::size_t>(std::find(pts.begin(), pts.end(), p) - pts.begin()));
      CHECK(is_separated(items, idx, s));
      CHECK(is_dense(items, idx, s));
    }
  }

  TEST_CASE("solvers match exhaustive search") {
    std::mt19937_64 rng(22);
    for (int t = 0; t < 150; ++t) {
      const int n = 1 + static_cast<int>(rng() % 13);
      auto items = MetricItems::of_matrix(test::random_metric_matrix(rng, n, 6));
      const Dist R = Dist::parse(std::to_string(1 + rng() % 12) + "/2");
      auto sep = max_separated(items, R);
      auto den = min_dense(items, R);
      CHECK(sep.certificate == Certificate::exact);
      CHECK(den.certificate == Certificate::exact);
      CHECK(sep.size() == brute_separated(items, R));
      CHECK(den.size() == brute_dense(items, R));
      CHECK(is_separated(items, sep.selected, R));
      CHECK(is_dense(items, den.selected, R));

      // greedy brackets the optimum
      auto greedy_sep = max_separated(items, R, 0);
      auto greedy_den = min_dense(items, R, 0);
      CHECK(greedy_sep.size() <= sep.size());
      CHECK(greedy_den.size() >= den.size());
      CHECK(is_separated(items, greedy_sep.selected, R));
      CHECK(is_dense(items, greedy_den.selected, R));

      // packing-covering duality
      CHECK(max_separated(items, R * 2).size() <= den.size());
      CHECK(den.size() <= sep.size());
    }
  }

  TEST_CASE("node budget downgrades the certificate") {
    std::mt19937_64 rng(23);
    // distances 3 or 5 always form a metric; R = 4 makes the 3s conflicts
    const int n = 36;
    std::vector<std::vector<Dist>> m(n, std::vector<Dist>(n, Dist(0)));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) m[i][j] = m[j][i] = Dist(rng() % 2 ? 3 : 5);
    auto items = MetricItems::of_matrix(m);
    auto r = max_separated(items, Dist(4), 40, 3);
    CHECK(r.certificate == Certificate::lower_bound);
    CHECK(is_separated(items, r.selected, Dist(4)));
    auto full = max_separated(items, Dist(4));
    CHECK(full.certificate == Certificate::exact);
    CHECK(full.size() >= r.size());
  }

  TEST_CASE("path items use the orbit distance") {
    auto line = make_example("integer_line").space;
    auto orbits = std::make_shared<const OrbitSet>(enumerate_orbits(*line, pt(0), 1, Dist(1), 10));
    auto items = MetricItems::of_paths(line, orbits);
    CHECK(items.size() == 3);
    CHECK(items.distance(0, 2) == Dist(2));
    auto close = items.closer_than(Dist(2));
    CHECK(close(0, 1));
    CHECK_FALSE(close(0, 2));
    CHECK(max_separated(items, Dist(2)).size() == 2);
  }

  TEST_CASE("checkers report violations") {
    auto items = interval(0, 6);
    CHECK(separation_violation(items, {0, 2, 3}, Dist(2)) == std::pair<std::size_t, std::size_t>{2, 3});
    CHECK(density_violation(items, {0}, Dist(3)) == std::size_t{3});
    CHECK_FALSE(density_violation(items, {1, 4}, Dist(3)).has_value());
  }
}
