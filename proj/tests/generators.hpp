#pragma once

// Seeded generators for property tests.

#include "coarse/graph.hpp"
#include "coarse/paths.hpp"

#include <algorithm>
#include <random>
#include <vector>

namespace coarse::test {

/// Random walk with steps drawn from the delta-neighbors plus staying put.
inline DeltaPath random_walk(std::mt19937_64& rng, const MetricSpace& space, const PointRef& start, int length,
                             const Dist& delta) {
  DeltaPath out{{start}, delta};
  for (int i = 0; i < length; ++i) {
    auto nb = space.delta_neighbors(out.back(), delta);
    nb.push_back(out.back());
    out.points.push_back(nb[rng() % nb.size()]);
  }
  return out;
}

/// G(n, p) on vertices 0..n-1; may be disconnected.
inline SpaceHandle random_graph(std::mt19937_64& rng, int n, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  std::vector<PointRef> vertices;
  for (int i = 0; i < n; ++i) {
    vertices.push_back(pt(i));
    for (int j = i + 1; j < n; ++j) {
      if (coin(rng)) edges.push_back({pt(i), pt(j)});
    }
  }
  return build_graph(edges, vertices);
}

/// Shortest-path closure of random weights in 1/2..max_weight (halves) on the complete graph.
inline std::vector<std::vector<Dist>> random_metric_matrix(std::mt19937_64& rng, int n, int max_weight = 8) {
  std::uniform_int_distribution<int> w(1, 2 * max_weight);
  std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n, Rational(0)));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) d[i][j] = d[j][i] = make_rational(w(rng), 2);
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  std::vector<std::vector<Dist>> out(n, std::vector<Dist>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[i][j] = Dist(d[i][j]);
  return out;
}

inline SpaceHandle random_metric(std::mt19937_64& rng, int n, int max_weight = 8) {
  return build_matrix_space(random_metric_matrix(rng, n, max_weight));
}

/// Random metric on 0..n-1 invariant under the permutation sigma: each sigma-orbit of
/// pairs gets one weight, then the shortest-path closure.
inline std::vector<std::vector<Dist>> random_invariant_metric(std::mt19937_64& rng, const std::vector<int>& sigma,
                                                              int max_weight = 6) {
  const int n = static_cast<int>(sigma.size());
  std::uniform_int_distribution<int> w(1, 2 * max_weight);
  std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n, Rational(-1)));
  for (int i = 0; i < n; ++i) d[i][i] = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (d[i][j] >= 0) continue;
      Rational v = make_rational(w(rng), 2);
      int a = i, b = j;
      do {
        d[a][b] = d[b][a] = v;
        a = sigma[a], b = sigma[b];
      } while (!(a == i && b == j) && !(a == j && b == i));
    }
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  std::vector<std::vector<Dist>> out(n, std::vector<Dist>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[i][j] = Dist(d[i][j]);
  return out;
}

inline std::vector<int> random_permutation(std::mt19937_64& rng, int n) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace coarse::test
