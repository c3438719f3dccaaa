#pragma once

#include "coarse/space.hpp"

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace coarse {

struct Edge {
  PointRef a;
  PointRef b;
};

struct WeightedEdge {
  PointRef a;
  PointRef b;
  Rational weight;
};

struct GraphOptions {
  bool require_connected = false;
};

/// Unweighted graph with the path metric. Loops are rejected, duplicates merged.
/// `extra_vertices` adds isolated vertices (or repeats existing ones harmlessly).
SpaceHandle build_graph(const std::vector<Edge>& edges, const std::vector<PointRef>& extra_vertices = {},
                        GraphOptions options = {});

/// Weighted graph with the infimal path weight. Duplicate edges keep the minimum weight.
SpaceHandle build_weighted_graph(const std::vector<WeightedEdge>& edges,
                                 const std::vector<PointRef>& extra_vertices = {}, GraphOptions options = {});

using MetricFn = std::function<Dist(const PointRef&, const PointRef&)>;

/// Finite space with a precomputed distance matrix.
SpaceHandle build_finite_space(std::vector<PointRef> points, const MetricFn& metric,
                               std::string name = "finite_matrix");

/// Same, from an explicit symmetric matrix over points 0..n-1.
SpaceHandle build_matrix_space(const std::vector<std::vector<Dist>>& matrix, std::string name = "finite_matrix");

/// The induced metric on a finite subset of a space.
SpaceHandle induced_subspace(const SpaceHandle& space, std::vector<PointRef> subset);

struct EdgeList {
  std::vector<WeightedEdge> edges;
  bool weighted = false;
};

/// CSV with header `src,dst[,weight]`; vertex labels are integers, weights decimal or p/q.
EdgeList read_edge_csv(std::istream& in);
EdgeList load_edge_csv(const std::string& path);
SpaceHandle space_from_edges(const EdgeList& list, GraphOptions options = {});

}  // namespace coarse
