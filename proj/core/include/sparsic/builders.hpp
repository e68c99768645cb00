#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "sparsic/complex.hpp"

namespace sparsic {

/// Planar point cloud produced by the two-cluster Gaussian sampler.
struct PointCloud {
  std::vector<std::array<double, 2>> points;
  std::uint64_t seed = 0;
  double cluster_offset = 0.0;

  std::size_t size() const { return points.size(); }
};

struct FiltrationConfig {
  double epsilon = 1.0;  // pairwise distance threshold, > 0
  int max_order = 2;     // highest simplex order to generate, >= 1
};

/// Samples m0 points in the plane: the first half from a standard Gaussian
/// at the origin, the second half from a unit-covariance Gaussian centred at
/// (c, c). Deterministic per seed (SplitMix64 + Box-Muller).
/// Throws OddCount when m0 is odd, InvalidConfig when m0 < 2 or c < 0.
PointCloud sample_clustered_points(int m0, double c, std::uint64_t seed);

/// Clique complex of the epsilon-neighbourhood graph (Euclidean metric) up
/// to cfg.max_order, with unit weights. A (k+1)-clique is grown only from
/// k-cliques, so sparse graphs never pay for a naive subset scan.
SimplicialComplex vietoris_rips(const PointCloud& pc, const FiltrationConfig& cfg);

/// Simplicial closure of a hypergraph: every subset of size
/// <= closure_order + 1 of every hyperedge with at most max_edge_size
/// vertices becomes a simplex. Unit weights; duplicates merge.
/// Throws EmptyInput when no hyperedge survives the size filter.
SimplicialComplex ingest_hypergraph(const std::vector<std::vector<VertexId>>& hyperedges,
                                    int max_edge_size = 10,
                                    int closure_order = 2);

}  // namespace sparsic
