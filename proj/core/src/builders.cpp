#include "sparsic/builders.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <utility>

#include "sparsic/errors.hpp"
#include "sparsic/rng.hpp"

namespace sparsic {

PointCloud sample_clustered_points(int m0, double c, std::uint64_t seed) {
  if (m0 % 2 != 0) {
    throw_error(ErrorCode::OddCount, "two-cluster sampler needs an even point count, got " +
                                         std::to_string(m0));
  }
  if (m0 < 2) {
    throw_error(ErrorCode::InvalidConfig, "need at least 2 points");
  }
  if (!(c >= 0.0) || !std::isfinite(c)) {
    throw_error(ErrorCode::InvalidConfig, "cluster offset must be finite and >= 0");
  }
  PointCloud pc;
  pc.seed = seed;
  pc.cluster_offset = c;
  pc.points.reserve(static_cast<std::size_t>(m0));
  SplitMix64 rng(seed);
  const int half = m0 / 2;
  for (int i = 0; i < m0; ++i) {
    const double shift = i < half ? 0.0 : c;
    const double x = rng.normal() + shift;
    const double y = rng.normal() + shift;
    pc.points.push_back({x, y});
  }
  return pc;
}

namespace {

double squared_distance(const std::array<double, 2>& a, const std::array<double, 2>& b) {
  const double dx = a[0] - b[0];
  const double dy = a[1] - b[1];
  return dx * dx + dy * dy;
}

}  // namespace

SimplicialComplex vietoris_rips(const PointCloud& pc, const FiltrationConfig& cfg) {
  if (pc.points.empty()) {
    throw_error(ErrorCode::EmptyInput, "point cloud is empty");
  }
  if (!(cfg.epsilon > 0.0) || !std::isfinite(cfg.epsilon)) {
    throw_error(ErrorCode::InvalidConfig, "filtration epsilon must be finite and > 0");
  }
  if (cfg.max_order < 1) {
    throw_error(ErrorCode::InvalidConfig, "max_order must be >= 1");
  }

  const auto n = static_cast<VertexId>(pc.points.size());
  const double eps_sq = cfg.epsilon * cfg.epsilon;

  // Neighbour lists restricted to higher-indexed vertices; with ascending
  // vertex tuples every clique extension only ever looks upward.
  std::vector<std::vector<VertexId>> above(pc.points.size());
  for (VertexId i = 0; i < n; ++i) {
    for (VertexId j = i + 1; j < n; ++j) {
      if (squared_distance(pc.points[static_cast<std::size_t>(i)],
                           pc.points[static_cast<std::size_t>(j)]) <= eps_sq) {
        above[static_cast<std::size_t>(i)].push_back(j);
      }
    }
  }

  std::vector<std::vector<Simplex>> levels(1);
  levels[0].reserve(pc.points.size());
  for (VertexId i = 0; i < n; ++i) {
    levels[0].push_back(Simplex{{i}});
  }

  // Extend k-cliques by one vertex: the candidate set of a clique is the
  // intersection of the upward neighbour lists of its members.
  std::vector<std::pair<Simplex, std::vector<VertexId>>> frontier;
  for (VertexId i = 0; i < n; ++i) {
    frontier.emplace_back(Simplex{{i}}, above[static_cast<std::size_t>(i)]);
  }
  for (int order = 1; order <= cfg.max_order; ++order) {
    std::vector<std::pair<Simplex, std::vector<VertexId>>> next;
    std::vector<Simplex> level;
    for (const auto& [clique, candidates] : frontier) {
      for (VertexId v : candidates) {
        Simplex extended = clique;
        extended.vertices.push_back(v);
        std::vector<VertexId> shared;
        const auto& v_above = above[static_cast<std::size_t>(v)];
        std::set_intersection(candidates.begin(), candidates.end(),
                              v_above.begin(), v_above.end(),
                              std::back_inserter(shared));
        level.push_back(extended);
        next.emplace_back(std::move(extended), std::move(shared));
      }
    }
    if (level.empty()) break;
    levels.push_back(std::move(level));
    frontier = std::move(next);
  }

  return assemble_complex(std::move(levels));
}

SimplicialComplex ingest_hypergraph(const std::vector<std::vector<VertexId>>& hyperedges,
                                    int max_edge_size, int closure_order) {
  if (max_edge_size < 1 || closure_order < 0) {
    throw_error(ErrorCode::InvalidConfig, "max_edge_size >= 1 and closure_order >= 0 required");
  }

  std::vector<std::set<Simplex>> seen(static_cast<std::size_t>(closure_order) + 1);
  bool any_retained = false;
  for (const auto& raw : hyperedges) {
    std::vector<VertexId> verts = raw;
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    if (verts.empty()) continue;
    if (verts.front() < 0) {
      throw_error(ErrorCode::InvalidVertex,
                  "negative vertex id " + std::to_string(verts.front()));
    }
    if (static_cast<int>(verts.size()) > max_edge_size) continue;
    any_retained = true;

    const int top = std::min<int>(closure_order + 1, static_cast<int>(verts.size()));
    // All subsets of each size via a moving index vector.
    for (int size = 1; size <= top; ++size) {
      std::vector<int> pick(static_cast<std::size_t>(size));
      for (int i = 0; i < size; ++i) pick[static_cast<std::size_t>(i)] = i;
      while (true) {
        Simplex s;
        s.vertices.reserve(static_cast<std::size_t>(size));
        for (int i : pick) s.vertices.push_back(verts[static_cast<std::size_t>(i)]);
        seen[static_cast<std::size_t>(size - 1)].insert(std::move(s));

        int pos = size - 1;
        while (pos >= 0 &&
               pick[static_cast<std::size_t>(pos)] ==
                   static_cast<int>(verts.size()) - size + pos) {
          --pos;
        }
        if (pos < 0) break;
        ++pick[static_cast<std::size_t>(pos)];
        for (int i = pos + 1; i < size; ++i) {
          pick[static_cast<std::size_t>(i)] = pick[static_cast<std::size_t>(i - 1)] + 1;
        }
      }
    }
  }
  if (!any_retained) {
    throw_error(ErrorCode::EmptyInput, "no hyperedge survived the size filter");
  }

  std::vector<std::vector<Simplex>> levels;
  for (const auto& level_set : seen) {
    levels.emplace_back(level_set.begin(), level_set.end());
  }
  return assemble_complex(std::move(levels));
}

}  // namespace sparsic
