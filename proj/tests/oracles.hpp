#pragma once

// Test-only oracles, deliberately independent of the library code paths
// they are used to check.

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <vector>

#include "sparsic/complex.hpp"
#include "sparsic/simplex.hpp"

namespace oracles {

/// T_m(A) for a dense symmetric A by running the three-term recurrence on
/// full matrices (direct polynomial evaluation, no vector pipeline).
inline Eigen::MatrixXd chebyshev_matrix(const Eigen::MatrixXd& a, int m) {
  const Eigen::Index n = a.rows();
  Eigen::MatrixXd t_prev = Eigen::MatrixXd::Identity(n, n);
  if (m == 0) return t_prev;
  Eigen::MatrixXd t_cur = a;
  for (int i = 2; i <= m; ++i) {
    Eigen::MatrixXd t_next = 2.0 * a * t_cur - t_prev;
    t_prev = std::move(t_cur);
    t_cur = std::move(t_next);
  }
  return t_cur;
}

/// diag(T_m(A)) through an eigendecomposition and cos(m acos x); a second
/// route independent of the matrix recurrence above.
inline Eigen::VectorXd chebyshev_diag_eig(const Eigen::MatrixXd& a, int m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a);
  const auto& lam = eig.eigenvalues();
  Eigen::VectorXd t(lam.size());
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    const double x = std::clamp(lam(i), -1.0, 1.0);
    t(i) = std::cos(static_cast<double>(m) * std::acos(x));
  }
  return (eig.eigenvectors() * t.asDiagonal() * eig.eigenvectors().transpose()).diagonal();
}

/// Leibniz partial sum (4/pi) sum_{j<terms} (-1)^j / (2j+1).
inline double leibniz_partial_sum(int terms) {
  double sum = 0.0;
  for (int j = 0; j < terms; ++j) {
    sum += (j % 2 == 0 ? 1.0 : -1.0) / static_cast<double>(2 * j + 1);
  }
  return 4.0 * sum / 3.141592653589793238462643;
}

/// Brute-force Vietoris-Rips: enumerate every vertex subset up to
/// max_order + 1 elements and keep those with all pairwise distances
/// within eps. Exponential, for tiny clouds only.
inline std::vector<sparsic::Simplex> brute_force_vr(
    const std::vector<std::array<double, 2>>& points, double eps, int max_order) {
  const int n = static_cast<int>(points.size());
  std::vector<sparsic::Simplex> out;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<sparsic::VertexId> verts;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) verts.push_back(i);
    }
    if (static_cast<int>(verts.size()) > max_order + 1) continue;
    bool ok = true;
    for (std::size_t a = 0; a < verts.size() && ok; ++a) {
      for (std::size_t b = a + 1; b < verts.size() && ok; ++b) {
        const double dx = points[static_cast<std::size_t>(verts[a])][0] -
                          points[static_cast<std::size_t>(verts[b])][0];
        const double dy = points[static_cast<std::size_t>(verts[a])][1] -
                          points[static_cast<std::size_t>(verts[b])][1];
        ok = std::sqrt(dx * dx + dy * dy) <= eps;
      }
    }
    if (ok) out.push_back(sparsic::Simplex{std::move(verts)});
  }
  return out;
}

/// All subsets of `verts` with at most max_size elements.
inline std::vector<sparsic::Simplex> brute_force_subsets(
    const std::vector<sparsic::VertexId>& verts, int max_size) {
  std::vector<sparsic::Simplex> out;
  const int n = static_cast<int>(verts.size());
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<sparsic::VertexId> subset;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) subset.push_back(verts[static_cast<std::size_t>(i)]);
    }
    if (static_cast<int>(subset.size()) <= max_size) {
      out.push_back(sparsic::Simplex{std::move(subset)});
    }
  }
  return out;
}

// Frequently used fixtures.

/// Single filled triangle on vertices 1,2,3.
sparsic::SimplicialComplex filled_triangle();

/// The 5-node complex with 7 edges and triangles [1,2,3], [1,3,4].
sparsic::SimplicialComplex two_triangle_complex();

/// Boundary of the tetrahedron on 1..4: all edges and all four triangles,
/// no 3-simplex.
sparsic::SimplicialComplex hollow_tetrahedron();

/// Triangle fan: triangles [0, i, i+1] for i = 1..count, plus closure.
sparsic::SimplicialComplex triangle_fan(int count);

}  // namespace oracles
