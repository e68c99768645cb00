#pragma once

#include <Eigen/Dense>
#include <vector>

#include "sparsic/complex.hpp"
#include "sparsic/exact_resistance.hpp"

namespace sparsic {

/// Full local-density-of-states table of a dense symmetric operator:
/// masses(j, i) = |e_j^T q_i|^2 for eigenpair (lambda_i, q_i). Each row of
/// masses sums to 1.
struct LdosTable {
  Eigen::VectorXd eigenvalues;  // ascending
  Eigen::MatrixXd masses;       // n x n
};

enum class MollifierKind { None, Box, Gaussian };

struct HistogramSpec {
  int bin_count = 64;
  double lo = 0.0;
  double hi = 1.0;
  MollifierKind mollifier = MollifierKind::None;
  double width = 0.0;  // mollifier width, ignored for None
};

/// Dense materialization of the order-k weighted up-Laplacian
/// B_{k+1} W^2 B_{k+1}^T (zero matrix when no (k+1)-simplices exist).
/// Guarded at kDenseGuard.
Eigen::MatrixXd dense_up_laplacian(const SimplicialComplex& c, int k);
Eigen::MatrixXd dense_down_laplacian(const SimplicialComplex& c, int k);

/// (1/lambda_max(ref)) * ||L_up(ref) - L_up(cmp)||_2 at order k. Both
/// complexes must share V_k; each contributes its own stored weights.
double spectral_distance(const SimplicialComplex& c_ref, const SimplicialComplex& c_cmp,
                         int k);

/// l2 distance between the sorted spectra of the two order-k up-Laplacians;
/// secondary closeness series for benchmark reports.
double sorted_eigenvalue_distance(const SimplicialComplex& c_ref,
                                  const SimplicialComplex& c_cmp, int k);

/// Loewner eps-closeness of the comparison up-Laplacian to the reference,
/// tested on the positive eigenspace of the reference: all generalized
/// eigenvalues must lie in [1-eps, 1+eps] and the comparison must
/// annihilate the reference kernel within 1e-8 (relative).
bool eps_close_check(const SimplicialComplex& c_ref, const SimplicialComplex& c_cmp,
                     int k, double eps);

/// Full eigendecomposition of the chosen Laplacian at order k.
enum class LaplacianSide { Up, Down };
LdosTable exact_ldos(const SimplicialComplex& c, int k, LaplacianSide side);

/// Per-index histogram of an LDoS table; rows follow the table indices.
Eigen::MatrixXd ldos_histogram(const LdosTable& t, const HistogramSpec& spec);

/// Odd extension over [-hi, hi]: 2*bin_count bins, negated mirrored masses,
/// eigenvalues at zero (relative tolerance kRankTolerance) dropped.
Eigen::MatrixXd symmetrized_ldos_histogram(const LdosTable& t, const HistogramSpec& spec);

}  // namespace sparsic
