#pragma once

#include <Eigen/Dense>
#include <vector>

#include "sparsic/complex.hpp"

namespace sparsic {

/// Dense computations in this artifact are test oracles; anything above
/// this dimension must go through the matrix-free path instead.
inline constexpr Eigen::Index kDenseGuard = 5000;

/// Relative rank cutoff: singular values below kRankTolerance * sigma_max
/// count as zero.
inline constexpr double kRankTolerance = 1e-10;

/// Generalized effective resistance of the (k+1)-simplices of a complex.
struct ResistanceVector {
  Eigen::VectorXd values;  // length m_{k+1}, entries in [0, 1] for exact routes
  int order = 0;           // the k of the sparsification
};

struct BettiProfile {
  std::vector<long long> betti;  // beta_i for i = 0..up_to
  std::vector<long long> ranks;  // rank B_i for i = 1..up_to+1
};

/// r via the truncated SVD of B_{k+1} W_{k+1}: r_i is the squared row norm
/// of the retained right singular vectors. Throws NoSimplices, SizeGuard.
ResistanceVector ger_svd(const SimplicialComplex& c, int k);

/// Independent oracle route: r = diag(W B^T (L_up)^dagger B W) with the
/// pseudo-inverse taken through an eigendecomposition of the dense
/// up-Laplacian. Shares no factorization with ger_svd.
ResistanceVector ger_pinv(const SimplicialComplex& c, int k);

/// Betti numbers beta_i = m_i - rank B_i - rank B_{i+1} for i = 0..up_to,
/// with rank B_0 = rank B_{dim+1} = 0. Ranks via SVD at kRankTolerance.
BettiProfile betti_numbers(const SimplicialComplex& c, int up_to);

struct RankIdentity {
  double r_l1 = 0.0;               // ||r||_1 from ger_svd
  long long rank = 0;              // rank of B_{k+1} W_{k+1} via SVD
  long long alternating = 0;       // sum_{i=0..k} (-1)^{k-i} (m_i - beta_i)
  long long paper_printed = 0;     // m_k - sum_{i=-1..k-1} (-1)^{k-1-i} (m_i - beta_{i+1})
};

/// Cross-checks ||r||_1 against the rank and the alternating Euler-style
/// sum. `alternating` uses the recursion rank B_{i+1} = m_i - beta_i -
/// rank B_i; `paper_printed` evaluates the other published index form,
/// which disagrees on small cases and is reported for comparison only.
RankIdentity r_l1_identity(const SimplicialComplex& c, int k);

}  // namespace sparsic
