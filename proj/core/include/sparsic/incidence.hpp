#pragma once

#include <Eigen/SparseCore>
#include <cstdint>
#include <vector>

#include "sparsic/complex.hpp"

namespace sparsic {

/// Sparse signed boundary matrix B_k in the lexicographic bases: rows index
/// V_{k-1}, columns index V_k, and column j carries the k+1 alternating
/// signs of boundary_faces of the j-th k-simplex.
struct SignedIncidence {
  Eigen::Index rows = 0;  // m_{k-1}
  Eigen::Index cols = 0;  // m_k
  int order = 0;          // the k of B_k

  struct Entry {
    Eigen::Index face;     // row
    Eigen::Index simplex;  // column
    std::int8_t sign;      // +1 or -1
  };
  std::vector<Entry> entries;  // column-major order

  Eigen::SparseMatrix<double> to_sparse() const;
  Eigen::MatrixXd to_dense() const;
};

/// Assembles B_k for 1 <= k <= dim c. Throws OrderOutOfRange.
SignedIncidence boundary_matrix(const SimplicialComplex& c, int k);

/// Verifies B_k * B_{k+1} = 0 in exact integer arithmetic.
/// Throws OrderOutOfRange when k+1 exceeds the complex dimension.
bool chain_complex_check(const SimplicialComplex& c, int k);

/// Same product check on explicit incidences (lets tests flip a sign).
bool chain_product_is_zero(const SignedIncidence& bk, const SignedIncidence& bk1);

}  // namespace sparsic
