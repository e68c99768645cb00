#include "sparsic/incidence.hpp"

#include <map>
#include <string>

#include "sparsic/errors.hpp"

namespace sparsic {

Eigen::SparseMatrix<double> SignedIncidence::to_sparse() const {
  Eigen::SparseMatrix<double> m(rows, cols);
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(entries.size());
  for (const auto& e : entries) {
    triplets.emplace_back(e.face, e.simplex, static_cast<double>(e.sign));
  }
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.makeCompressed();
  return m;
}

Eigen::MatrixXd SignedIncidence::to_dense() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows, cols);
  for (const auto& e : entries) {
    m(e.face, e.simplex) = static_cast<double>(e.sign);
  }
  return m;
}

SignedIncidence boundary_matrix(const SimplicialComplex& c, int k) {
  if (k < 1 || k > c.dimension()) {
    throw_error(ErrorCode::OrderOutOfRange,
                "boundary matrix order " + std::to_string(k) +
                    " outside [1, " + std::to_string(c.dimension()) + "]");
  }
  SignedIncidence b;
  b.order = k;
  b.rows = static_cast<Eigen::Index>(c.count(k - 1));
  b.cols = static_cast<Eigen::Index>(c.count(k));
  b.entries.reserve(static_cast<std::size_t>(b.cols) * static_cast<std::size_t>(k + 1));
  const auto& level = c.level(k);
  for (std::size_t j = 0; j < level.size(); ++j) {
    for (const auto& [face, sign] : boundary_faces(level[j])) {
      b.entries.push_back({static_cast<Eigen::Index>(c.index_of(face)),
                           static_cast<Eigen::Index>(j),
                           static_cast<std::int8_t>(sign)});
    }
  }
  return b;
}

bool chain_product_is_zero(const SignedIncidence& bk, const SignedIncidence& bk1) {
  if (bk.cols != bk1.rows) {
    throw_error(ErrorCode::DimensionMismatch, "inner dimensions of B_k and B_{k+1} differ");
  }
  // Column-of-B_k lookup by middle index.
  std::vector<std::vector<std::pair<Eigen::Index, int>>> bk_cols(
      static_cast<std::size_t>(bk.cols));
  for (const auto& e : bk.entries) {
    bk_cols[static_cast<std::size_t>(e.simplex)].emplace_back(e.face, e.sign);
  }
  std::vector<std::vector<std::pair<Eigen::Index, int>>> bk1_cols(
      static_cast<std::size_t>(bk1.cols));
  for (const auto& e : bk1.entries) {
    bk1_cols[static_cast<std::size_t>(e.simplex)].emplace_back(e.face, e.sign);
  }
  for (const auto& col : bk1_cols) {
    std::map<Eigen::Index, long long> acc;
    for (const auto& [mid, s1] : col) {
      for (const auto& [row, s0] : bk_cols[static_cast<std::size_t>(mid)]) {
        acc[row] += static_cast<long long>(s0) * s1;
      }
    }
    for (const auto& [row, value] : acc) {
      (void)row;
      if (value != 0) return false;
    }
  }
  return true;
}

bool chain_complex_check(const SimplicialComplex& c, int k) {
  if (k < 1 || k + 1 > c.dimension()) {
    throw_error(ErrorCode::OrderOutOfRange,
                "chain check needs orders k and k+1 inside the complex");
  }
  return chain_product_is_zero(boundary_matrix(c, k), boundary_matrix(c, k + 1));
}

}  // namespace sparsic
