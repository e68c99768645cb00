#include "sparsic/exact_resistance.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <string>

#include "sparsic/errors.hpp"
#include "sparsic/incidence.hpp"

namespace sparsic {

namespace {

void check_dense_guard(const SimplicialComplex& c, int k) {
  const auto m_k = static_cast<Eigen::Index>(c.count(k));
  const auto m_k1 = static_cast<Eigen::Index>(c.count(k + 1));
  if (m_k > kDenseGuard || m_k1 > kDenseGuard) {
    throw_error(ErrorCode::SizeGuard,
                "dense path limited to " + std::to_string(kDenseGuard) +
                    ", got m_k=" + std::to_string(m_k) +
                    " m_{k+1}=" + std::to_string(m_k1));
  }
}

Eigen::MatrixXd weighted_boundary_dense(const SimplicialComplex& c, int k) {
  Eigen::MatrixXd b = boundary_matrix(c, k + 1).to_dense();
  const auto& w = c.weights(k + 1);
  for (Eigen::Index j = 0; j < b.cols(); ++j) {
    b.col(j) *= std::sqrt(w[static_cast<std::size_t>(j)]);
  }
  return b;
}

// JacobiSVD throughout: the 3.4.0 divide-and-conquer SVD miscomputes
// singular vectors on some wide integer matrices with clustered singular
// values, which silently corrupts r. Two-sided Jacobi is slower but exact
// at desk scale.
long long svd_rank(const Eigen::MatrixXd& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  const double cutoff = kRankTolerance * sv(0);
  long long rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff) ++rank;
  }
  return rank;
}

}  // namespace

ResistanceVector ger_svd(const SimplicialComplex& c, int k) {
  if (c.count(k + 1) == 0) {
    throw_error(ErrorCode::NoSimplices,
                "no simplices of order " + std::to_string(k + 1));
  }
  check_dense_guard(c, k);

  const Eigen::MatrixXd bw = weighted_boundary_dense(c, k);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(bw, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double cutoff = sv.size() > 0 ? kRankTolerance * sv(0) : 0.0;

  ResistanceVector r;
  r.order = k;
  r.values = Eigen::VectorXd::Zero(bw.cols());
  const auto& v = svd.matrixV();
  for (Eigen::Index j = 0; j < sv.size(); ++j) {
    if (sv(j) <= cutoff) continue;
    r.values += v.col(j).cwiseAbs2();
  }
  return r;
}

ResistanceVector ger_pinv(const SimplicialComplex& c, int k) {
  if (c.count(k + 1) == 0) {
    throw_error(ErrorCode::NoSimplices,
                "no simplices of order " + std::to_string(k + 1));
  }
  check_dense_guard(c, k);

  const Eigen::MatrixXd bw = weighted_boundary_dense(c, k);
  const Eigen::MatrixXd lup = bw * bw.transpose();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(lup);
  const auto& lam = eig.eigenvalues();
  const double lam_max = lam.size() > 0 ? lam(lam.size() - 1) : 0.0;
  const double cutoff = kRankTolerance * std::max(lam_max, 0.0);
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(lam.size());
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (lam(i) > cutoff) inv(i) = 1.0 / lam(i);
  }
  const Eigen::MatrixXd pinv =
      eig.eigenvectors() * inv.asDiagonal() * eig.eigenvectors().transpose();

  ResistanceVector r;
  r.order = k;
  r.values = (bw.transpose() * pinv * bw).diagonal();
  return r;
}

BettiProfile betti_numbers(const SimplicialComplex& c, int up_to) {
  if (up_to < 0 || up_to > c.dimension()) {
    throw_error(ErrorCode::OrderOutOfRange,
                "betti orders must lie in [0, dim]");
  }
  for (int i = 0; i <= up_to + 1 && i <= c.dimension(); ++i) {
    if (static_cast<Eigen::Index>(c.count(i)) > kDenseGuard) {
      throw_error(ErrorCode::SizeGuard, "level too large for dense rank computation");
    }
  }

  BettiProfile profile;
  // rank B_i for i = 1..up_to+1; zero beyond the complex dimension.
  for (int i = 1; i <= up_to + 1; ++i) {
    if (i > c.dimension()) {
      profile.ranks.push_back(0);
    } else {
      profile.ranks.push_back(svd_rank(boundary_matrix(c, i).to_dense()));
    }
  }
  for (int i = 0; i <= up_to; ++i) {
    const long long rank_low = i == 0 ? 0 : profile.ranks[static_cast<std::size_t>(i - 1)];
    const long long rank_high = profile.ranks[static_cast<std::size_t>(i)];
    profile.betti.push_back(static_cast<long long>(c.count(i)) - rank_low - rank_high);
  }
  return profile;
}

RankIdentity r_l1_identity(const SimplicialComplex& c, int k) {
  RankIdentity out;
  out.r_l1 = ger_svd(c, k).values.sum();
  out.rank = svd_rank(weighted_boundary_dense(c, k));

  const BettiProfile profile = betti_numbers(c, k);
  long long alternating = 0;
  for (int i = 0; i <= k; ++i) {
    const long long term =
        static_cast<long long>(c.count(i)) - profile.betti[static_cast<std::size_t>(i)];
    alternating += ((k - i) % 2 == 0 ? 1 : -1) * term;
  }
  out.alternating = alternating;

  // The published index form, with m_{-1} = 0: the i = -1 term needs
  // beta_0, so it reads -(-1)^k * (0 - beta_0).
  long long printed_sum = 0;
  for (int i = -1; i <= k - 1; ++i) {
    const long long m_i = i < 0 ? 0 : static_cast<long long>(c.count(i));
    const long long beta_next = profile.betti[static_cast<std::size_t>(i + 1)];
    printed_sum += ((k - 1 - i) % 2 == 0 ? 1 : -1) * (m_i - beta_next);
  }
  out.paper_printed = static_cast<long long>(c.count(k)) - printed_sum;
  return out;
}

}  // namespace sparsic
