#include "sparsic/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sparsic/errors.hpp"
#include "sparsic/incidence.hpp"

namespace sparsic {

namespace {

void guard_dimension(Eigen::Index n) {
  if (n > kDenseGuard) {
    throw_error(ErrorCode::SizeGuard,
                "dense computation limited to dimension " + std::to_string(kDenseGuard) +
                    ", got " + std::to_string(n));
  }
}

Eigen::MatrixXd weighted_boundary(const SimplicialComplex& c, int k) {
  Eigen::MatrixXd b = boundary_matrix(c, k + 1).to_dense();
  const auto& w = c.weights(k + 1);
  for (Eigen::Index j = 0; j < b.cols(); ++j) {
    b.col(j) *= std::sqrt(w[static_cast<std::size_t>(j)]);
  }
  return b;
}

void require_shared_level(const SimplicialComplex& a, const SimplicialComplex& b, int k) {
  if (a.level(k) != b.level(k)) {
    throw_error(ErrorCode::LevelMismatch,
                "complexes disagree at order " + std::to_string(k));
  }
}

double mollified_bin_mass(double lambda, double lo, double width, int bin,
                          const HistogramSpec& spec) {
  const double a = lo + width * bin;
  const double b = a + width;
  switch (spec.mollifier) {
    case MollifierKind::None:
      return (lambda >= a && lambda < b) ? 1.0 : 0.0;
    case MollifierKind::Box: {
      const double half = spec.width / 2.0;
      const double overlap =
          std::max(0.0, std::min(b, lambda + half) - std::max(a, lambda - half));
      return overlap / spec.width;
    }
    case MollifierKind::Gaussian: {
      const auto cdf = [&](double x) {
        return 0.5 * std::erfc(-(x - lambda) / (spec.width * std::sqrt(2.0)));
      };
      return cdf(b) - cdf(a);
    }
  }
  return 0.0;
}

}  // namespace

Eigen::MatrixXd dense_up_laplacian(const SimplicialComplex& c, int k) {
  const auto m_k = static_cast<Eigen::Index>(c.count(k));
  guard_dimension(m_k);
  if (c.count(k + 1) == 0) {
    return Eigen::MatrixXd::Zero(m_k, m_k);
  }
  guard_dimension(static_cast<Eigen::Index>(c.count(k + 1)));
  const Eigen::MatrixXd bw = weighted_boundary(c, k);
  return bw * bw.transpose();
}

Eigen::MatrixXd dense_down_laplacian(const SimplicialComplex& c, int k) {
  const auto m_k = static_cast<Eigen::Index>(c.count(k));
  guard_dimension(m_k);
  if (k < 1 || m_k == 0) {
    throw_error(ErrorCode::OrderOutOfRange, "down-Laplacian needs 1 <= k <= dim");
  }
  const Eigen::MatrixXd bw = weighted_boundary(c, k - 1);
  return bw.transpose() * bw;
}

double spectral_distance(const SimplicialComplex& c_ref, const SimplicialComplex& c_cmp,
                         int k) {
  require_shared_level(c_ref, c_cmp, k);
  const Eigen::MatrixXd l_ref = dense_up_laplacian(c_ref, k);
  const Eigen::MatrixXd l_cmp = dense_up_laplacian(c_cmp, k);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref_eig(l_ref, Eigen::EigenvaluesOnly);
  const double lambda_max = ref_eig.eigenvalues().cwiseAbs().maxCoeff();
  if (!(lambda_max > 0.0)) {
    throw_error(ErrorCode::ZeroOperator, "reference up-Laplacian is zero");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> diff_eig(l_ref - l_cmp,
                                                          Eigen::EigenvaluesOnly);
  return diff_eig.eigenvalues().cwiseAbs().maxCoeff() / lambda_max;
}

double sorted_eigenvalue_distance(const SimplicialComplex& c_ref,
                                  const SimplicialComplex& c_cmp, int k) {
  require_shared_level(c_ref, c_cmp, k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> a(dense_up_laplacian(c_ref, k),
                                                   Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> b(dense_up_laplacian(c_cmp, k),
                                                   Eigen::EigenvaluesOnly);
  return (a.eigenvalues() - b.eigenvalues()).norm();
}

bool eps_close_check(const SimplicialComplex& c_ref, const SimplicialComplex& c_cmp,
                     int k, double eps) {
  require_shared_level(c_ref, c_cmp, k);
  const Eigen::MatrixXd l_ref = dense_up_laplacian(c_ref, k);
  const Eigen::MatrixXd l_cmp = dense_up_laplacian(c_cmp, k);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(l_ref);
  const auto& lam = eig.eigenvalues();
  const double lam_max = lam.size() > 0 ? lam(lam.size() - 1) : 0.0;
  if (!(lam_max > 0.0)) {
    throw_error(ErrorCode::ZeroOperator, "reference up-Laplacian is zero");
  }
  const double cutoff = kRankTolerance * lam_max;

  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (lam(i) > cutoff) ++rank;
  }
  const Eigen::Index n = lam.size();
  const Eigen::MatrixXd positive = eig.eigenvectors().rightCols(rank);
  const Eigen::MatrixXd kernel = eig.eigenvectors().leftCols(n - rank);

  // The Loewner inequalities with eps < 1 force kernel containment; test it
  // rather than assume it.
  if (kernel.cols() > 0) {
    const double leak = (l_cmp * kernel).cwiseAbs().maxCoeff();
    if (leak > 1e-8 * lam_max) return false;
  }

  Eigen::VectorXd inv_sqrt(rank);
  for (Eigen::Index i = 0; i < rank; ++i) {
    inv_sqrt(i) = 1.0 / std::sqrt(lam(n - rank + i));
  }
  const Eigen::MatrixXd congruence = inv_sqrt.asDiagonal() *
                                     (positive.transpose() * l_cmp * positive) *
                                     inv_sqrt.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> gen(congruence, Eigen::EigenvaluesOnly);
  const double lo = gen.eigenvalues().minCoeff();
  const double hi = gen.eigenvalues().maxCoeff();
  return lo >= 1.0 - eps && hi <= 1.0 + eps;
}

LdosTable exact_ldos(const SimplicialComplex& c, int k, LaplacianSide side) {
  const Eigen::MatrixXd l = side == LaplacianSide::Up ? dense_up_laplacian(c, k)
                                                      : dense_down_laplacian(c, k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(l);
  LdosTable t;
  t.eigenvalues = eig.eigenvalues();
  t.masses = eig.eigenvectors().cwiseAbs2();
  return t;
}

Eigen::MatrixXd ldos_histogram(const LdosTable& t, const HistogramSpec& spec) {
  if (spec.bin_count < 1 || !(spec.lo < spec.hi)) {
    throw_error(ErrorCode::InvalidConfig, "histogram needs bins >= 1 and lo < hi");
  }
  if (spec.mollifier != MollifierKind::None && !(spec.width > 0.0)) {
    throw_error(ErrorCode::InvalidConfig, "mollified histogram needs a positive width");
  }
  const Eigen::Index n = t.eigenvalues.size();
  const double width = (spec.hi - spec.lo) / spec.bin_count;
  Eigen::MatrixXd bins = Eigen::MatrixXd::Zero(t.masses.rows(), spec.bin_count);
  for (Eigen::Index i = 0; i < n; ++i) {
    double lambda = t.eigenvalues(i);
    if (spec.mollifier == MollifierKind::None) {
      // Values exactly at hi fold into the last bin.
      if (lambda < spec.lo || lambda > spec.hi) continue;
      auto bin = static_cast<Eigen::Index>((lambda - spec.lo) / width);
      bin = std::min<Eigen::Index>(bin, spec.bin_count - 1);
      bins.col(bin) += t.masses.col(i);
    } else {
      for (int b = 0; b < spec.bin_count; ++b) {
        const double mass = mollified_bin_mass(lambda, spec.lo, width, b, spec);
        if (mass > 0.0) bins.col(b) += mass * t.masses.col(i);
      }
    }
  }
  return bins;
}

Eigen::MatrixXd symmetrized_ldos_histogram(const LdosTable& t, const HistogramSpec& spec) {
  const double lambda_top = t.eigenvalues.size() > 0
                                ? t.eigenvalues.cwiseAbs().maxCoeff()
                                : 0.0;
  const double zero_cut = kRankTolerance * std::max(lambda_top, 1.0);

  LdosTable positive;
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < t.eigenvalues.size(); ++i) {
    if (t.eigenvalues(i) > zero_cut) keep.push_back(i);
  }
  positive.eigenvalues.resize(static_cast<Eigen::Index>(keep.size()));
  positive.masses.resize(t.masses.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j) {
    positive.eigenvalues(static_cast<Eigen::Index>(j)) = t.eigenvalues(keep[j]);
    positive.masses.col(static_cast<Eigen::Index>(j)) = t.masses.col(keep[j]);
  }

  HistogramSpec half = spec;
  half.lo = 0.0;
  const Eigen::MatrixXd pos_bins = ldos_histogram(positive, half);

  Eigen::MatrixXd bins(pos_bins.rows(), 2 * spec.bin_count);
  for (int b = 0; b < spec.bin_count; ++b) {
    bins.col(spec.bin_count + b) = pos_bins.col(b);
    bins.col(spec.bin_count - 1 - b) = -pos_bins.col(b);
  }
  return bins;
}

}  // namespace sparsic
