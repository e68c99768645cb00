#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <cstdint>

#include "sparsic/incidence.hpp"

namespace sparsic {

/// Matrix-free symmetric PSD operator interface. apply() acts on a block of
/// column vectors at once; one call counts as one operator application.
class LinearOperator {
 public:
  virtual ~LinearOperator() = default;
  virtual Eigen::Index dim() const = 0;
  virtual void apply(const Eigen::Ref<const Eigen::MatrixXd>& x,
                     Eigen::Ref<Eigen::MatrixXd> y) const = 0;

  Eigen::MatrixXd operator()(const Eigen::Ref<const Eigen::MatrixXd>& x) const {
    Eigen::MatrixXd y(dim(), x.cols());
    apply(x, y);
    return y;
  }

  std::uint64_t applications() const { return applications_; }
  void reset_applications() const { applications_ = 0; }

 protected:
  mutable std::uint64_t applications_ = 0;
};

enum class LaplacianMode { Up, Down };

/// Weighted up/down Laplacian built from B_{k+1} and the (k+1)-simplex
/// weights, exposed only through matvecs:
///   up:   B W^2 B^T          acting on R^{m_k}
///   down: W B^T B W          acting on R^{m_{k+1}}
/// with W = diag(sqrt(w)). The Laplacian itself is never materialized.
class UpDownOperator : public LinearOperator {
 public:
  UpDownOperator(const SignedIncidence& boundary, Eigen::VectorXd weights,
                 LaplacianMode mode);

  Eigen::Index dim() const override;
  void apply(const Eigen::Ref<const Eigen::MatrixXd>& x,
             Eigen::Ref<Eigen::MatrixXd> y) const override;

  Eigen::MatrixXd apply_up(const Eigen::Ref<const Eigen::MatrixXd>& x) const;
  Eigen::MatrixXd apply_down(const Eigen::Ref<const Eigen::MatrixXd>& y) const;

  LaplacianMode mode() const { return mode_; }
  Eigen::Index up_dim() const { return boundary_.rows(); }
  Eigen::Index down_dim() const { return boundary_.cols(); }
  Eigen::Index nnz() const { return boundary_.nonZeros(); }
  const Eigen::VectorXd& weights() const { return weights_; }
  const Eigen::SparseMatrix<double>& boundary() const { return boundary_; }

 private:
  Eigen::SparseMatrix<double> boundary_;  // B_{k+1}
  Eigen::VectorXd weights_;               // w values (W^2 diagonal)
  Eigen::VectorXd sqrt_weights_;
  LaplacianMode mode_;
};

/// Rescaled view H = (1/scale) * A of another operator; applications are
/// counted on the underlying operator as well.
class ScaledOperator : public LinearOperator {
 public:
  ScaledOperator(const LinearOperator& inner, double scale)
      : inner_(inner), inv_scale_(1.0 / scale) {}

  Eigen::Index dim() const override { return inner_.dim(); }
  void apply(const Eigen::Ref<const Eigen::MatrixXd>& x,
             Eigen::Ref<Eigen::MatrixXd> y) const override {
    inner_.apply(x, y);
    y *= inv_scale_;
    ++applications_;
  }

 private:
  const LinearOperator& inner_;
  double inv_scale_;
};

/// Largest-eigenvalue estimate with the safety multiplier applied on read.
struct OperatorScale {
  double lambda_max = 0.0;  // raw power-iteration estimate
  double safety = 1.0;
  int iterations_used = 0;
  bool used_norm_bound = false;  // fallback engaged on stagnation

  double scale() const { return lambda_max * safety; }
};

/// Power iteration on `op` until the Rayleigh quotient stabilizes below
/// `tol` relative change, capped at 10*ceil(ln dim) iterations, after which
/// the norm-product upper bound ||BW||_1 * ||BW||_inf takes over so that the
/// returned scale is never an underestimate. Throws ZeroOperator when 64
/// random starts are annihilated.
OperatorScale estimate_lambda_max(const UpDownOperator& op, double tol = 1e-6,
                                  double safety = 1.01, std::uint64_t seed = 0);

/// Convenience for building the order-k up/down pair of a complex.
UpDownOperator make_up_operator(const SimplicialComplex& c, int k);
UpDownOperator make_down_operator(const SimplicialComplex& c, int k);

}  // namespace sparsic
