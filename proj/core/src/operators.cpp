#include "sparsic/operators.hpp"

#include <cmath>
#include <string>

#include "sparsic/errors.hpp"
#include "sparsic/rng.hpp"

namespace sparsic {

UpDownOperator::UpDownOperator(const SignedIncidence& boundary,
                               Eigen::VectorXd weights, LaplacianMode mode)
    : boundary_(boundary.to_sparse()), weights_(std::move(weights)), mode_(mode) {
  if (weights_.size() != boundary_.cols()) {
    throw_error(ErrorCode::DimensionMismatch,
                "need one weight per (k+1)-simplex column");
  }
  if (weights_.size() > 0 && weights_.minCoeff() <= 0.0) {
    throw_error(ErrorCode::NonpositiveWeight, "operator weights must be positive");
  }
  sqrt_weights_ = weights_.cwiseSqrt();
}

Eigen::Index UpDownOperator::dim() const {
  return mode_ == LaplacianMode::Up ? up_dim() : down_dim();
}

void UpDownOperator::apply(const Eigen::Ref<const Eigen::MatrixXd>& x,
                           Eigen::Ref<Eigen::MatrixXd> y) const {
  if (x.rows() != dim() || y.rows() != dim() || x.cols() != y.cols()) {
    throw_error(ErrorCode::DimensionMismatch,
                "operand has " + std::to_string(x.rows()) + " rows, operator dimension is " +
                    std::to_string(dim()));
  }
  if (mode_ == LaplacianMode::Up) {
    // B W^2 B^T x as three sparse products.
    Eigen::MatrixXd t = boundary_.transpose() * x;
    t.array().colwise() *= weights_.array();
    y = boundary_ * t;
  } else {
    // W B^T B W y.
    Eigen::MatrixXd t = x;
    t.array().colwise() *= sqrt_weights_.array();
    Eigen::MatrixXd u = boundary_ * t;
    t = boundary_.transpose() * u;
    t.array().colwise() *= sqrt_weights_.array();
    y = t;
  }
  ++applications_;
}

Eigen::MatrixXd UpDownOperator::apply_up(const Eigen::Ref<const Eigen::MatrixXd>& x) const {
  if (x.rows() != up_dim()) {
    throw_error(ErrorCode::DimensionMismatch, "apply_up expects length m_k");
  }
  Eigen::MatrixXd t = boundary_.transpose() * x;
  t.array().colwise() *= weights_.array();
  ++applications_;
  return boundary_ * t;
}

Eigen::MatrixXd UpDownOperator::apply_down(const Eigen::Ref<const Eigen::MatrixXd>& y) const {
  if (y.rows() != down_dim()) {
    throw_error(ErrorCode::DimensionMismatch, "apply_down expects length m_{k+1}");
  }
  Eigen::MatrixXd t = y;
  t.array().colwise() *= sqrt_weights_.array();
  Eigen::MatrixXd u = boundary_ * t;
  t = boundary_.transpose() * u;
  t.array().colwise() *= sqrt_weights_.array();
  ++applications_;
  return t;
}

OperatorScale estimate_lambda_max(const UpDownOperator& op, double tol,
                                  double safety, std::uint64_t seed) {
  const Eigen::Index n = op.dim();
  if (n == 0) {
    throw_error(ErrorCode::ZeroOperator, "operator has dimension zero");
  }
  SplitMix64 rng(mix_seed(seed, 0x9d1a));

  // A start vector the operator annihilates restarts the iteration.
  Eigen::VectorXd x(n);
  Eigen::VectorXd y(n);
  bool alive = false;
  for (int attempt = 0; attempt < 64 && !alive; ++attempt) {
    for (Eigen::Index i = 0; i < n; ++i) x(i) = rng.normal();
    x.normalize();
    y = op(x);
    alive = y.norm() > 1e-14;
  }
  if (!alive) {
    throw_error(ErrorCode::ZeroOperator, "64 random starts were annihilated");
  }

  const int max_iterations =
      10 * static_cast<int>(std::ceil(std::log(static_cast<double>(std::max<Eigen::Index>(n, 2)))));
  OperatorScale result;
  result.safety = safety;
  double rayleigh = x.dot(y);
  int iterations = 1;
  bool converged = false;
  while (iterations < max_iterations) {
    x = y / y.norm();
    y = op(x);
    ++iterations;
    const double next = x.dot(y);
    if (std::abs(next - rayleigh) <= tol * std::abs(next)) {
      rayleigh = next;
      converged = true;
      break;
    }
    rayleigh = next;
  }
  result.iterations_used = iterations;

  if (converged && rayleigh > 0.0) {
    result.lambda_max = rayleigh;
  } else {
    // Stagnation fallback: lambda_max(W B^T B W) = sigma_max(BW)^2
    // <= ||BW||_1 ||BW||_inf, an upper bound, so sigma(H) stays in [0,1].
    const auto& b = op.boundary();
    const Eigen::VectorXd sw = op.weights().cwiseSqrt();
    Eigen::VectorXd col_sums = Eigen::VectorXd::Zero(b.cols());
    Eigen::VectorXd row_sums = Eigen::VectorXd::Zero(b.rows());
    for (int j = 0; j < b.outerSize(); ++j) {
      for (Eigen::SparseMatrix<double>::InnerIterator it(b, j); it; ++it) {
        const double v = std::abs(it.value()) * sw(it.col());
        col_sums(it.col()) += v;
        row_sums(it.row()) += v;
      }
    }
    result.lambda_max = col_sums.maxCoeff() * row_sums.maxCoeff();
    result.used_norm_bound = true;
  }
  return result;
}

UpDownOperator make_up_operator(const SimplicialComplex& c, int k) {
  const auto b = boundary_matrix(c, k + 1);
  const auto& w = c.weights(k + 1);
  return UpDownOperator(b, Eigen::Map<const Eigen::VectorXd>(w.data(),
                                                             static_cast<Eigen::Index>(w.size())),
                        LaplacianMode::Up);
}

UpDownOperator make_down_operator(const SimplicialComplex& c, int k) {
  const auto b = boundary_matrix(c, k + 1);
  const auto& w = c.weights(k + 1);
  return UpDownOperator(b, Eigen::Map<const Eigen::VectorXd>(w.data(),
                                                             static_cast<Eigen::Index>(w.size())),
                        LaplacianMode::Down);
}

}  // namespace sparsic
