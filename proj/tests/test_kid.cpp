#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "oracles.hpp"
#include "sparsic/builders.hpp"
#include "sparsic/errors.hpp"
#include "sparsic/exact_resistance.hpp"
#include "sparsic/kid.hpp"
#include "sparsic/metrics.hpp"
#include "sparsic/operators.hpp"

using namespace sparsic;

namespace {

/// Dense symmetric matrix exposed through the operator interface.
class DenseOperator : public LinearOperator {
 public:
  explicit DenseOperator(Eigen::MatrixXd m) : m_(std::move(m)) {}
  Eigen::Index dim() const override { return m_.rows(); }
  void apply(const Eigen::Ref<const Eigen::MatrixXd>& x,
             Eigen::Ref<Eigen::MatrixXd> y) const override {
    y = m_ * x;
    ++applications_;
  }

 private:
  Eigen::MatrixXd m_;
};

Eigen::MatrixXd scaled_down_laplacian(const SimplicialComplex& c, int k, double* scale) {
  const auto op = make_down_operator(c, k);
  const auto s = estimate_lambda_max(op, 1e-10, 1.01, 1);
  *scale = s.scale();
  return op.apply_down(Eigen::MatrixXd::Identity(op.down_dim(), op.down_dim())) /
         s.scale();
}

}  // namespace

TEST_CASE("default_parameters reproduces the scaled formulas") {
  auto d = default_parameters(100, 300, 0.1);
  CHECK(d.moments == 30);
  CHECK(d.mc_vectors == 73);

  d = default_parameters(100, 300, 1.0);
  CHECK(d.moments == 3);
  CHECK(d.mc_vectors == 1);

  CHECK(theoretical_moment_count(1.0, 100, 300, 0.1) == doctest::Approx(720.0));

  d = default_parameters(100, 300, 0.1, Eigen::Index{20}, 5LL);
  REQUIRE(d.dense_enough.has_value());
  CHECK(*d.dense_enough);  // 50 >= 20 + 5
  d = default_parameters(100, 300, 0.1, Eigen::Index{48}, 5LL);
  CHECK_FALSE(*d.dense_enough);
}

TEST_CASE("make_rademacher draws stable sign columns") {
  const auto block = make_rademacher(32, 8, 99);
  for (Eigen::Index i = 0; i < block.Z.rows(); ++i) {
    for (Eigen::Index j = 0; j < block.Z.cols(); ++j) {
      CHECK(std::abs(block.Z(i, j)) == 1.0);
    }
  }
  const auto again = make_rademacher(32, 8, 99);
  CHECK((block.Z - again.Z).cwiseAbs().maxCoeff() == 0.0);

  // Column-seeded: the first columns do not move when N_z grows.
  const auto wider = make_rademacher(32, 16, 99);
  CHECK((wider.Z.leftCols(8) - block.Z).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("rademacher columns have small means at large m") {
  int failures = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto block = make_rademacher(400, 1, seed);
    if (std::abs(block.Z.col(0).mean()) > 5.0 / std::sqrt(400.0)) ++failures;
  }
  CHECK(failures == 0);  // 5 sigma events across 100 trials
}

TEST_CASE("kid_moments on a 1x1 operator with eigenvalue 1") {
  const DenseOperator h(Eigen::MatrixXd::Ones(1, 1));
  const auto z = make_rademacher(1, 4, 3);
  const auto d = kid_moments(h, z, 9);
  for (int m : d.moment_indices()) {
    CHECK(d.entry(m, 0) == doctest::Approx(1.0).epsilon(1e-12));
  }
  d.validate();
}

TEST_CASE("kid_moments on the zero operator vanish") {
  const DenseOperator h(Eigen::MatrixXd::Zero(6, 6));
  const auto z = make_rademacher(6, 3, 8);
  const auto d = kid_moments(h, z, 7);
  for (int m : d.moment_indices()) {
    CHECK(d.moment_row(m).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("kid_moments performs exactly one application per Chebyshev step") {
  const DenseOperator h(Eigen::MatrixXd::Identity(5, 5) * 0.5);
  const auto z = make_rademacher(5, 2, 1);
  (void)kid_moments(h, z, 11);
  CHECK(h.applications() == 11);  // odd truncation: T_1..T_11

  h.reset_applications();
  (void)kid_moments(h, z, 12);  // even truncation capped to 11
  CHECK(h.applications() == 11);
}

TEST_CASE("moment estimates converge to the exact diagonal") {
  const auto pc = sample_clustered_points(14, 2.0, 55);
  const auto c = vietoris_rips(pc, FiltrationConfig{2.3, 2});
  REQUIRE(c.count(2) >= 10);
  double scale = 0.0;
  const Eigen::MatrixXd h = scaled_down_laplacian(c, 1, &scale);
  const DenseOperator op(h);
  const auto z = make_rademacher(h.rows(), 10000, 5);
  const auto d = kid_moments(op, z, 9);
  for (int m : d.moment_indices()) {
    const Eigen::VectorXd exact = oracles::chebyshev_diag_eig(h, m);
    CHECK((d.moment_row(m).transpose() - exact).cwiseAbs().maxCoeff() < 0.05);
  }
}

TEST_CASE("vector recurrence matches dense polynomial evaluation") {
  const auto pc = sample_clustered_points(12, 2.0, 19);
  const auto c = vietoris_rips(pc, FiltrationConfig{2.5, 2});
  REQUIRE(c.count(2) > 0);
  double scale = 0.0;
  const Eigen::MatrixXd h = scaled_down_laplacian(c, 1, &scale);
  const DenseOperator op(h);
  const auto z = make_rademacher(h.rows(), 3, 77);

  // Run the block recurrence manually and compare T_m(H) Z column blocks
  // against the dense matrix polynomial for m <= 49.
  Eigen::MatrixXd prev = z.Z;
  Eigen::MatrixXd cur(h.rows(), z.Z.cols());
  op.apply(prev, cur);
  for (int m = 2; m <= 49; ++m) {
    Eigen::MatrixXd next(h.rows(), z.Z.cols());
    op.apply(cur, next);
    next = 2.0 * next - prev;
    prev = cur;
    cur = next;
    if (m % 10 == 9 || m == 49) {
      const Eigen::MatrixXd direct = oracles::chebyshev_matrix(h, m) * z.Z;
      CHECK((cur - direct).cwiseAbs().maxCoeff() < 1e-8);
    }
  }
}

TEST_CASE("exact even moments of the symmetrized density vanish") {
  const auto pc = sample_clustered_points(12, 2.0, 91);
  const auto c = vietoris_rips(pc, FiltrationConfig{2.4, 2});
  REQUIRE(c.count(2) > 0);
  REQUIRE(c.count(2) <= 100);
  double scale = 0.0;
  const Eigen::MatrixXd h = scaled_down_laplacian(c, 1, &scale);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h);
  const auto& lam = eig.eigenvalues();
  const Eigen::MatrixXd masses = eig.eigenvectors().cwiseAbs2();
  const double cut = 1e-10 * lam.cwiseAbs().maxCoeff();
  for (const int m : {2, 4, 6, 8, 10}) {
    for (Eigen::Index j = 0; j < h.rows(); ++j) {
      double moment = 0.0;
      for (Eigen::Index e = 0; e < lam.size(); ++e) {
        if (lam(e) <= cut) continue;
        const double x = std::clamp(lam(e), -1.0, 1.0);
        const double t_pos = std::cos(m * std::acos(x));
        const double t_neg = std::cos(m * std::acos(std::clamp(-x, -1.0, 1.0)));
        moment += masses(j, e) * (t_pos - t_neg);
      }
      CHECK(std::abs(moment) < 1e-10);
    }
  }
}

TEST_CASE("integrate_moments closed-form coefficients") {
  // c_1 and c_3 from the analytic integral; probe them through a moment
  // matrix with a single nonzero row.
  MomentMatrix d(3, 1, 1.0);
  d.moment_row(1)(0) = 1.0;
  d.moment_row(3)(0) = 0.0;
  CHECK(integrate_moments(d)(0) == doctest::Approx(2.0 * 2.0 / 3.141592653589793)
                                       .epsilon(1e-12));
  d.moment_row(1)(0) = 0.0;
  d.moment_row(3)(0) = 1.0;
  // c_3 < 0, so the clamp floors the result at zero; check pre-clamp via a
  // mixed row instead.
  d.moment_row(1)(0) = 1.0;
  const double expected = 2.0 * (2.0 / 3.141592653589793) +
                          2.0 * (-2.0 / (3.0 * 3.141592653589793));
  CHECK(integrate_moments(d)(0) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("integrate_moments matches the Leibniz partial sum at eigenvalue 1") {
  const int truncation = 199;
  MomentMatrix d(truncation, 1, 1.0);
  for (int m : d.moment_indices()) d.moment_row(m)(0) = 1.0;  // T_m(1) = 1
  const double value = integrate_moments(d)(0);
  CHECK(value == doctest::Approx(oracles::leibniz_partial_sum(100)).epsilon(1e-12));
  CHECK(std::abs(value - 1.0) < 4.0 / (3.141592653589793 * 201.0));
}

TEST_CASE("integrate_moments of a zero matrix is zero") {
  MomentMatrix d(9, 4, 1.0);
  CHECK(integrate_moments(d).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("histogram integration cross-checks the closed form") {
  const auto pc = sample_clustered_points(12, 2.0, 31);
  const auto c = vietoris_rips(pc, FiltrationConfig{2.5, 2});
  REQUIRE(c.count(2) > 0);
  double scale = 0.0;
  const Eigen::MatrixXd h = scaled_down_laplacian(c, 1, &scale);
  const DenseOperator op(h);
  const auto z = make_rademacher(h.rows(), 64, 13);
  const auto d = kid_moments(op, z, 31);
  const Eigen::VectorXd closed = integrate_moments(d);
  const Eigen::VectorXd binned = integrate_moments_histogram(d, 4096);
  CHECK((closed - binned).cwiseAbs().maxCoeff() < 0.02);
}

TEST_CASE("kid_resistance on a single simplex gives the unit measure") {
  const auto triangle = oracles::filled_triangle();
  KidConfig cfg;
  cfg.delta = 0.5;
  cfg.seed = 5;
  const auto result = kid_resistance(triangle, 1, cfg);
  CHECK(result.measure.probs(0) == 1.0);
  CHECK(result.report.operator_applications ==
        static_cast<std::uint64_t>(result.report.moments_used -
                                   (result.report.moments_used % 2 == 0 ? 1 : 0)));
}

TEST_CASE("kid_resistance is deterministic per seed") {
  const auto pc = sample_clustered_points(16, 2.5, 2);
  const auto c = vietoris_rips(pc, FiltrationConfig{2.2, 2});
  REQUIRE(c.count(2) > 0);
  KidConfig cfg;
  cfg.delta = 0.2;
  cfg.seed = 1234;
  const auto a = kid_resistance(c, 1, cfg);
  const auto b = kid_resistance(c, 1, cfg);
  CHECK((a.measure.probs - b.measure.probs).cwiseAbs().maxCoeff() == 0.0);
  cfg.seed = 1235;
  const auto other = kid_resistance(c, 1, cfg);
  CHECK((a.measure.probs - other.measure.probs).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("kid workspace stays linear in m_{k+1} x N_z") {
  const auto pc = sample_clustered_points(20, 2.5, 8);
  const auto c = vietoris_rips(pc, FiltrationConfig{2.0, 2});
  REQUIRE(c.count(2) > 0);
  KidConfig cfg;
  cfg.delta = 0.3;
  cfg.seed = 9;
  const auto result = kid_resistance(c, 1, cfg);
  const auto m2 = static_cast<std::uint64_t>(c.count(2));
  const auto nz = static_cast<std::uint64_t>(result.report.mc_vectors_used);
  CHECK(result.report.workspace_doubles <=
        4 * m2 * nz + m2 * static_cast<std::uint64_t>(result.report.moments_used));
  CHECK(result.report.workspace_doubles < m2 * m2 + 4 * m2 * nz);
}

TEST_CASE("kernel-ignoring: exact integrals ignore added null directions") {
  // Gluing a disjoint copy of a complex enlarges the kernel side of the
  // spectrum picture without touching the original block's nonzero
  // eigenpairs, so the exact truncated integrals sum(2 [T_m(H)]_jj c_m) of
  // the original entries must not move.
  const auto pc = sample_clustered_points(8, 1.5, 3);
  const auto one = vietoris_rips(pc, FiltrationConfig{2.5, 2});
  REQUIRE(one.count(2) >= 2);

  std::vector<std::vector<Simplex>> levels;
  std::vector<std::vector<double>> weights;
  const VertexId shift = 100;
  for (int order = 0; order <= one.dimension(); ++order) {
    auto level = one.level(order);
    for (const auto& s : one.level(order)) {
      Simplex moved = s;
      for (auto& v : moved.vertices) v += shift;
      level.push_back(moved);
    }
    levels.push_back(level);
    auto w = one.weights(order);
    w.insert(w.end(), one.weights(order).begin(), one.weights(order).end());
    weights.push_back(w);
  }
  const auto two = assemble_complex(levels, weights);
  REQUIRE(two.count(2) == 2 * one.count(2));

  const auto integrate_exact = [](const SimplicialComplex& c, int truncation) {
    const auto op = make_down_operator(c, 1);
    const auto s = estimate_lambda_max(op, 1e-10, 1.01, 1);
    const Eigen::MatrixXd h =
        op.apply_down(Eigen::MatrixXd::Identity(op.down_dim(), op.down_dim())) /
        s.scale();
    MomentMatrix d(truncation, h.rows(), s.scale());
    for (int m = 1; m <= truncation; m += 2) {
      d.moment_row(m) = oracles::chebyshev_diag_eig(h, m).transpose();
    }
    return integrate_moments(d);
  };

  // The doubled complex duplicates the spectrum, so lambda_max and the
  // scaled operator coincide on the original block.
  const Eigen::VectorXd r_one = integrate_exact(one, 31);
  const Eigen::VectorXd r_two = integrate_exact(two, 31);
  const auto m2 = static_cast<Eigen::Index>(one.count(2));
  // Original simplices come first: the copy's vertex ids are all larger.
  CHECK((r_two.head(m2) - r_one).cwiseAbs().maxCoeff() < 1e-10);
}
