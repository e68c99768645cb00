#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "sparsic/complex.hpp"
#include "sparsic/exact_resistance.hpp"
#include "sparsic/operators.hpp"
#include "sparsic/sparsify.hpp"

namespace sparsic {

/// Tuning knobs for the kernel-ignoring resistance approximation.
/// M and mc_vectors left at 0 are derived from delta and the complex sizes
/// via default_parameters.
struct KidConfig {
  double delta = 0.1;     // target measure error scale, in units of 1/m_{k+1}
  int moments = 0;        // M; 0 = derive
  int mc_vectors = 0;     // N_z; 0 = derive
  std::uint64_t seed = 0;
  std::optional<double> lipschitz_estimate;  // L, reporting only
  std::optional<double> mollifier_sup;       // ||K_dh||_inf, reporting only
  bool jackson_damping = false;              // off for all validated runs
  double power_tol = 1e-6;
  double power_safety = 1.01;
};

/// Empirically sufficient parameter choices M = ceil(m_{k+1} / (delta m_k))
/// and N_z = ceil((1/10)(8/pi^2) m_{k+1}^2 / (delta m_k)^2), plus the
/// density flag m_k/2 >= m_{k-1} + beta_k when those inputs are supplied.
struct KidDefaults {
  int moments = 1;
  int mc_vectors = 1;
  std::optional<bool> dense_enough;
};

KidDefaults default_parameters(Eigen::Index m_k, Eigen::Index m_k1, double delta,
                               std::optional<Eigen::Index> m_km1 = std::nullopt,
                               std::optional<long long> beta_k = std::nullopt);

/// Sufficient (greedy) bounds M >= 24 L m_{k+1} / (delta m_k) and
/// N_z >= (8 ||K||^2 / pi^2) m_{k+1}^2 / (delta m_k)^2. Reporting only.
double theoretical_moment_count(double lipschitz, Eigen::Index m_k,
                                Eigen::Index m_k1, double delta);
double theoretical_mc_count(double mollifier_sup, Eigen::Index m_k,
                            Eigen::Index m_k1, double delta);

/// Block of Rademacher probe vectors. Entries are +-1, each column drawn
/// from its own substream so a prefix of columns is stable as more are
/// appended.
struct RademacherBlock {
  Eigen::MatrixXd Z;  // m_{k+1} x N_z
  std::uint64_t seed = 0;
};

RademacherBlock make_rademacher(Eigen::Index m, int n_vectors, std::uint64_t seed);

/// Hutchinson estimates of diag(T_m(H)) for odd m; even rows are not
/// stored. Each row holds the plain diagonal estimate; the
/// symmetrized-density factor 2 is applied during integration, not here.
class MomentMatrix {
 public:
  MomentMatrix() = default;
  MomentMatrix(int truncation, Eigen::Index n, double scale);

  /// Largest odd moment index <= the requested truncation.
  int max_moment() const { return max_moment_; }
  Eigen::Index size() const { return data_.cols(); }
  double scale() const { return scale_; }

  double entry(int m, Eigen::Index j) const { return data_(storage_row(m), j); }
  Eigen::MatrixXd::RowXpr moment_row(int m) { return data_.row(storage_row(m)); }
  Eigen::MatrixXd::ConstRowXpr moment_row(int m) const { return data_.row(storage_row(m)); }

  /// 1, 3, 5, ... up to max_moment().
  std::vector<int> moment_indices() const;

  /// Checks the odd-only storage contract and |entry| <= 1 + 1e-9.
  void validate() const;

 private:
  Eigen::MatrixXd data_;  // row t holds moment 2t+1, shape n_odd x m_{k+1}
  int max_moment_ = 0;
  double scale_ = 1.0;

  Eigen::Index storage_row(int m) const;
};

/// Runs the three-term Chebyshev recurrence on the probe block and records
/// diag estimates for odd m <= M. Exactly one operator application per
/// recurrence step; even truncations are capped down to the last odd index.
/// The caller guarantees sigma(H) in [0, 1].
MomentMatrix kid_moments(const LinearOperator& H, const RademacherBlock& Z, int M,
                         double scale = 1.0);

/// Closed-form integral of the truncated expansion over (0, 1]:
/// r_i = sum_{odd m} 2 D[m,i] c_m with c_m = (2/(pi m)) (-1)^((m-1)/2).
/// Negative entries are clamped to zero. Optional Jackson damping.
Eigen::VectorXd integrate_moments(const MomentMatrix& D, bool jackson_damping = false);

/// Histogram-binned alternative integration (cross-check oracle): expands
/// the truncated series on a fine positive-axis grid, drops the zero bin,
/// and sums bin masses.
Eigen::VectorXd integrate_moments_histogram(const MomentMatrix& D, int bins = 256);

/// Resource telemetry for the approximation pipeline.
struct KidReport {
  int moments_used = 0;
  int mc_vectors_used = 0;
  double scale = 0.0;                    // lambda used for H
  std::uint64_t operator_applications = 0;
  std::uint64_t workspace_doubles = 0;   // peak additional buffer footprint
  int power_iterations = 0;
};

struct KidResult {
  ResistanceVector resistance;   // clamped estimate, length m_{k+1}
  ProbabilityMeasure measure;    // W^2 r / ||W^2 r||_1
  KidReport report;
};

/// End-to-end approximation: scale estimate -> Rademacher block -> odd
/// Chebyshev moments -> closed-form integration -> sampling measure.
/// Deterministic per cfg.seed.
KidResult kid_resistance(const SimplicialComplex& c, int k, const KidConfig& cfg);

}  // namespace sparsic
