#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "sparsic/complex.hpp"
#include "sparsic/exact_resistance.hpp"

namespace sparsic {

/// Sampling measure over the (k+1)-simplices: nonnegative, sums to 1
/// within 1e-12, one entry per simplex of the level.
struct ProbabilityMeasure {
  Eigen::VectorXd probs;

  void validate() const;
};

/// p = W^2 r / ||W^2 r||_1. Throws DegenerateMeasure when W^2 r vanishes.
ProbabilityMeasure measure_from_resistance(const ResistanceVector& r,
                                           const Eigen::VectorXd& weights);

struct SparsifyConfig {
  long long q = 0;   // number of draws; 0 = derive via default_q
  double eps = 0.5;  // target spectral closeness, in (1/sqrt(m_k), 1)
  double C = 1.0;    // absolute constant of the sample-count bound
  std::uint64_t seed = 0;
};

/// ceil(9 C^2 m_k ln(m_k / eps^2)). Natural logarithm; C absorbs base
/// changes. Throws InvalidEps when the log argument is <= 1 or
/// eps <= 1/sqrt(m_k).
long long default_q(Eigen::Index m_k, double eps, double C);

/// Sampled sub-complex with bias-corrected accumulated weights.
struct SparsifierResult {
  SimplicialComplex sub_complex;      // orders <= k unchanged, order k+1 sampled
  std::vector<std::size_t> kept;      // indices into the original V_{k+1}
  Eigen::VectorXd new_sq_weights;     // accumulated W~^2, one entry per kept simplex
  std::vector<std::size_t> draw_log;  // the q sampled indices, in draw order
};

/// q categorical draws with replacement from p; each draw of simplex sigma
/// adds w(sigma) / (q p(sigma)) to its accumulated weight, which makes the
/// sampled up-Laplacian unbiased. Deterministic per seed; draws use
/// inverse-CDF search over a prefix-sum table.
SparsifierResult sample_sparsifier(const SimplicialComplex& c, int k,
                                   const ProbabilityMeasure& p,
                                   const SparsifyConfig& cfg);

/// sample_sparsifier with the uniform measure 1/m_{k+1} (reweighted, so
/// still unbiased).
SparsifierResult uniform_sparsifier(const SimplicialComplex& c, int k,
                                    long long q, std::uint64_t seed);

/// Deterministic greedy baseline: walk V_{k+1} in lexicographic order and
/// keep a simplex iff every face currently has fewer than `cap` kept
/// co-faces. Original weights are retained (biased by design).
SparsifierResult kneighbours_sparsifier(const SimplicialComplex& c, int k, int cap);

/// Adds iid uniform noise on (-delta/m, delta/m), clamps at zero and
/// renormalizes; the noise is rescaled until the post-normalization
/// deviation stays below delta/m. delta = 0 returns p unchanged.
ProbabilityMeasure perturb_measure(const ProbabilityMeasure& p, double delta,
                                   std::uint64_t seed);

}  // namespace sparsic
