#include "sparsic/sparsify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "sparsic/errors.hpp"
#include "sparsic/rng.hpp"

namespace sparsic {

void ProbabilityMeasure::validate() const {
  if (probs.size() == 0) {
    throw_error(ErrorCode::DegenerateMeasure, "empty measure");
  }
  if (probs.minCoeff() < 0.0) {
    throw_error(ErrorCode::DegenerateMeasure, "negative probability entry");
  }
  if (std::abs(probs.sum() - 1.0) > 1e-12) {
    throw_error(ErrorCode::DegenerateMeasure,
                "probabilities sum to " + std::to_string(probs.sum()));
  }
}

ProbabilityMeasure measure_from_resistance(const ResistanceVector& r,
                                           const Eigen::VectorXd& weights) {
  if (r.values.size() != weights.size()) {
    throw_error(ErrorCode::DimensionMismatch, "resistance/weight length mismatch");
  }
  Eigen::VectorXd scaled = r.values.cwiseMax(0.0).cwiseProduct(weights);
  const double total = scaled.sum();
  if (!(total > 0.0)) {
    throw_error(ErrorCode::DegenerateMeasure, "W^2 r is the zero vector");
  }
  return ProbabilityMeasure{scaled / total};
}

long long default_q(Eigen::Index m_k, double eps, double C) {
  if (m_k < 1 || !(C > 0.0)) {
    throw_error(ErrorCode::InvalidConfig, "need m_k >= 1 and C > 0");
  }
  if (!(eps > 1.0 / std::sqrt(static_cast<double>(m_k)))) {
    throw_error(ErrorCode::InvalidEps,
                "eps must exceed 1/sqrt(m_k) = " +
                    std::to_string(1.0 / std::sqrt(static_cast<double>(m_k))));
  }
  const double log_arg = static_cast<double>(m_k) / (eps * eps);
  if (!(log_arg > 1.0)) {
    throw_error(ErrorCode::InvalidEps, "m_k / eps^2 must exceed 1");
  }
  const double q = 9.0 * C * C * static_cast<double>(m_k) * std::log(log_arg);
  return static_cast<long long>(std::ceil(q));
}

SparsifierResult sample_sparsifier(const SimplicialComplex& c, int k,
                                   const ProbabilityMeasure& p,
                                   const SparsifyConfig& cfg) {
  const auto m_k1 = static_cast<Eigen::Index>(c.count(k + 1));
  if (m_k1 == 0) {
    throw_error(ErrorCode::NoSimplices, "nothing to sparsify at order " + std::to_string(k + 1));
  }
  if (p.probs.size() != m_k1) {
    throw_error(ErrorCode::DimensionMismatch, "measure length differs from m_{k+1}");
  }
  p.validate();
  const long long q = cfg.q > 0 ? cfg.q : default_q(static_cast<Eigen::Index>(c.count(k)),
                                                    cfg.eps, cfg.C);

  // Prefix sums for inverse-CDF draws.
  Eigen::VectorXd cdf(m_k1);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < m_k1; ++i) {
    acc += p.probs(i);
    cdf(i) = acc;
  }
  cdf(m_k1 - 1) = std::max(cdf(m_k1 - 1), 1.0);

  SplitMix64 rng(mix_seed(cfg.seed, 0x5a3c));
  SparsifierResult result;
  result.draw_log.reserve(static_cast<std::size_t>(q));
  std::map<std::size_t, double> accumulated;
  for (long long d = 0; d < q; ++d) {
    const double u = rng.uniform01();
    const auto* begin = cdf.data();
    const auto* it = std::upper_bound(begin, begin + m_k1, u);
    auto idx = static_cast<std::size_t>(std::min<Eigen::Index>(
        static_cast<Eigen::Index>(it - begin), m_k1 - 1));
    // Rounding at the top of the CDF can land on a zero-probability tail
    // entry; step back to the nearest legitimate simplex.
    while (idx > 0 && p.probs(static_cast<Eigen::Index>(idx)) <= 0.0) {
      --idx;
    }
    result.draw_log.push_back(idx);
    const double w = c.weight_at(k + 1, idx);
    accumulated[idx] += w / (static_cast<double>(q) * p.probs(static_cast<Eigen::Index>(idx)));
  }

  result.kept.reserve(accumulated.size());
  result.new_sq_weights.resize(static_cast<Eigen::Index>(accumulated.size()));
  std::vector<Simplex> kept_simplices;
  std::vector<double> kept_weights;
  Eigen::Index pos = 0;
  for (const auto& [idx, w2] : accumulated) {
    result.kept.push_back(idx);
    result.new_sq_weights(pos++) = w2;
    kept_simplices.push_back(c.simplex_at(k + 1, idx));
    kept_weights.push_back(w2);
  }

  std::vector<std::vector<Simplex>> levels;
  std::vector<std::vector<double>> weights;
  for (int order = 0; order <= k; ++order) {
    levels.push_back(c.level(order));
    weights.push_back(c.weights(order));
  }
  levels.push_back(std::move(kept_simplices));
  weights.push_back(std::move(kept_weights));
  result.sub_complex = assemble_complex(std::move(levels), std::move(weights));
  return result;
}

SparsifierResult uniform_sparsifier(const SimplicialComplex& c, int k,
                                    long long q, std::uint64_t seed) {
  const auto m_k1 = static_cast<Eigen::Index>(c.count(k + 1));
  if (m_k1 == 0) {
    throw_error(ErrorCode::NoSimplices, "nothing to sparsify at order " + std::to_string(k + 1));
  }
  ProbabilityMeasure uniform{Eigen::VectorXd::Constant(m_k1, 1.0 / static_cast<double>(m_k1))};
  SparsifyConfig cfg;
  cfg.q = q;
  cfg.seed = seed;
  return sample_sparsifier(c, k, uniform, cfg);
}

SparsifierResult kneighbours_sparsifier(const SimplicialComplex& c, int k, int cap) {
  if (cap < 1) {
    throw_error(ErrorCode::InvalidConfig, "cap must be >= 1");
  }
  const auto& level = c.level(k + 1);
  if (level.empty()) {
    throw_error(ErrorCode::NoSimplices, "nothing to sparsify at order " + std::to_string(k + 1));
  }

  std::vector<int> coface_count(c.count(k), 0);
  SparsifierResult result;
  std::vector<Simplex> kept_simplices;
  std::vector<double> kept_weights;
  for (std::size_t j = 0; j < level.size(); ++j) {
    std::vector<std::size_t> face_indices;
    bool admissible = true;
    for (const auto& [face, sign] : boundary_faces(level[j])) {
      (void)sign;
      const std::size_t fi = c.index_of(face);
      if (coface_count[fi] >= cap) {
        admissible = false;
        break;
      }
      face_indices.push_back(fi);
    }
    if (!admissible) continue;
    for (std::size_t fi : face_indices) ++coface_count[fi];
    result.kept.push_back(j);
    kept_simplices.push_back(level[j]);
    kept_weights.push_back(c.weight_at(k + 1, j));
  }

  result.new_sq_weights =
      Eigen::Map<const Eigen::VectorXd>(kept_weights.data(),
                                        static_cast<Eigen::Index>(kept_weights.size()));

  std::vector<std::vector<Simplex>> levels;
  std::vector<std::vector<double>> weights;
  for (int order = 0; order <= k; ++order) {
    levels.push_back(c.level(order));
    weights.push_back(c.weights(order));
  }
  levels.push_back(std::move(kept_simplices));
  weights.push_back(std::move(kept_weights));
  result.sub_complex = assemble_complex(std::move(levels), std::move(weights));
  return result;
}

ProbabilityMeasure perturb_measure(const ProbabilityMeasure& p, double delta,
                                   std::uint64_t seed) {
  p.validate();
  if (delta < 0.0) {
    throw_error(ErrorCode::InvalidConfig, "delta must be >= 0");
  }
  if (delta == 0.0) return p;

  const Eigen::Index m = p.probs.size();
  const double bound = delta / static_cast<double>(m);
  SplitMix64 rng(mix_seed(seed, 0x7e17));
  Eigen::VectorXd noise(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    noise(i) = rng.uniform(-bound, bound);
  }

  // Renormalization can push an entry past the bound; shrink the noise
  // until the final deviation honours it.
  double scale = 1.0;
  for (int attempt = 0; attempt < 64; ++attempt) {
    Eigen::VectorXd candidate = (p.probs + scale * noise).cwiseMax(0.0);
    const double total = candidate.sum();
    if (total > 0.0) {
      candidate /= total;
      if ((candidate - p.probs).cwiseAbs().maxCoeff() < bound) {
        return ProbabilityMeasure{candidate};
      }
    }
    scale *= 0.5;
  }
  return p;
}

}  // namespace sparsic
