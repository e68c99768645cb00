#include "sparsic/complex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "sparsic/errors.hpp"

namespace sparsic {

namespace {

static const std::vector<Simplex> kEmptyLevel;
static const std::vector<double> kEmptyWeights;

std::optional<std::size_t> find_in_level(const std::vector<Simplex>& level,
                                         const Simplex& s) {
  auto it = std::lower_bound(level.begin(), level.end(), s);
  if (it != level.end() && *it == s) {
    return static_cast<std::size_t>(it - level.begin());
  }
  return std::nullopt;
}

}  // namespace

std::size_t SimplicialComplex::count(int order) const {
  if (order < 0 || order > dimension()) return 0;
  return levels_[static_cast<std::size_t>(order)].size();
}

const std::vector<Simplex>& SimplicialComplex::level(int order) const {
  if (order < 0 || order > dimension()) return kEmptyLevel;
  return levels_[static_cast<std::size_t>(order)];
}

const std::vector<double>& SimplicialComplex::weights(int order) const {
  if (order < 0 || order > dimension()) return kEmptyWeights;
  return weights_[static_cast<std::size_t>(order)];
}

std::size_t SimplicialComplex::index_of(const Simplex& s) const {
  auto idx = find(s);
  if (!idx) {
    throw_error(ErrorCode::NotFound, "simplex " + to_string(s) + " not in complex");
  }
  return *idx;
}

std::optional<std::size_t> SimplicialComplex::find(const Simplex& s) const {
  const int k = s.order();
  if (k < 0 || k > dimension()) return std::nullopt;
  return find_in_level(levels_[static_cast<std::size_t>(k)], s);
}

const Simplex& SimplicialComplex::simplex_at(int order, std::size_t index) const {
  return level(order).at(index);
}

double SimplicialComplex::weight_at(int order, std::size_t index) const {
  return weights(order).at(index);
}

SimplicialComplex assemble_complex(std::vector<std::vector<Simplex>> levels,
                                   std::vector<std::vector<double>> weights) {
  // Drop empty trailing levels so dimension() reflects actual content.
  while (!levels.empty() && levels.back().empty()) levels.pop_back();
  if (weights.size() > levels.size()) {
    throw_error(ErrorCode::InvalidConfig,
                "weights given for more orders than simplices");
  }
  weights.resize(levels.size());

  SimplicialComplex out;
  out.levels_.resize(levels.size());
  out.weights_.resize(levels.size());

  for (std::size_t k = 0; k < levels.size(); ++k) {
    auto& in_level = levels[k];
    auto& in_weights = weights[k];
    if (!in_weights.empty() && in_weights.size() != in_level.size()) {
      throw_error(ErrorCode::InvalidConfig,
                  "weight count does not match simplex count at order " +
                      std::to_string(k));
    }
    for (const Simplex& s : in_level) {
      if (s.order() != static_cast<int>(k)) {
        throw_error(ErrorCode::InvalidConfig,
                    "simplex " + to_string(s) + " listed at wrong order");
      }
      if (!std::is_sorted(s.vertices.begin(), s.vertices.end()) ||
          std::adjacent_find(s.vertices.begin(), s.vertices.end()) !=
              s.vertices.end()) {
        throw_error(ErrorCode::InvalidConfig,
                    "simplex " + to_string(s) + " is not canonical");
      }
    }

    // Sort simplices with their weights attached, then merge duplicates.
    std::vector<std::size_t> perm(in_level.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
      return in_level[a] < in_level[b];
    });

    auto& level_out = out.levels_[k];
    auto& weights_out = out.weights_[k];
    for (std::size_t p : perm) {
      const double w = in_weights.empty() ? 1.0 : in_weights[p];
      if (!(w > 0.0) || !std::isfinite(w)) {
        throw_error(ErrorCode::NonpositiveWeight,
                    "simplex " + to_string(in_level[p]) + " has weight " +
                        std::to_string(w));
      }
      if (!level_out.empty() && level_out.back() == in_level[p]) {
        if (std::abs(weights_out.back() - w) > 1e-12) {
          throw_error(ErrorCode::ConflictingWeight,
                      "duplicate simplex " + to_string(in_level[p]) +
                          " with disagreeing weights");
        }
        continue;
      }
      level_out.push_back(std::move(in_level[p]));
      weights_out.push_back(w);
    }
  }

  // Closure: every face of every simplex of order >= 1 must be present.
  for (std::size_t k = 1; k < out.levels_.size(); ++k) {
    const auto& below = out.levels_[k - 1];
    for (const Simplex& s : out.levels_[k]) {
      for (const auto& [face, sign] : boundary_faces(s)) {
        (void)sign;
        if (!find_in_level(below, face)) {
          throw_error(ErrorCode::ClosureViolation,
                      "face " + to_string(face) + " of " + to_string(s) +
                          " is missing at order " + std::to_string(k - 1));
        }
      }
    }
  }
  return out;
}

SimplicialComplex assemble_complex_flat(const std::vector<Simplex>& simplices,
                                        const std::vector<double>& weights) {
  if (!weights.empty() && weights.size() != simplices.size()) {
    throw_error(ErrorCode::InvalidConfig, "weight count does not match simplex count");
  }
  std::vector<std::vector<Simplex>> levels;
  std::vector<std::vector<double>> level_weights;
  for (std::size_t i = 0; i < simplices.size(); ++i) {
    const auto k = static_cast<std::size_t>(simplices[i].order());
    if (levels.size() <= k) {
      levels.resize(k + 1);
      level_weights.resize(k + 1);
    }
    levels[k].push_back(simplices[i]);
    level_weights[k].push_back(weights.empty() ? 1.0 : weights[i]);
  }
  return assemble_complex(std::move(levels), std::move(level_weights));
}

std::size_t simplex_index(const SimplicialComplex& c, const Simplex& s) {
  return c.index_of(s);
}

}  // namespace sparsic
