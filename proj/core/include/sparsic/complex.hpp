#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "sparsic/simplex.hpp"

namespace sparsic {

/// Weighted simplicial complex with lexicographically sorted levels.
///
/// Level k holds the simplices of order k; weights_[k][i] stores w_k(sigma_i)
/// with the convention that the diagonal weight matrix entry is
/// sqrt(w_k(sigma_i)). Square roots are taken on demand, never stored.
/// Immutable after assembly; concurrent reads are safe.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  int dimension() const { return static_cast<int>(levels_.size()) - 1; }

  /// Number of simplices of order k; zero outside [0, dimension()].
  std::size_t count(int order) const;

  const std::vector<Simplex>& level(int order) const;
  const std::vector<double>& weights(int order) const;

  /// 0-based position of `s` in the sorted level list. Throws NotFound.
  std::size_t index_of(const Simplex& s) const;

  std::optional<std::size_t> find(const Simplex& s) const;
  bool contains(const Simplex& s) const { return find(s).has_value(); }

  const Simplex& simplex_at(int order, std::size_t index) const;
  double weight_at(int order, std::size_t index) const;

  bool operator==(const SimplicialComplex& other) const = default;

  friend SimplicialComplex assemble_complex(
      std::vector<std::vector<Simplex>> levels,
      std::vector<std::vector<double>> weights);

 private:
  std::vector<std::vector<Simplex>> levels_;
  std::vector<std::vector<double>> weights_;
};

/// Builds a complex from per-order simplex lists (index = order).
///
/// Input simplices must be canonical; duplicates are merged (weights must
/// agree within 1e-12 or ConflictingWeight is thrown), missing weights
/// default to 1, and the closure property is verified. Throws
/// ClosureViolation naming the first missing face, or NonpositiveWeight.
SimplicialComplex assemble_complex(std::vector<std::vector<Simplex>> levels,
                                   std::vector<std::vector<double>> weights = {});

/// Convenience: assemble from a flat simplex list, grouping by order.
SimplicialComplex assemble_complex_flat(const std::vector<Simplex>& simplices,
                                        const std::vector<double>& weights = {});

std::size_t simplex_index(const SimplicialComplex& c, const Simplex& s);

}  // namespace sparsic
