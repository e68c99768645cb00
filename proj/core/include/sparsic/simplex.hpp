#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace sparsic {

using VertexId = std::int64_t;

/// A simplex stored as a strictly ascending vertex tuple. The ascending
/// (lexicographic) convention fixes the orientation used by all boundary
/// operators, so instances must only be produced via canonical_simplex or
/// from already-canonical data.
struct Simplex {
  std::vector<VertexId> vertices;

  int order() const { return static_cast<int>(vertices.size()) - 1; }

  bool operator==(const Simplex& other) const = default;
  auto operator<=>(const Simplex& other) const = default;
};

/// Sorts `vertices` ascending and validates the tuple.
/// Throws DuplicateVertex, EmptySimplex, or InvalidVertex (negative id).
Simplex canonical_simplex(std::vector<VertexId> vertices);

/// Faces of `s` with boundary signs: the face omitting the j-th vertex
/// carries sign (-1)^j. Order-0 simplices have an empty boundary and yield
/// an empty list.
std::vector<std::pair<Simplex, int>> boundary_faces(const Simplex& s);

std::string to_string(const Simplex& s);

}  // namespace sparsic
