#include "sparsic/simplex.hpp"

#include <algorithm>
#include <string>

#include "sparsic/errors.hpp"

namespace sparsic {

Simplex canonical_simplex(std::vector<VertexId> vertices) {
  if (vertices.empty()) {
    throw_error(ErrorCode::EmptySimplex, "a simplex needs at least one vertex");
  }
  std::sort(vertices.begin(), vertices.end());
  if (vertices.front() < 0) {
    throw_error(ErrorCode::InvalidVertex,
                "negative vertex id " + std::to_string(vertices.front()));
  }
  auto dup = std::adjacent_find(vertices.begin(), vertices.end());
  if (dup != vertices.end()) {
    throw_error(ErrorCode::DuplicateVertex,
                "vertex " + std::to_string(*dup) + " repeats");
  }
  return Simplex{std::move(vertices)};
}

std::vector<std::pair<Simplex, int>> boundary_faces(const Simplex& s) {
  std::vector<std::pair<Simplex, int>> faces;
  const int k = s.order();
  if (k == 0) return faces;  // B_0 is the zero map
  faces.reserve(static_cast<std::size_t>(k) + 1);
  int sign = 1;
  for (std::size_t j = 0; j < s.vertices.size(); ++j) {
    Simplex face;
    face.vertices.reserve(s.vertices.size() - 1);
    for (std::size_t i = 0; i < s.vertices.size(); ++i) {
      if (i != j) face.vertices.push_back(s.vertices[i]);
    }
    faces.emplace_back(std::move(face), sign);
    sign = -sign;
  }
  return faces;
}

std::string to_string(const Simplex& s) {
  std::string out = "[";
  for (std::size_t i = 0; i < s.vertices.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(s.vertices[i]);
  }
  out += "]";
  return out;
}

}  // namespace sparsic
