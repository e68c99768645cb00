#include <doctest.h>

#include <functional>

#include "oracles.hpp"
#include "sparsic/complex.hpp"
#include "sparsic/errors.hpp"
#include "sparsic/simplex.hpp"

using namespace sparsic;

namespace {

ErrorCode thrown_code(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  REQUIRE(false);
  return ErrorCode::InvalidConfig;
}

}  // namespace

TEST_CASE("canonical_simplex sorts and validates") {
  CHECK(canonical_simplex({3, 1, 2}).vertices == std::vector<VertexId>{1, 2, 3});
  CHECK(canonical_simplex({5}).vertices == std::vector<VertexId>{5});
  CHECK(thrown_code([] { canonical_simplex({1, 1, 2}); }) == ErrorCode::DuplicateVertex);
  CHECK(thrown_code([] { canonical_simplex({}); }) == ErrorCode::EmptySimplex);
  CHECK(thrown_code([] { canonical_simplex({-1, 2}); }) == ErrorCode::InvalidVertex);
}

TEST_CASE("boundary_faces signs follow the alternating rule") {
  const auto faces = boundary_faces(canonical_simplex({1, 2, 3}));
  REQUIRE(faces.size() == 3);
  CHECK(faces[0].first.vertices == std::vector<VertexId>{2, 3});
  CHECK(faces[0].second == 1);
  CHECK(faces[1].first.vertices == std::vector<VertexId>{1, 3});
  CHECK(faces[1].second == -1);
  CHECK(faces[2].first.vertices == std::vector<VertexId>{1, 2});
  CHECK(faces[2].second == 1);

  const auto faces134 = boundary_faces(canonical_simplex({1, 3, 4}));
  CHECK(faces134[0].first.vertices == std::vector<VertexId>{3, 4});
  CHECK(faces134[0].second == 1);
  CHECK(faces134[1].first.vertices == std::vector<VertexId>{1, 4});
  CHECK(faces134[1].second == -1);
  CHECK(faces134[2].first.vertices == std::vector<VertexId>{1, 3});
  CHECK(faces134[2].second == 1);

  const auto edge = boundary_faces(canonical_simplex({1, 2}));
  CHECK(edge[0].first.vertices == std::vector<VertexId>{2});
  CHECK(edge[0].second == 1);
  CHECK(edge[1].first.vertices == std::vector<VertexId>{1});
  CHECK(edge[1].second == -1);

  CHECK(boundary_faces(canonical_simplex({7})).empty());
}

TEST_CASE("assemble_complex validates closure and weights") {
  const auto fig = oracles::two_triangle_complex();
  CHECK(fig.count(0) == 5);
  CHECK(fig.count(1) == 7);
  CHECK(fig.count(2) == 2);
  CHECK(fig.dimension() == 2);

  CHECK(thrown_code([] {
          assemble_complex({
              {Simplex{{1}}, Simplex{{2}}, Simplex{{3}}},
              {Simplex{{1, 2}}, Simplex{{2, 3}}},  // [1,3] missing
              {Simplex{{1, 2, 3}}},
          });
        }) == ErrorCode::ClosureViolation);

  CHECK(thrown_code([] {
          assemble_complex({{Simplex{{1}}}}, {{-2.0}});
        }) == ErrorCode::NonpositiveWeight);

  const auto nodes_only = assemble_complex({{Simplex{{1}}, Simplex{{2}}, Simplex{{3}}}});
  CHECK(nodes_only.count(0) == 3);
  CHECK(nodes_only.dimension() == 0);
}

TEST_CASE("assemble_complex merges duplicates and rejects weight conflicts") {
  const auto merged = assemble_complex({{Simplex{{1}}, Simplex{{1}}, Simplex{{2}}}},
                                       {{2.0, 2.0, 1.0}});
  CHECK(merged.count(0) == 2);
  CHECK(merged.weight_at(0, 0) == 2.0);

  CHECK(thrown_code([] {
          assemble_complex({{Simplex{{1}}, Simplex{{1}}}}, {{1.0, 1.5}});
        }) == ErrorCode::ConflictingWeight);
}

TEST_CASE("simplex_index follows lexicographic listing order") {
  const auto fig = oracles::two_triangle_complex();
  CHECK(simplex_index(fig, canonical_simplex({1, 2})) == 0);
  CHECK(simplex_index(fig, canonical_simplex({4, 5})) == 6);
  CHECK(thrown_code([&] { simplex_index(fig, canonical_simplex({9, 10})); }) ==
        ErrorCode::NotFound);
}

TEST_CASE("simplex_index round-trips every level") {
  const auto fig = oracles::two_triangle_complex();
  for (int k = 0; k <= fig.dimension(); ++k) {
    for (std::size_t i = 0; i < fig.count(k); ++i) {
      CHECK(fig.index_of(fig.simplex_at(k, i)) == i);
    }
  }
}

TEST_CASE("closure holds simplex by simplex after assembly") {
  const auto fig = oracles::two_triangle_complex();
  for (int k = 1; k <= fig.dimension(); ++k) {
    for (const auto& s : fig.level(k)) {
      for (const auto& [face, sign] : boundary_faces(s)) {
        (void)sign;
        CHECK(fig.contains(face));
      }
    }
  }
}

TEST_CASE("assemble_complex is idempotent") {
  const auto fig = oracles::two_triangle_complex();
  std::vector<std::vector<Simplex>> levels;
  std::vector<std::vector<double>> weights;
  for (int k = 0; k <= fig.dimension(); ++k) {
    levels.push_back(fig.level(k));
    weights.push_back(fig.weights(k));
  }
  const auto again = assemble_complex(levels, weights);
  CHECK(again == fig);
}
