#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "sparsic/builders.hpp"
#include "sparsic/complex.hpp"

namespace sparsic {

/// Shortest decimal that round-trips to the same double.
std::string format_double(double value);

/// Complex text format: one simplex per line as `k v0 v1 ... vk weight`,
/// with `#` starting a comment. Lines are emitted level by level in
/// lexicographic order, so write/parse round-trips byte-stable.
void write_complex(std::ostream& out, const SimplicialComplex& c);
void write_complex_file(const std::filesystem::path& path, const SimplicialComplex& c);
SimplicialComplex read_complex(std::istream& in);
SimplicialComplex read_complex_file(const std::filesystem::path& path);

/// Point-cloud CSV, `x,y` per line.
void write_point_cloud_file(const std::filesystem::path& path, const PointCloud& pc);
PointCloud read_point_cloud_file(const std::filesystem::path& path);

/// Hyperedge text: one hyperedge per line, whitespace-separated ids.
std::vector<std::vector<VertexId>> read_hyperedges_file(const std::filesystem::path& path);

/// Vector as CSV with an `index,value` header.
void write_vector_csv(const std::filesystem::path& path, const Eigen::VectorXd& v);
Eigen::VectorXd read_vector_csv(const std::filesystem::path& path);

}  // namespace sparsic
