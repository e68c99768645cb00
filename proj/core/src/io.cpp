#include "sparsic/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "sparsic/errors.hpp"

namespace sparsic {

namespace {

[[noreturn]] void parse_fail(const std::string& context, std::size_t line_no,
                             const std::string& what) {
  throw_error(ErrorCode::ParseError,
              context + ":" + std::to_string(line_no) + ": " + what);
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw_error(ErrorCode::ParseError, "cannot open " + path.string());
  }
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw_error(ErrorCode::ParseError, "cannot open " + path.string() + " for writing");
  }
  return out;
}

double parse_double(const std::string& token, const std::string& context,
                    std::size_t line_no) {
  double value = 0.0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    parse_fail(context, line_no, "bad number '" + token + "'");
  }
  return value;
}

long long parse_int(const std::string& token, const std::string& context,
                    std::size_t line_no) {
  long long value = 0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    parse_fail(context, line_no, "bad integer '" + token + "'");
  }
  return value;
}

std::vector<std::string> tokens_of(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream stream(line.substr(0, line.find('#')));
  std::string token;
  while (stream >> token) tokens.push_back(token);
  return tokens;
}

}  // namespace

std::string format_double(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  (void)ec;
  return std::string(buffer, ptr);
}

void write_complex(std::ostream& out, const SimplicialComplex& c) {
  for (int k = 0; k <= c.dimension(); ++k) {
    const auto& level = c.level(k);
    const auto& weights = c.weights(k);
    for (std::size_t i = 0; i < level.size(); ++i) {
      out << k;
      for (VertexId v : level[i].vertices) out << ' ' << v;
      out << ' ' << format_double(weights[i]) << '\n';
    }
  }
}

void write_complex_file(const std::filesystem::path& path, const SimplicialComplex& c) {
  auto out = open_output(path);
  write_complex(out, c);
}

SimplicialComplex read_complex(std::istream& in) {
  std::vector<std::vector<Simplex>> levels;
  std::vector<std::vector<double>> weights;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = tokens_of(line);
    if (tokens.empty()) continue;
    const long long k = parse_int(tokens[0], "complex", line_no);
    if (k < 0) parse_fail("complex", line_no, "negative order");
    const auto vertex_count = static_cast<std::size_t>(k) + 1;
    if (tokens.size() != vertex_count + 1 && tokens.size() != vertex_count + 2) {
      parse_fail("complex", line_no,
                 "expected " + std::to_string(vertex_count) +
                     " vertices (plus optional weight) after the order");
    }
    std::vector<VertexId> vertices;
    vertices.reserve(vertex_count);
    for (std::size_t i = 0; i < vertex_count; ++i) {
      vertices.push_back(parse_int(tokens[1 + i], "complex", line_no));
    }
    double weight = 1.0;
    if (tokens.size() == vertex_count + 2) {
      weight = parse_double(tokens.back(), "complex", line_no);
    }
    Simplex s;
    try {
      s = canonical_simplex(std::move(vertices));
    } catch (const Error& e) {
      parse_fail("complex", line_no, e.what());
    }
    const auto order = static_cast<std::size_t>(k);
    if (levels.size() <= order) {
      levels.resize(order + 1);
      weights.resize(order + 1);
    }
    levels[order].push_back(std::move(s));
    weights[order].push_back(weight);
  }
  return assemble_complex(std::move(levels), std::move(weights));
}

SimplicialComplex read_complex_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_complex(in);
}

void write_point_cloud_file(const std::filesystem::path& path, const PointCloud& pc) {
  auto out = open_output(path);
  for (const auto& p : pc.points) {
    out << format_double(p[0]) << ',' << format_double(p[1]) << '\n';
  }
}

PointCloud read_point_cloud_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  PointCloud pc;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    std::string body = line.substr(0, hash);
    if (body.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto comma = body.find(',');
    if (comma == std::string::npos) {
      parse_fail(path.string(), line_no, "expected x,y");
    }
    auto strip = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    pc.points.push_back({parse_double(strip(body.substr(0, comma)), path.string(), line_no),
                         parse_double(strip(body.substr(comma + 1)), path.string(), line_no)});
  }
  return pc;
}

std::vector<std::vector<VertexId>> read_hyperedges_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::vector<std::vector<VertexId>> edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = tokens_of(line);
    if (tokens.empty()) continue;
    std::vector<VertexId> edge;
    edge.reserve(tokens.size());
    for (const auto& t : tokens) {
      edge.push_back(parse_int(t, path.string(), line_no));
    }
    edges.push_back(std::move(edge));
  }
  return edges;
}

void write_vector_csv(const std::filesystem::path& path, const Eigen::VectorXd& v) {
  auto out = open_output(path);
  out << "index,value\n";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out << i << ',' << format_double(v(i)) << '\n';
  }
}

Eigen::VectorXd read_vector_csv(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.rfind("index", 0) == 0) continue;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      parse_fail(path.string(), line_no, "expected index,value");
    }
    std::string token = line.substr(comma + 1);
    while (!token.empty() && (token.back() == '\r' || token.back() == ' ')) token.pop_back();
    values.push_back(parse_double(token, path.string(), line_no));
  }
  return Eigen::Map<const Eigen::VectorXd>(values.data(),
                                           static_cast<Eigen::Index>(values.size()));
}

}  // namespace sparsic
