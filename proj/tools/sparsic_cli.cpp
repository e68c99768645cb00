// Command-line front end: generate point clouds, build complexes, compute
// resistance measures, sparsify, evaluate, and run benchmark sweeps.

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

#include "sparsic/builders.hpp"
#include "sparsic/errors.hpp"
#include "sparsic/experiments.hpp"
#include "sparsic/io.hpp"

namespace {

using namespace sparsic;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::SizeGuard:
      return 3;
    case ErrorCode::ZeroOperator:
    case ErrorCode::DegenerateMeasure:
      return 4;
    default:
      return 2;
  }
}

std::vector<std::uint64_t> parse_seeds(const std::string& csv) {
  std::vector<std::uint64_t> seeds;
  std::stringstream stream(csv);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (!item.empty()) seeds.push_back(std::stoull(item));
  }
  if (seeds.empty()) {
    throw_error(ErrorCode::InvalidConfig, "no seeds given");
  }
  return seeds;
}

std::pair<std::string, std::vector<double>> parse_sweep(const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 >= spec.size()) {
    throw_error(ErrorCode::InvalidConfig, "sweep must look like axis=v1,v2,...");
  }
  std::vector<double> grid;
  std::stringstream stream(spec.substr(eq + 1));
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (!item.empty()) grid.push_back(std::stod(item));
  }
  if (grid.empty()) {
    throw_error(ErrorCode::InvalidConfig, "sweep grid is empty");
  }
  return {spec.substr(0, eq), grid};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral sparsification of simplicial complexes"};
  app.require_subcommand(1);

  ExperimentConfig cfg;
  std::string method = "exact";
  std::string seeds_csv = "1,2,3,4,5";  // benchmark default: 5 seeds per grid point
  std::vector<std::string> sweep_specs;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--order", cfg.k, "sparsification order k")->capture_default_str();
    cmd->add_option("--workers", cfg.workers, "worker threads (0 = $SPARSIC_WORKERS)");
  };

  auto* generate = app.add_subcommand("generate", "sample a two-cluster point cloud");
  generate->add_option("--m0", cfg.m0, "number of points (even)")->capture_default_str();
  generate->add_option("--cluster-offset", cfg.cluster_offset, "inter-cluster offset c")
      ->capture_default_str();
  generate->add_option("--seed", seed, "RNG seed")->capture_default_str();
  generate->add_option("--output", cfg.output, "point-cloud CSV path")->required();

  auto* build = app.add_subcommand("build-vr", "Vietoris-Rips complex from a point cloud");
  build->add_option("--input", cfg.input, "point-cloud CSV")->required();
  build->add_option("--filtration-eps", cfg.filtration_eps, "distance threshold")
      ->capture_default_str();
  build->add_option("--max-order", cfg.max_order, "highest simplex order")
      ->capture_default_str();
  build->add_option("--output", cfg.output, "complex file path")->required();

  auto* ingest = app.add_subcommand("ingest", "simplicial closure of a hyperedge list");
  ingest->add_option("--input", cfg.input, "hyperedge text file")->required();
  ingest->add_option("--max-edge-size", cfg.max_edge_size, "largest hyperedge kept")
      ->capture_default_str();
  ingest->add_option("--closure-order", cfg.closure_order, "closure order")
      ->capture_default_str();
  ingest->add_option("--output", cfg.output, "complex file path")->required();

  auto* resistance = app.add_subcommand("resistance", "resistance vector and measure");
  add_common(resistance);
  resistance->add_option("--input", cfg.input, "complex file")->required();
  resistance->add_option("--output", cfg.output, "output path prefix")->required();
  resistance->add_option("--method", method, "exact|kid")->capture_default_str();
  resistance->add_option("--delta", cfg.delta, "KID target error scale")
      ->capture_default_str();
  resistance->add_option("--moments", cfg.moments, "moment count M (0 = default)");
  resistance->add_option("--mc", cfg.mc_vectors, "MC vector count N_z (0 = default)");
  resistance->add_option("--seed", seed, "RNG seed")->capture_default_str();

  auto* sparsify = app.add_subcommand("sparsify", "sample a sparsified complex");
  add_common(sparsify);
  sparsify->add_option("--input", cfg.input, "complex file")->required();
  sparsify->add_option("--output", cfg.output, "sparsifier complex path")->required();
  sparsify->add_option("--method", method, "exact|kid|uniform|kneighbours")
      ->capture_default_str();
  sparsify->add_option("--delta", cfg.delta, "KID target error scale");
  sparsify->add_option("--eps", cfg.eps, "target spectral closeness")
      ->capture_default_str();
  sparsify->add_option("--bigC", cfg.big_c, "absolute constant C")->capture_default_str();
  sparsify->add_option("--q", cfg.q, "draw count override (0 = default_q)");
  sparsify->add_option("--cap", cfg.kn_cap, "k-Neighbours co-face cap")
      ->capture_default_str();
  sparsify->add_option("--seed", seed, "RNG seed")->capture_default_str();

  auto* evaluate = app.add_subcommand("evaluate", "spectral closeness of two complexes");
  add_common(evaluate);
  evaluate->add_option("--input", cfg.input, "reference complex")->required();
  evaluate->add_option("--compare", cfg.compare, "comparison complex")->required();
  evaluate->add_option("--eps", cfg.eps, "closeness threshold")->capture_default_str();
  evaluate->add_option("--output", cfg.output, "JSON report path");

  auto* benchmark = app.add_subcommand("benchmark", "sweep experiments to CSV");
  add_common(benchmark);
  benchmark->add_option("--sweep", sweep_specs,
                        "axis=v1,v2,... (M|Nz|m0|eps|fraction|perturb)")
      ->required();
  benchmark->add_option("--output", cfg.output, "report directory")->required();
  benchmark->add_option("--m0", cfg.m0, "point count")->capture_default_str();
  benchmark->add_option("--cluster-offset", cfg.cluster_offset, "offset c")
      ->capture_default_str();
  benchmark->add_option("--filtration-eps", cfg.filtration_eps, "VR threshold")
      ->capture_default_str();
  benchmark->add_option("--max-order", cfg.max_order, "highest simplex order")
      ->capture_default_str();
  benchmark->add_option("--delta", cfg.delta, "KID target error scale")
      ->capture_default_str();
  benchmark->add_option("--eps", cfg.eps, "sparsifier closeness target")
      ->capture_default_str();
  benchmark->add_option("--bigC", cfg.big_c, "absolute constant C")->capture_default_str();
  benchmark->add_option("--q", cfg.q, "draw count override");
  benchmark->add_option("--moments", cfg.moments, "fixed M for Nz sweeps");
  benchmark->add_option("--mc", cfg.mc_vectors, "fixed N_z for M sweeps");
  benchmark->add_option("--cap", cfg.kn_cap, "k-Neighbours cap")->capture_default_str();
  benchmark->add_option("--seeds", seeds_csv, "comma-separated seed list")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) {
      const PointCloud pc = sample_clustered_points(cfg.m0, cfg.cluster_offset, seed);
      write_point_cloud_file(cfg.output, pc);
      std::cout << "wrote " << pc.size() << " points to " << cfg.output.string() << "\n";
    } else if (build->parsed()) {
      const PointCloud pc = read_point_cloud_file(cfg.input);
      const SimplicialComplex c =
          vietoris_rips(pc, FiltrationConfig{cfg.filtration_eps, cfg.max_order});
      write_complex_file(cfg.output, c);
      std::cout << "complex with counts (";
      for (int k = 0; k <= c.dimension(); ++k) {
        std::cout << (k > 0 ? "," : "") << c.count(k);
      }
      std::cout << ") written to " << cfg.output.string() << "\n";
    } else if (ingest->parsed()) {
      const auto edges = read_hyperedges_file(cfg.input);
      const SimplicialComplex c =
          ingest_hypergraph(edges, cfg.max_edge_size, cfg.closure_order);
      write_complex_file(cfg.output, c);
      std::cout << "complex with counts (";
      for (int k = 0; k <= c.dimension(); ++k) {
        std::cout << (k > 0 ? "," : "") << c.count(k);
      }
      std::cout << ") written to " << cfg.output.string() << "\n";
    } else if (resistance->parsed()) {
      cfg.method = method_from_name(method);
      cfg.seeds = {seed};
      run_resistance(cfg);
      std::cout << "resistance written to " << cfg.output.string() << "{.json,_r.csv,_p.csv}\n";
    } else if (sparsify->parsed()) {
      cfg.method = method_from_name(method);
      cfg.seeds = {seed};
      run_sparsify(cfg);
      std::cout << "sparsifier written to " << cfg.output.string() << "\n";
    } else if (evaluate->parsed()) {
      const double distance = run_evaluate(cfg);
      std::cout << "spectral distance " << distance << "\n";
    } else if (benchmark->parsed()) {
      cfg.seeds = parse_seeds(seeds_csv);
      for (const auto& spec : sweep_specs) {
        cfg.sweeps.insert(parse_sweep(spec));
      }
      const BenchmarkReport report = run_benchmark(cfg);
      std::cout << report.rows.size() << " rows written under " << cfg.output.string()
                << "\n";
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
