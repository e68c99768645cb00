#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sparsic/complex.hpp"

namespace sparsic {

enum class Task { Generate, BuildVr, Ingest, Resistance, Sparsify, Evaluate, Benchmark };
enum class Method { Exact, Kid, Uniform, Kneighbours };

std::string method_name(Method m);
Method method_from_name(const std::string& name);

/// One bag of knobs for every CLI task; tasks read the fields they need.
struct ExperimentConfig {
  Task task = Task::Benchmark;
  std::filesystem::path input;
  std::filesystem::path compare;  // evaluate: complex to judge against input
  std::filesystem::path output;

  int k = 1;
  Method method = Method::Exact;
  double delta = 0.1;
  int moments = 0;      // 0 = scaled default
  int mc_vectors = 0;   // 0 = scaled default
  double eps = 0.5;     // sparsifier closeness target
  double big_c = 1.0;
  long long q = 0;      // 0 = default_q(m_k, eps, C)
  int kn_cap = 2;

  std::vector<std::uint64_t> seeds{0};

  // Generator settings (also the benchmark's complex family).
  int m0 = 40;
  double cluster_offset = 3.0;
  double filtration_eps = 1.5;
  int max_order = 2;

  // Hypergraph ingestion.
  int max_edge_size = 10;
  int closure_order = 2;

  int workers = 0;  // 0 = $SPARSIC_WORKERS or 1

  /// Benchmark sweep axes: "M", "Nz", "m0", "fraction", "perturb".
  /// Each axis becomes its own experiment series.
  std::map<std::string, std::vector<double>> sweeps;
};

struct BenchmarkRow {
  std::string experiment;
  int m0 = 0;
  double filtration_eps = 0.0;
  int k = 0;
  long long m_k = 0;
  long long m_k1 = 0;
  std::string method;
  int moments = 0;
  int mc_vectors = 0;
  long long q = 0;
  std::optional<double> fraction;
  std::optional<double> perturb_delta;
  std::uint64_t seed = 0;
  std::optional<double> error_inf;
  std::optional<double> spectral_dist;
  std::optional<double> eig_l2;
  std::optional<bool> eps_close;
  double wall_time_ms = 0.0;
  std::string status = "ok";
};

struct BenchmarkReport {
  std::vector<BenchmarkRow> rows;

  void write_csv(const std::filesystem::path& path) const;
  /// Mean error/distance per (experiment, grid point, method) over seeds.
  void write_summary_csv(const std::filesystem::path& path) const;
};

/// Computes r and p for the input complex and writes <output>.json plus
/// <output>_r.csv / <output>_p.csv. Exact refuses inputs above the dense
/// guard.
void run_resistance(const ExperimentConfig& cfg);

/// Samples a sparsifier and writes the sub-complex in complex text format
/// plus a .meta.json sidecar (q, seed, measure provenance, draw log,
/// accumulated weights).
void run_sparsify(const ExperimentConfig& cfg);

/// Compares cfg.compare against cfg.input at order k; writes a JSON report
/// and returns the spectral distance.
double run_evaluate(const ExperimentConfig& cfg);

/// Runs every sweep axis as a figure-analog experiment series and writes
/// one CSV per axis plus a summary. Per-cell failures are recorded in the
/// status column without aborting the sweep.
BenchmarkReport run_benchmark(const ExperimentConfig& cfg);

}  // namespace sparsic
