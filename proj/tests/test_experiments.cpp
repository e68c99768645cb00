#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "sparsic/builders.hpp"
#include "sparsic/errors.hpp"
#include "sparsic/experiments.hpp"
#include "sparsic/io.hpp"
#include "sparsic/sparsify.hpp"

using namespace sparsic;
using json = nlohmann::json;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("sparsic_exp_" + std::to_string(std::rand()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

std::size_t count_lines(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::size_t n = 0;
  std::string line;
  while (std::getline(in, line)) ++n;
  return n;
}

}  // namespace

TEST_CASE("run_resistance on the triangle emits the unit measure") {
  TempDir dir;
  const auto input = dir.path / "triangle.txt";
  write_complex_file(input, oracles::filled_triangle());

  ExperimentConfig cfg;
  cfg.task = Task::Resistance;
  cfg.input = input;
  cfg.output = dir.path / "exact";
  cfg.k = 1;
  cfg.method = Method::Exact;
  run_resistance(cfg);

  const json meta = json::parse(std::ifstream(dir.path / "exact.json"));
  CHECK(meta["p"].size() == 1);
  CHECK(meta["p"][0].get<double>() == 1.0);
  CHECK(meta["method"] == "exact");

  cfg.method = Method::Kid;
  cfg.delta = 0.5;
  cfg.output = dir.path / "kid";
  run_resistance(cfg);
  const json kid_meta = json::parse(std::ifstream(dir.path / "kid.json"));
  CHECK(kid_meta["p"][0].get<double>() == 1.0);

  const auto p_csv = read_vector_csv(dir.path / "kid_p.csv");
  CHECK(p_csv(0) == 1.0);
}

TEST_CASE("run_sparsify writes a parseable sub-complex with metadata") {
  TempDir dir;
  const auto input = dir.path / "hollow.txt";
  write_complex_file(input, oracles::hollow_tetrahedron());

  ExperimentConfig cfg;
  cfg.task = Task::Sparsify;
  cfg.input = input;
  cfg.output = dir.path / "sparse.txt";
  cfg.k = 1;
  cfg.method = Method::Exact;
  cfg.q = 50;
  cfg.seeds = {4};
  run_sparsify(cfg);

  const auto sub = read_complex_file(dir.path / "sparse.txt");
  CHECK(sub.count(0) == 4);
  CHECK(sub.count(1) == 6);
  CHECK(sub.count(2) >= 1);

  const json meta = json::parse(std::ifstream(dir.path / "sparse.txt.meta.json"));
  CHECK(meta["q"] == 50);
  CHECK(meta["seed"] == 4);
  CHECK(meta["measure"] == "exact-ger");
  CHECK(meta["draws"].size() == 50);
}

TEST_CASE("run_sparsify derives q when omitted and records it") {
  TempDir dir;
  const auto pc = sample_clustered_points(20, 2.5, 3);
  const auto c = vietoris_rips(pc, FiltrationConfig{2.2, 2});
  REQUIRE(c.count(2) > 0);
  const auto input = dir.path / "vr.txt";
  write_complex_file(input, c);

  ExperimentConfig cfg;
  cfg.task = Task::Sparsify;
  cfg.input = input;
  cfg.output = dir.path / "sparse.txt";
  cfg.k = 1;
  cfg.method = Method::Uniform;
  cfg.eps = 0.5;
  cfg.big_c = 1.0;
  run_sparsify(cfg);

  const json meta = json::parse(std::ifstream(dir.path / "sparse.txt.meta.json"));
  CHECK(meta["q"].get<long long>() ==
        default_q(static_cast<Eigen::Index>(c.count(1)), 0.5, 1.0));
}

TEST_CASE("run_sparsify surfaces InvalidEps") {
  TempDir dir;
  const auto input = dir.path / "hollow.txt";
  write_complex_file(input, oracles::hollow_tetrahedron());

  ExperimentConfig cfg;
  cfg.task = Task::Sparsify;
  cfg.input = input;
  cfg.output = dir.path / "sparse.txt";
  cfg.k = 1;
  cfg.method = Method::Exact;
  cfg.eps = 0.001;  // m_k = 6, eps below 1/sqrt(6)
  try {
    run_sparsify(cfg);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidEps);
  }
}

TEST_CASE("run_evaluate reports zero distance against itself") {
  TempDir dir;
  const auto input = dir.path / "fig.txt";
  write_complex_file(input, oracles::two_triangle_complex());

  ExperimentConfig cfg;
  cfg.task = Task::Evaluate;
  cfg.input = input;
  cfg.compare = input;
  cfg.output = dir.path / "eval.json";
  cfg.k = 1;
  cfg.eps = 0.5;
  CHECK(run_evaluate(cfg) == doctest::Approx(0.0).epsilon(1e-12));
  const json report = json::parse(std::ifstream(dir.path / "eval.json"));
  CHECK(report["eps_close"] == true);
}

TEST_CASE("run_benchmark sweeps a small M grid deterministically") {
  TempDir dir;
  ExperimentConfig cfg;
  cfg.task = Task::Benchmark;
  cfg.output = dir.path;
  cfg.k = 1;
  cfg.m0 = 16;
  cfg.cluster_offset = 2.0;
  cfg.filtration_eps = 2.0;
  cfg.delta = 0.5;
  cfg.seeds = {1, 2};
  cfg.sweeps["M"] = {3, 9};
  cfg.workers = 2;

  const auto report = run_benchmark(cfg);
  REQUIRE(report.rows.size() == 4);  // 2 grid points x 2 seeds
  for (const auto& row : report.rows) {
    CHECK(row.status == "ok");
    CHECK(row.experiment == "M");
    REQUIRE(row.error_inf.has_value());
    CHECK(*row.error_inf >= 0.0);
  }
  // Same configuration, single worker: identical numeric results.
  ExperimentConfig serial = cfg;
  serial.workers = 1;
  const auto again = run_benchmark(serial);
  REQUIRE(again.rows.size() == report.rows.size());
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    CHECK(report.rows[i].error_inf == again.rows[i].error_inf);
    CHECK(report.rows[i].seed == again.rows[i].seed);
  }

  CHECK(count_lines(dir.path / "benchmark_M.csv") == 5);  // header + 4 rows
  CHECK(std::filesystem::exists(dir.path / "benchmark_summary.csv"));
}

TEST_CASE("run_benchmark fraction sweep emits one row per method") {
  TempDir dir;
  ExperimentConfig cfg;
  cfg.task = Task::Benchmark;
  cfg.output = dir.path;
  cfg.k = 1;
  cfg.m0 = 16;
  cfg.cluster_offset = 2.0;
  cfg.filtration_eps = 2.2;
  cfg.delta = 0.5;
  cfg.eps = 0.5;
  cfg.seeds = {3};
  cfg.sweeps["fraction"] = {0.33};

  const auto report = run_benchmark(cfg);
  REQUIRE(report.rows.size() == 4);
  for (const auto& row : report.rows) {
    CHECK(row.status == "ok");
    REQUIRE(row.spectral_dist.has_value());
    CHECK(*row.spectral_dist >= 0.0);
  }
  CHECK(report.rows[0].method == "exact");
  CHECK(report.rows[1].method == "kid");
  CHECK(report.rows[2].method == "uniform");
  CHECK(report.rows[3].method == "kneighbours");
}

TEST_CASE("run_benchmark perturbation sweep degrades gracefully with delta") {
  TempDir dir;
  ExperimentConfig cfg;
  cfg.task = Task::Benchmark;
  cfg.output = dir.path;
  cfg.k = 1;
  cfg.m0 = 16;
  cfg.cluster_offset = 2.0;
  cfg.filtration_eps = 2.2;
  cfg.eps = 0.5;
  cfg.seeds = {1, 2, 3};
  cfg.sweeps["perturb"] = {0.0, 0.5};

  const auto report = run_benchmark(cfg);
  REQUIRE(report.rows.size() == 6);
  double mean_unperturbed = 0.0;
  double mean_perturbed = 0.0;
  for (const auto& row : report.rows) {
    REQUIRE(row.status == "ok");
    REQUIRE(row.perturb_delta.has_value());
    REQUIRE(row.spectral_dist.has_value());
    (*row.perturb_delta == 0.0 ? mean_unperturbed : mean_perturbed) +=
        *row.spectral_dist / 3.0;
  }
  // delta = 0.5 perturbations stay in the same ballpark as the exact
  // measure (qualitative, mirrors the robustness remark).
  CHECK(mean_perturbed < 3.0 * mean_unperturbed + 0.05);
}

TEST_CASE("run_benchmark eps axis records counts without the dense oracle") {
  TempDir dir;
  ExperimentConfig cfg;
  cfg.task = Task::Benchmark;
  cfg.output = dir.path;
  cfg.k = 1;
  cfg.m0 = 14;
  cfg.cluster_offset = 2.0;
  cfg.delta = 0.5;
  cfg.seeds = {5};
  cfg.sweeps["eps"] = {1.2, 2.4};

  const auto report = run_benchmark(cfg);
  REQUIRE(report.rows.size() >= 2);
  for (const auto& row : report.rows) {
    CHECK(row.m_k >= 0);
    if (row.method == "kid" && row.status == "ok") {
      CHECK(row.m_k1 > 0);
    }
  }
  // Larger filtration radius never shrinks the complex.
  long long small_m1 = 0, large_m1 = 0;
  for (const auto& row : report.rows) {
    if (row.filtration_eps == 1.2) small_m1 = row.m_k;
    if (row.filtration_eps == 2.4) large_m1 = row.m_k;
  }
  CHECK(large_m1 >= small_m1);
}

TEST_CASE("run_benchmark rejects an empty grid") {
  ExperimentConfig cfg;
  cfg.task = Task::Benchmark;
  cfg.sweeps["M"] = {};
  try {
    run_benchmark(cfg);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidConfig);
  }
}
