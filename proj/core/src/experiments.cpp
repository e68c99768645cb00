#include "sparsic/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <nlohmann/json.hpp>
#include <sstream>
#include <thread>

#include "sparsic/builders.hpp"
#include "sparsic/errors.hpp"
#include "sparsic/exact_resistance.hpp"
#include "sparsic/io.hpp"
#include "sparsic/kid.hpp"
#include "sparsic/metrics.hpp"
#include "sparsic/rng.hpp"
#include "sparsic/sparsify.hpp"

namespace sparsic {

namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SPARSIC_WORKERS")) {
    const int parsed = std::atoi(env);
    if (parsed > 0) return parsed;
  }
  return 1;
}

std::string opt_cell(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) {
    throw_error(ErrorCode::ParseError, "cannot open " + path.string() + " for writing");
  }
  out << j.dump(2) << '\n';
}

json vector_to_json(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

}  // namespace

std::string method_name(Method m) {
  switch (m) {
    case Method::Exact: return "exact";
    case Method::Kid: return "kid";
    case Method::Uniform: return "uniform";
    case Method::Kneighbours: return "kneighbours";
  }
  return "unknown";
}

Method method_from_name(const std::string& name) {
  if (name == "exact") return Method::Exact;
  if (name == "kid") return Method::Kid;
  if (name == "uniform") return Method::Uniform;
  if (name == "kneighbours") return Method::Kneighbours;
  throw_error(ErrorCode::InvalidConfig, "unknown method '" + name + "'");
}

void run_resistance(const ExperimentConfig& cfg) {
  const SimplicialComplex c = read_complex_file(cfg.input);
  const auto m_k1 = static_cast<Eigen::Index>(c.count(cfg.k + 1));
  if (m_k1 == 0) {
    throw_error(ErrorCode::NoSimplices,
                "input has no simplices of order " + std::to_string(cfg.k + 1));
  }
  const auto& w = c.weights(cfg.k + 1);
  const Eigen::Map<const Eigen::VectorXd> weights(w.data(),
                                                  static_cast<Eigen::Index>(w.size()));

  json meta;
  meta["input"] = cfg.input.string();
  meta["order"] = cfg.k;
  meta["method"] = method_name(cfg.method);
  meta["m_k"] = c.count(cfg.k);
  meta["m_k1"] = c.count(cfg.k + 1);

  Eigen::VectorXd r;
  Eigen::VectorXd p;
  const auto start = Clock::now();
  if (cfg.method == Method::Exact) {
    const ResistanceVector exact = ger_svd(c, cfg.k);
    r = exact.values;
    p = measure_from_resistance(exact, weights).probs;
  } else if (cfg.method == Method::Kid) {
    KidConfig kid;
    kid.delta = cfg.delta;
    kid.moments = cfg.moments;
    kid.mc_vectors = cfg.mc_vectors;
    kid.seed = cfg.seeds.empty() ? 0 : cfg.seeds.front();
    const KidResult result = kid_resistance(c, cfg.k, kid);
    r = result.resistance.values;
    p = result.measure.probs;
    meta["moments"] = result.report.moments_used;
    meta["mc_vectors"] = result.report.mc_vectors_used;
    meta["scale"] = result.report.scale;
    meta["operator_applications"] = result.report.operator_applications;
    meta["seed"] = kid.seed;
    meta["delta"] = cfg.delta;
  } else {
    throw_error(ErrorCode::InvalidConfig, "resistance task supports exact or kid");
  }
  meta["wall_time_ms"] = elapsed_ms(start);
  meta["r"] = vector_to_json(r);
  meta["p"] = vector_to_json(p);

  std::filesystem::path base = cfg.output;
  write_json_file(base.string() + ".json", meta);
  write_vector_csv(base.string() + "_r.csv", r);
  write_vector_csv(base.string() + "_p.csv", p);
}

void run_sparsify(const ExperimentConfig& cfg) {
  const SimplicialComplex c = read_complex_file(cfg.input);
  const auto m_k = static_cast<Eigen::Index>(c.count(cfg.k));
  const auto m_k1 = static_cast<Eigen::Index>(c.count(cfg.k + 1));
  if (m_k1 == 0) {
    throw_error(ErrorCode::NoSimplices,
                "input has no simplices of order " + std::to_string(cfg.k + 1));
  }
  const auto& w = c.weights(cfg.k + 1);
  const Eigen::Map<const Eigen::VectorXd> weights(w.data(),
                                                  static_cast<Eigen::Index>(w.size()));
  const std::uint64_t seed = cfg.seeds.empty() ? 0 : cfg.seeds.front();

  json meta;
  meta["input"] = cfg.input.string();
  meta["order"] = cfg.k;
  meta["method"] = method_name(cfg.method);
  meta["seed"] = seed;

  const auto start = Clock::now();
  SparsifierResult result;
  if (cfg.method == Method::Kneighbours) {
    result = kneighbours_sparsifier(c, cfg.k, cfg.kn_cap);
    meta["cap"] = cfg.kn_cap;
  } else {
    const long long q = cfg.q > 0 ? cfg.q : default_q(m_k, cfg.eps, cfg.big_c);
    SparsifyConfig sample;
    sample.q = q;
    sample.eps = cfg.eps;
    sample.C = cfg.big_c;
    sample.seed = seed;
    ProbabilityMeasure p;
    if (cfg.method == Method::Exact) {
      p = measure_from_resistance(ger_svd(c, cfg.k), weights);
      meta["measure"] = "exact-ger";
    } else if (cfg.method == Method::Kid) {
      KidConfig kid;
      kid.delta = cfg.delta;
      kid.moments = cfg.moments;
      kid.mc_vectors = cfg.mc_vectors;
      kid.seed = seed;
      p = kid_resistance(c, cfg.k, kid).measure;
      meta["measure"] = "kid";
      meta["delta"] = cfg.delta;
    } else {
      p.probs = Eigen::VectorXd::Constant(m_k1, 1.0 / static_cast<double>(m_k1));
      meta["measure"] = "uniform";
    }
    result = sample_sparsifier(c, cfg.k, p, sample);
    meta["q"] = q;
    meta["eps"] = cfg.eps;
    meta["C"] = cfg.big_c;
  }
  meta["wall_time_ms"] = elapsed_ms(start);
  meta["kept"] = result.kept;
  meta["new_sq_weights"] = vector_to_json(result.new_sq_weights);
  meta["draws"] = result.draw_log;

  write_complex_file(cfg.output, result.sub_complex);
  write_json_file(cfg.output.string() + ".meta.json", meta);
}

double run_evaluate(const ExperimentConfig& cfg) {
  const SimplicialComplex reference = read_complex_file(cfg.input);
  const SimplicialComplex comparison = read_complex_file(cfg.compare);

  const double distance = spectral_distance(reference, comparison, cfg.k);
  const double eig = sorted_eigenvalue_distance(reference, comparison, cfg.k);
  const bool close = eps_close_check(reference, comparison, cfg.k, cfg.eps);

  json report;
  report["reference"] = cfg.input.string();
  report["comparison"] = cfg.compare.string();
  report["order"] = cfg.k;
  report["eps"] = cfg.eps;
  report["spectral_distance"] = distance;
  report["eig_l2"] = eig;
  report["eps_close"] = close;
  if (!cfg.output.empty()) {
    write_json_file(cfg.output, report);
  }
  return distance;
}

namespace {

const char* kReportHeader =
    "experiment,m0,filtration_eps,k,m_k,m_k1,method,M,Nz,q,fraction,perturb_delta,"
    "seed,error_inf,spectral_distance,eig_l2,eps_close,wall_time_ms,status";

void write_row(std::ostream& out, const BenchmarkRow& r) {
  out << r.experiment << ',' << r.m0 << ',' << format_double(r.filtration_eps) << ','
      << r.k << ',' << r.m_k << ',' << r.m_k1 << ',' << r.method << ',' << r.moments
      << ',' << r.mc_vectors << ',' << r.q << ',' << opt_cell(r.fraction) << ','
      << opt_cell(r.perturb_delta) << ',' << r.seed << ',' << opt_cell(r.error_inf)
      << ',' << opt_cell(r.spectral_dist) << ',' << opt_cell(r.eig_l2) << ','
      << (r.eps_close ? (*r.eps_close ? "1" : "0") : "") << ','
      << format_double(r.wall_time_ms) << ',' << r.status << '\n';
}

/// Complex plus its exact sampling measure, shared across the cells of one
/// grid point so the oracle is computed once.
struct PreparedComplex {
  SimplicialComplex complex;
  Eigen::VectorXd weights;
  ProbabilityMeasure exact_measure;
  double exact_time_ms = 0.0;
};

PreparedComplex prepare_vr(int m0, double offset, double filtration_eps, int max_order,
                           int k, std::uint64_t seed, bool with_exact) {
  PreparedComplex prep;
  const PointCloud pc = sample_clustered_points(m0, offset, seed);
  prep.complex = vietoris_rips(pc, FiltrationConfig{filtration_eps, max_order});
  const auto& w = prep.complex.weights(k + 1);
  prep.weights = Eigen::Map<const Eigen::VectorXd>(w.data(),
                                                   static_cast<Eigen::Index>(w.size()));
  if (with_exact && prep.complex.count(k + 1) > 0 &&
      static_cast<Eigen::Index>(prep.complex.count(k)) <= kDenseGuard &&
      static_cast<Eigen::Index>(prep.complex.count(k + 1)) <= kDenseGuard) {
    const auto start = Clock::now();
    prep.exact_measure = measure_from_resistance(ger_svd(prep.complex, k), prep.weights);
    prep.exact_time_ms = elapsed_ms(start);
  }
  return prep;
}

}  // namespace

void BenchmarkReport::write_csv(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) {
    throw_error(ErrorCode::ParseError, "cannot open " + path.string() + " for writing");
  }
  out << kReportHeader << '\n';
  for (const auto& r : rows) write_row(out, r);
}

void BenchmarkReport::write_summary_csv(const std::filesystem::path& path) const {
  struct Stats {
    double error_sum = 0.0;
    int error_count = 0;
    double dist_sum = 0.0;
    int dist_count = 0;
    double time_sum = 0.0;
    int time_count = 0;
  };
  // Keyed by everything except the seed; map keeps the output ordering
  // deterministic.
  std::map<std::string, Stats> groups;
  for (const auto& r : rows) {
    if (r.status != "ok") continue;
    std::ostringstream key;
    key << r.experiment << ',' << r.m0 << ',' << format_double(r.filtration_eps) << ','
        << r.k << ',' << r.method << ',' << r.moments << ',' << r.mc_vectors << ','
        << r.q << ',' << opt_cell(r.fraction) << ',' << opt_cell(r.perturb_delta);
    auto& s = groups[key.str()];
    if (r.error_inf) {
      s.error_sum += *r.error_inf;
      ++s.error_count;
    }
    if (r.spectral_dist) {
      s.dist_sum += *r.spectral_dist;
      ++s.dist_count;
    }
    s.time_sum += r.wall_time_ms;
    ++s.time_count;
  }
  std::ofstream out(path);
  if (!out) {
    throw_error(ErrorCode::ParseError, "cannot open " + path.string() + " for writing");
  }
  out << "experiment,m0,filtration_eps,k,method,M,Nz,q,fraction,perturb_delta,"
         "mean_error_inf,mean_spectral_distance,mean_wall_time_ms,runs\n";
  for (const auto& [key, s] : groups) {
    out << key << ','
        << (s.error_count > 0 ? format_double(s.error_sum / s.error_count) : std::string())
        << ','
        << (s.dist_count > 0 ? format_double(s.dist_sum / s.dist_count) : std::string())
        << ',' << format_double(s.time_sum / std::max(s.time_count, 1)) << ','
        << s.time_count << '\n';
  }
}

BenchmarkReport run_benchmark(const ExperimentConfig& cfg) {
  if (cfg.sweeps.empty()) {
    throw_error(ErrorCode::InvalidConfig, "benchmark needs at least one --sweep axis");
  }
  for (const auto& [axis, grid] : cfg.sweeps) {
    if (grid.empty()) {
      throw_error(ErrorCode::InvalidConfig, "sweep axis '" + axis + "' has an empty grid");
    }
    if (axis != "M" && axis != "Nz" && axis != "m0" && axis != "eps" &&
        axis != "fraction" && axis != "perturb") {
      throw_error(ErrorCode::InvalidConfig, "unknown sweep axis '" + axis + "'");
    }
  }
  if (cfg.seeds.empty()) {
    throw_error(ErrorCode::InvalidConfig, "benchmark needs at least one seed");
  }

  // A cell is one closure producing one or more rows; cells are built in
  // deterministic (grid point, seed) order and carry their output slot.
  struct Cell {
    std::function<std::vector<BenchmarkRow>()> run;
  };
  std::vector<Cell> cells;

  const int k = cfg.k;
  for (const auto& [axis, grid] : cfg.sweeps) {
    for (const double value : grid) {
      for (const std::uint64_t seed : cfg.seeds) {
        cells.push_back(Cell{[&, axis = axis, value, seed]() {
          std::vector<BenchmarkRow> out;
          BenchmarkRow base;
          base.experiment = axis;
          base.k = k;
          base.seed = seed;
          base.filtration_eps = cfg.filtration_eps;
          base.m0 = cfg.m0;
          try {
            if (axis == "M" || axis == "Nz") {
              const PreparedComplex prep =
                  prepare_vr(cfg.m0, cfg.cluster_offset, cfg.filtration_eps,
                             cfg.max_order, k, seed, true);
              base.m_k = static_cast<long long>(prep.complex.count(k));
              base.m_k1 = static_cast<long long>(prep.complex.count(k + 1));
              if (prep.exact_measure.probs.size() == 0) {
                base.method = "kid";
                base.status = "failed:SizeGuard";
                out.push_back(base);
                return out;
              }
              base.method = "kid";
              KidConfig kid;
              kid.delta = cfg.delta;
              kid.seed = seed;
              const KidDefaults defaults =
                  default_parameters(base.m_k, base.m_k1, cfg.delta);
              kid.moments = axis == "M" ? static_cast<int>(value)
                                        : (cfg.moments > 0 ? cfg.moments : defaults.moments);
              kid.mc_vectors = axis == "Nz"
                                   ? static_cast<int>(value)
                                   : (cfg.mc_vectors > 0 ? cfg.mc_vectors
                                                         : defaults.mc_vectors);
              const auto start = Clock::now();
              const KidResult result = kid_resistance(prep.complex, k, kid);
              base.wall_time_ms = elapsed_ms(start);
              base.moments = result.report.moments_used;
              base.mc_vectors = result.report.mc_vectors_used;
              base.error_inf =
                  (result.measure.probs - prep.exact_measure.probs).cwiseAbs().maxCoeff();
              out.push_back(base);
            } else if (axis == "m0" || axis == "eps") {
              // Size/density sweep: per grid point record the exact route's
              // wall time (when the dense guard admits it) and the KID
              // route's time and error.
              const int m0 = axis == "m0" ? static_cast<int>(value) : cfg.m0;
              const double filtration =
                  axis == "eps" ? value : cfg.filtration_eps;
              const PreparedComplex prep = prepare_vr(m0, cfg.cluster_offset, filtration,
                                                      cfg.max_order, k, seed, true);
              base.m0 = m0;
              base.filtration_eps = filtration;
              base.m_k = static_cast<long long>(prep.complex.count(k));
              base.m_k1 = static_cast<long long>(prep.complex.count(k + 1));
              const bool have_exact = prep.exact_measure.probs.size() > 0;

              if (have_exact) {
                BenchmarkRow exact_row = base;
                exact_row.method = "exact";
                exact_row.wall_time_ms = prep.exact_time_ms;
                out.push_back(exact_row);
              }
              if (base.m_k1 == 0) {
                base.method = "kid";
                base.status = "failed:NoSimplices";
                out.push_back(base);
              } else {
                KidConfig kid;
                kid.delta = cfg.delta;
                kid.seed = seed;
                const auto start = Clock::now();
                const KidResult result = kid_resistance(prep.complex, k, kid);
                base.wall_time_ms = elapsed_ms(start);
                base.method = "kid";
                base.moments = result.report.moments_used;
                base.mc_vectors = result.report.mc_vectors_used;
                if (have_exact) {
                  base.error_inf = (result.measure.probs - prep.exact_measure.probs)
                                       .cwiseAbs()
                                       .maxCoeff();
                }
                out.push_back(base);
              }
            } else if (axis == "fraction" || axis == "perturb") {
              const PreparedComplex prep =
                  prepare_vr(cfg.m0, cfg.cluster_offset, cfg.filtration_eps,
                             cfg.max_order, k, seed, true);
              base.m_k = static_cast<long long>(prep.complex.count(k));
              base.m_k1 = static_cast<long long>(prep.complex.count(k + 1));
              const long long q_full =
                  cfg.q > 0 ? cfg.q : default_q(base.m_k, cfg.eps, cfg.big_c);
              const double fraction = axis == "fraction" ? value : 0.33;
              const auto q = static_cast<long long>(
                  std::max(1.0, std::ceil(fraction * static_cast<double>(q_full))));
              base.q = q;
              base.fraction = fraction;

              auto evaluate = [&](const std::string& name,
                                  const SparsifierResult& result,
                                  double wall_ms) {
                BenchmarkRow row = base;
                row.method = name;
                row.wall_time_ms = wall_ms;
                row.spectral_dist =
                    spectral_distance(prep.complex, result.sub_complex, k);
                row.eig_l2 =
                    sorted_eigenvalue_distance(prep.complex, result.sub_complex, k);
                out.push_back(row);
              };

              SparsifyConfig sample;
              sample.q = q;
              sample.eps = cfg.eps;
              sample.C = cfg.big_c;
              sample.seed = seed;

              if (axis == "perturb") {
                base.perturb_delta = value;
                const ProbabilityMeasure perturbed =
                    perturb_measure(prep.exact_measure, value, mix_seed(seed, 77));
                auto start = Clock::now();
                evaluate("exact",
                         sample_sparsifier(prep.complex, k, perturbed, sample),
                         elapsed_ms(start));
              } else {
                auto start = Clock::now();
                evaluate("exact",
                         sample_sparsifier(prep.complex, k, prep.exact_measure, sample),
                         elapsed_ms(start));

                KidConfig kid;
                kid.delta = cfg.delta;
                kid.seed = seed;
                start = Clock::now();
                const ProbabilityMeasure kid_measure =
                    kid_resistance(prep.complex, k, kid).measure;
                evaluate("kid", sample_sparsifier(prep.complex, k, kid_measure, sample),
                         elapsed_ms(start));

                start = Clock::now();
                evaluate("uniform", uniform_sparsifier(prep.complex, k, q, seed),
                         elapsed_ms(start));

                start = Clock::now();
                evaluate("kneighbours", kneighbours_sparsifier(prep.complex, k, cfg.kn_cap),
                         elapsed_ms(start));
              }
            }
          } catch (const Error& e) {
            base.status = std::string("failed:") + error_code_name(e.code());
            out.push_back(base);
          }
          return out;
        }});
      }
    }
  }

  // Deterministic gather: each cell writes its own slot; rows are then
  // concatenated in cell order regardless of scheduling.
  std::vector<std::vector<BenchmarkRow>> slots(cells.size());
  const int workers = std::min<int>(resolve_workers(cfg.workers),
                                    static_cast<int>(cells.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) slots[i] = cells[i].run();
  } else {
    std::atomic<std::size_t> cursor{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) {
      pool.emplace_back([&]() {
        while (true) {
          const std::size_t i = cursor.fetch_add(1);
          if (i >= cells.size()) break;
          slots[i] = cells[i].run();
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  BenchmarkReport report;
  for (auto& slot : slots) {
    for (auto& row : slot) report.rows.push_back(std::move(row));
  }

  if (!cfg.output.empty()) {
    std::filesystem::create_directories(cfg.output);
    for (const auto& [axis, grid] : cfg.sweeps) {
      (void)grid;
      BenchmarkReport axis_report;
      for (const auto& row : report.rows) {
        if (row.experiment == axis) axis_report.rows.push_back(row);
      }
      axis_report.write_csv(cfg.output / ("benchmark_" + axis + ".csv"));
    }
    report.write_summary_csv(cfg.output / "benchmark_summary.csv");
  }
  return report;
}

}  // namespace sparsic
