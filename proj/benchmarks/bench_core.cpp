#include <benchmark/benchmark.h>

#include "sparsic/builders.hpp"
#include "sparsic/exact_resistance.hpp"
#include "sparsic/kid.hpp"
#include "sparsic/operators.hpp"
#include "sparsic/sparsify.hpp"

using namespace sparsic;

namespace {

SimplicialComplex fixture(int m0, double eps) {
  return vietoris_rips(sample_clustered_points(m0, 3.0, 42), FiltrationConfig{eps, 2});
}

}  // namespace

static void BM_VietorisRips(benchmark::State& state) {
  const auto pc = sample_clustered_points(static_cast<int>(state.range(0)), 3.0, 42);
  for (auto _ : state) {
    auto c = vietoris_rips(pc, FiltrationConfig{1.75, 2});
    benchmark::DoNotOptimize(c);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_VietorisRips)->RangeMultiplier(2)->Range(16, 128)->Complexity();

static void BM_ApplyDown(benchmark::State& state) {
  const auto c = fixture(static_cast<int>(state.range(0)), 2.0);
  const auto op = make_down_operator(c, 1);
  Eigen::MatrixXd x = Eigen::MatrixXd::Random(op.down_dim(), 32);
  for (auto _ : state) {
    benchmark::DoNotOptimize(op.apply_down(x));
  }
  state.SetComplexityN(op.nnz());
}
BENCHMARK(BM_ApplyDown)->RangeMultiplier(2)->Range(16, 128)->Complexity();

static void BM_ExactResistance(benchmark::State& state) {
  const auto c = fixture(static_cast<int>(state.range(0)), 1.75);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ger_svd(c, 1));
  }
}
BENCHMARK(BM_ExactResistance)->RangeMultiplier(2)->Range(16, 64)->Unit(benchmark::kMillisecond);

static void BM_KidResistance(benchmark::State& state) {
  const auto c = fixture(static_cast<int>(state.range(0)), 1.75);
  KidConfig cfg;
  cfg.delta = 0.1;
  cfg.seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kid_resistance(c, 1, cfg));
  }
}
BENCHMARK(BM_KidResistance)->RangeMultiplier(2)->Range(16, 64)->Unit(benchmark::kMillisecond);

static void BM_SampleSparsifier(benchmark::State& state) {
  const auto c = fixture(40, 1.75);
  const auto& w = c.weights(2);
  const auto p = measure_from_resistance(
      ger_svd(c, 1),
      Eigen::Map<const Eigen::VectorXd>(w.data(), static_cast<Eigen::Index>(w.size())));
  SparsifyConfig cfg;
  cfg.q = state.range(0);
  cfg.seed = 3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_sparsifier(c, 1, p, cfg));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SampleSparsifier)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

BENCHMARK_MAIN();
