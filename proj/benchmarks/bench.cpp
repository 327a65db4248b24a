#include <benchmark/benchmark.h>

#include <random>

#include "ksfem/fem.hpp"
#include "ksfem/presets.hpp"
#include "ksfem/solver.hpp"
#include "ksfem/stab.hpp"

using namespace ksfem;

namespace {

Mesh grid(int n) {
  return build_rect_grid(0, 1, 0, 1, n, n, CellKind::q1_quadrilateral);
}

void BM_AssembleMass(benchmark::State& state) {
  const Mesh m = grid(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(assemble_mass(m));
  }
  state.SetComplexityN(state.range(0) * state.range(0));
}
BENCHMARK(BM_AssembleMass)->Arg(20)->Arg(40)->Arg(80)->Complexity();

void BM_AssembleStiffness(benchmark::State& state) {
  const Mesh m = grid(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(assemble_stiffness(m));
  }
}
BENCHMARK(BM_AssembleStiffness)->Arg(40)->Arg(80);

void BM_ShockDetector(benchmark::State& state) {
  const Mesh m = grid(static_cast<int>(state.range(0)));
  const auto stars = build_node_stars(m);
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> dist(0.0, 2.0);
  std::vector<double> w(static_cast<size_t>(m.num_nodes()));
  for (auto& x : w) x = dist(rng);
  const FeField field(m, w);
  const DetectorParams params{2.0, DetectorMode::extrema};
  for (auto _ : state) {
    benchmark::DoNotOptimize(shock_detector(field, stars, params));
  }
}
BENCHMARK(BM_ShockDetector)->Arg(40)->Arg(80);

void BM_StarChemoVector(benchmark::State& state) {
  const Mesh m = grid(static_cast<int>(state.range(0)));
  const SparseOperator K = assemble_stiffness(m);
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> dist(0.5, 2.0);
  std::vector<double> uv(static_cast<size_t>(m.num_nodes()));
  std::vector<double> vv(static_cast<size_t>(m.num_nodes()));
  for (auto& x : uv) x = dist(rng);
  for (auto& x : vv) x = dist(rng);
  const FeField u(m, uv), v(m, vv);
  const EntropyParams eps{1e-6};
  for (auto _ : state) {
    benchmark::DoNotOptimize(star_chemo_vector(u, v, K, eps));
  }
}
BENCHMARK(BM_StarChemoVector)->Arg(40)->Arg(80);

void BM_SmoothStep(benchmark::State& state) {
  const Preset preset = resolve_preset("smooth_coalescence");
  const Mesh m = preset.build_mesh();
  const auto ops = AssembledOperators::build(m);
  SolverConfig config;
  config.k = preset.k;
  config.algorithm =
      state.range(0) == 1 ? Algorithm::alg1 : Algorithm::alg2;
  for (auto _ : state) {
    state.PauseTiming();
    StepWorkspace ws(ops.pattern);
    SimState sim{0.0, 0, averaged_interpolate(m, preset.u0),
                 averaged_interpolate(m, preset.v0)};
    state.ResumeTiming();
    advance(sim, config, ops, ws);
  }
}
BENCHMARK(BM_SmoothStep)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
