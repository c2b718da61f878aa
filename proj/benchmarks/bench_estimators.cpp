#include <benchmark/benchmark.h>

#include "simest/estimators/chains.hpp"
#include "simest/estimators/point_estimators.hpp"
#include "simest/estimators/prior.hpp"
#include "simest/estimators/reverse_sampler.hpp"
#include "simest/models/panel_model.hpp"
#include "simest/solver/solver.hpp"

using namespace simest;

namespace {

struct PanelFixture {
  DynamicPanelModel model{PanelDesign{}};
  Dataset data = model.simulate_data(model.truth(), model.simulate_innovations(SeedSpec{1, 0}));
  AuxVector psi = model.aux_stats(data);
  ParamVector start = md_estimate(model, psi, Matrix()).point;
};

const PanelFixture& panel() {
  static const PanelFixture f;
  return f;
}

void BM_PanelSimulateAux(benchmark::State& state) {
  const auto& f = panel();
  const InnovationSet eps = f.model.simulate_innovations(SeedSpec{2, 0});
  for (auto _ : state) benchmark::DoNotOptimize(f.model.simulate_aux(f.model.truth(), eps));
}
BENCHMARK(BM_PanelSimulateAux);

void BM_PanelInnovations(benchmark::State& state) {
  const auto& f = panel();
  std::uint64_t id = 0;
  for (auto _ : state) benchmark::DoNotOptimize(f.model.simulate_innovations(SeedSpec{3, id++}));
}
BENCHMARK(BM_PanelInnovations);

void BM_PanelExactSolve(benchmark::State& state) {
  const auto& f = panel();
  const InnovationSet eps = f.model.simulate_innovations(SeedSpec{4, 0});
  const VectorMap sim = [&](const Vector& t) { return f.model.simulate_aux(ParamVector(f.model.space(), t), eps).values(); };
  for (auto _ : state) benchmark::DoNotOptimize(solve_exact_identified(sim, f.psi, f.start));
}
BENCHMARK(BM_PanelExactSolve)->Unit(benchmark::kMicrosecond);

void BM_PanelSmd(benchmark::State& state) {
  const auto& f = panel();
  const Matrix W = f.model.distance_weighting(f.data);
  for (auto _ : state)
    benchmark::DoNotOptimize(smd_estimate(f.model, f.psi, W, state.range(0), SeedSpec{5, 0}, f.start));
}
BENCHMARK(BM_PanelSmd)->Arg(20)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_PanelReverseSampler(benchmark::State& state) {
  const auto& f = panel();
  ReverseSamplerConfig rc;
  rc.draws = state.range(0);
  rc.seed = SeedSpec{6, 0};
  const Prior flat = Prior::flat(f.model.space());
  for (auto _ : state) benchmark::DoNotOptimize(reverse_sampler(f.model, f.psi, flat, f.start, rc));
}
BENCHMARK(BM_PanelReverseSampler)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_PanelAbcSteps(benchmark::State& state) {
  const auto& f = panel();
  const Matrix W = f.model.distance_weighting(f.data);
  ChainConfig cc;
  cc.draws = state.range(0);
  cc.burn_in = 0;
  cc.delta = 0.05;
  cc.seed = SeedSpec{7, 0};
  const ProposalSpec prop{Vector{{0.01, 0.01, 0.05}}, 0, 0.1};
  const Prior flat = Prior::flat(f.model.space());
  for (auto _ : state) benchmark::DoNotOptimize(mcmc_abc_chain(f.model, f.psi, W, flat, prop, f.start, cc));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PanelAbcSteps)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_Logabsdet3(benchmark::State& state) {
  const Matrix m{{2.0, 0.3, -0.1}, {0.4, 1.5, 0.2}, {-0.3, 0.1, 0.9}};
  for (auto _ : state) benchmark::DoNotOptimize(logabsdet(m));
}
BENCHMARK(BM_Logabsdet3);

}  // namespace
BENCHMARK_MAIN();
