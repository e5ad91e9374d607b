#include <benchmark/benchmark.h>

#include "lce/assemble.hpp"
#include "lce/graph_enum.hpp"
#include "lce/multigraph.hpp"
#include "lce/numeric_eval.hpp"
#include "lce/single_site.hpp"
#include "lce/vertex_weights.hpp"

using namespace lce;

static void BM_CanonicalCode(benchmark::State& state) {
  const auto graphs = enumerate_connected(static_cast<int>(state.range(0)));
  for (auto _ : state)
    for (const auto& g : graphs) benchmark::DoNotOptimize(canonical_code(g));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(graphs.size()));
}
BENCHMARK(BM_CanonicalCode)->DenseRange(4, 6);

static void BM_EnumerateConnected(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_connected(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_EnumerateConnected)->DenseRange(4, 7)->Unit(benchmark::kMillisecond);

static void BM_MuGammaDegrees(benchmark::State& state) {
  std::vector<int> d(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(mu_gamma_degrees(d));
}
BENCHMARK(BM_MuGammaDegrees)->DenseRange(2, 5)->Unit(benchmark::kMicrosecond);

static void BM_GammaExpansion(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(gamma_expansion(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_GammaExpansion)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

static void BM_MixedRecursion(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(gamma_mixed_recursion(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_MixedRecursion)->DenseRange(4, 6)->Unit(benchmark::kMillisecond);

static void BM_GammaTreeRule(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(gamma_tree_rule(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_GammaTreeRule)->DenseRange(6, 10, 2)->Unit(benchmark::kMillisecond);

static void BM_FlowCheck(benchmark::State& state) {
  const int sites = static_cast<int>(state.range(0));
  static const FlowVerifier fv(6);
  LatticeModel lat{random_hopping(sites, 1), SingleSiteModel::quartic(0.1)};
  auto phi = random_field(lat.site, sites, 1);
  for (auto _ : state) benchmark::DoNotOptimize(fv.check(6, lat, phi));
}
BENCHMARK(BM_FlowCheck)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

static void BM_OmegaJetQuartic(benchmark::State& state) {
  const auto model = SingleSiteModel::quartic(0.1);
  for (auto _ : state) benchmark::DoNotOptimize(omega_jet(model, 0.3, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_OmegaJetQuartic)->Arg(4)->Arg(8)->Arg(12)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
