#include <benchmark/benchmark.h>

#include "covert/analysis.hpp"
#include "covert/rng.hpp"
#include "covert/willie.hpp"

using namespace covert;

namespace {

void BM_LogLikelihoodRatio(benchmark::State& state) {
  const std::size_t n_p = static_cast<std::size_t>(state.range(0));
  Rng rng(5);
  WardenObservation obs;
  obs.n_p = n_p;
  obs.slot_stats.resize(n_p);
  for (auto& v : obs.slot_stats) v = rng.normal();
  for (auto _ : state) {
    benchmark::DoNotOptimize(log_likelihood_ratio(obs, 0.002, 1.0, 3.99, 10.0));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n_p));
}
BENCHMARK(BM_LogLikelihoodRatio)->Arg(8192)->Arg(131072);

void BM_RelativeEntropyQuadrature(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(relative_entropy_quadrature(0.002, 1.26, 131072));
  }
}
BENCHMARK(BM_RelativeEntropyQuadrature);

}  // namespace
