#include <benchmark/benchmark.h>

#include "covert/channel.hpp"

using namespace covert;

namespace {

void BM_Propagate(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  IqFrame in;
  in.samples.assign(n, {0.3, -0.7});
  const ChannelParams params{.h = 1.0, .theta = 0.4, .sigma_sq = 2.0, .seed = 7};
  for (auto _ : state) {
    IqFrame out = propagate(in, params);
    benchmark::DoNotOptimize(out.samples.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(n) * 16);
}
BENCHMARK(BM_Propagate)->Arg(1 << 16)->Arg(1 << 22);

}  // namespace

BENCHMARK_MAIN();
