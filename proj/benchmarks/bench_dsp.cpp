#include <benchmark/benchmark.h>

#include "covert/dsp.hpp"
#include "covert/rng.hpp"

using namespace covert;

namespace {

IqFrame noise_frame(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  IqFrame f;
  f.samples.resize(n);
  for (auto& s : f.samples) {
    auto [a, b] = rng.normal_pair();
    s = {a, b};
  }
  return f;
}

void BM_MakeGaussianPulse(benchmark::State& state) {
  for (auto _ : state) {
    auto p = make_gaussian_pulse(37, 9.0, 76, 1.0);
    benchmark::DoNotOptimize(p.norm_sq);
  }
}
BENCHMARK(BM_MakeGaussianPulse);

void BM_MatchedFilterSlots(benchmark::State& state) {
  const auto pulse = make_gaussian_pulse(37, 9.0, 76, 1.0);
  const std::size_t n_p = static_cast<std::size_t>(state.range(0));
  const IqFrame frame = noise_frame(n_p * 76, 1);
  for (auto _ : state) {
    std::complex<double> acc{};
    for (std::size_t i = 0; i < n_p; ++i) acc += matched_filter_correlate(frame, pulse, i);
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n_p));
}
BENCHMARK(BM_MatchedFilterSlots)->Arg(1024)->Arg(16384);

void BM_LocatePreamble(benchmark::State& state) {
  const auto spec = default_preamble_spec();
  const auto wave = make_preamble_waveform(spec, 6.0);
  IqFrame frame = noise_frame(wave.size() + 2340, 2);
  for (std::size_t k = 0; k < wave.size(); ++k)
    frame.samples[700 + k] += std::complex<double>(wave[k], 0.0);
  for (auto _ : state) {
    auto loc = locate_preamble(frame, wave);
    benchmark::DoNotOptimize(loc.offset);
  }
}
BENCHMARK(BM_LocatePreamble);

}  // namespace
