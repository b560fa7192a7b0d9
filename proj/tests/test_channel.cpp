#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "covert/channel.hpp"
#include "covert/rng.hpp"

using namespace covert;

namespace {

IqFrame random_frame(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  IqFrame f;
  f.samples.resize(n);
  for (auto& s : f.samples) s = {rng.normal(), rng.normal()};
  return f;
}

IqFrame zero_frame(std::size_t n) {
  IqFrame f;
  f.samples.assign(n, {0.0, 0.0});
  return f;
}

}  // namespace

TEST_CASE("noiseless unit channel is the identity") {
  const IqFrame in = random_frame(512, 1);
  const IqFrame out = propagate(in, {.h = 1.0, .theta = 0.0, .sigma_sq = 0.0, .seed = 9});
  REQUIRE(out.size() == in.size());
  for (std::size_t i = 0; i < in.size(); ++i) CHECK(out.samples[i] == in.samples[i]);
}

TEST_CASE("noise variance per quadrature matches sigma_sq") {
  const std::size_t n = 1'000'000;
  const double sigma_sq = 2.7;
  const IqFrame out = propagate(zero_frame(n), {.h = 1.0, .sigma_sq = sigma_sq, .seed = 5});

  double vr = 0.0, vi = 0.0, cross = 0.0;
  for (const auto& s : out.samples) {
    vr += s.real() * s.real();
    vi += s.imag() * s.imag();
    cross += s.real() * s.imag();
  }
  vr /= static_cast<double>(n);
  vi /= static_cast<double>(n);
  cross /= static_cast<double>(n);

  // Chi-square concentration: sd of the variance estimate is sigma^2 sqrt(2/n).
  const double tol = 3.0 * sigma_sq * std::sqrt(2.0 / static_cast<double>(n));
  CHECK(std::abs(vr - sigma_sq) <= tol);
  CHECK(std::abs(vi - sigma_sq) <= tol);
  // Circular symmetry: quadratures uncorrelated.
  CHECK(std::abs(cross) <= 3.0 * sigma_sq / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("h = 0 leaves pure noise with mean power 2 sigma_sq") {
  const std::size_t n = 500'000;
  const double sigma_sq = 1.3;
  const IqFrame in = random_frame(n, 2);
  const IqFrame out = propagate(in, {.h = 0.0, .sigma_sq = sigma_sq, .seed = 6});

  double power = 0.0;
  for (const auto& s : out.samples) power += std::norm(s);
  power /= static_cast<double>(n);
  const double tol = 3.0 * 2.0 * sigma_sq / std::sqrt(static_cast<double>(n));
  CHECK(std::abs(power - 2.0 * sigma_sq) <= tol);
}

TEST_CASE("phase rotation preserves energy") {
  const IqFrame in = random_frame(4096, 3);
  const IqFrame out = propagate(in, {.h = 2.0, .theta = 1.1, .sigma_sq = 0.0, .seed = 0});
  double ein = 0.0, eout = 0.0;
  for (const auto& s : in.samples) ein += std::norm(s);
  for (const auto& s : out.samples) eout += std::norm(s);
  CHECK(std::abs(eout - 4.0 * ein) <= 1e-10 * eout);
}

TEST_CASE("identical seeds give identical noise realizations") {
  const IqFrame in = zero_frame(1024);
  const ChannelParams p{.h = 1.0, .theta = 0.2, .sigma_sq = 1.0, .seed = 1234};
  const IqFrame a = propagate(in, p);
  const IqFrame b = propagate(in, p);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.samples[i] == b.samples[i]);

  ChannelParams q = p;
  q.seed = 1235;
  const IqFrame c = propagate(in, q);
  bool any_diff = false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.samples[i] != c.samples[i]) any_diff = true;
  CHECK(any_diff);
}

TEST_CASE("snr_of is h^2 norm_sq over sigma_sq") {
  PulseShape pulse;
  pulse.samples = {1.0, 1.0};
  pulse.slot_len = 4;
  pulse.norm_sq = 2.0;

  CHECK(snr_of({.h = 1.0, .sigma_sq = 1.0}, pulse) == doctest::Approx(2.0));
  CHECK(snr_of({.h = 2.0, .sigma_sq = 1.0}, pulse) == doctest::Approx(8.0));
  CHECK_THROWS_AS(snr_of({.h = 1.0, .sigma_sq = 0.0}, pulse), std::invalid_argument);
}
