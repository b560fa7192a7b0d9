#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "covert/analysis.hpp"
#include "covert/bob.hpp"
#include "covert/channel.hpp"
#include "covert/rng.hpp"

using namespace covert;

namespace {

SecretKey all_slots_key(std::size_t n_p) {
  SecretKey key;
  key.t.assign(n_p, 1);
  key.s.assign(n_p, 0);
  return key;
}

IqFrame rotated(const IqFrame& in, double theta) {
  IqFrame out = in;
  const std::complex<double> r{std::cos(theta), std::sin(theta)};
  for (auto& s : out.samples) s *= r;
  return out;
}

}  // namespace

TEST_CASE("phase estimate is exact on noiseless pilots") {
  const PulseShape pulse = make_gaussian_pulse(37, 9.0, 76, 1.0);
  const IqFrame clean = bpsk_modulate_slots({+1, -1, +1}, pulse);

  CHECK(estimate_phase(clean, pulse, {0, 1, 2}, {+1, -1, +1}) ==
        doctest::Approx(0.0).epsilon(1e-12));

  const double theta = std::numbers::pi / 3.0;
  const IqFrame rot = rotated(clean, theta);
  CHECK(std::abs(estimate_phase(rot, pulse, {0, 1, 2}, {+1, -1, +1}) - theta) <= 1e-9);
  CHECK(std::abs(estimate_phase(rot, pulse, {1}, {-1}) - theta) <= 1e-9);

  CHECK_THROWS_AS(estimate_phase(clean, pulse, {}, {}), std::invalid_argument);
  CHECK_THROWS_AS(estimate_phase(clean, pulse, {0}, {+1, -1}), std::invalid_argument);
}

TEST_CASE("hard decisions on noiseless slots, ties resolve to +1") {
  const PulseShape pulse = make_gaussian_pulse(37, 9.0, 76, 1.0);
  const SecretKey key = all_slots_key(2);
  const IqFrame clean = bpsk_modulate_slots({+1, -1}, pulse);
  CHECK(demodulate(clean, pulse, key, 0.0, 0) == std::vector<int>{+1, -1});

  IqFrame zeros;
  zeros.samples.assign(2 * 76, {0.0, 0.0});
  CHECK(demodulate(zeros, pulse, key, 0.0, 0) == std::vector<int>{+1, +1});

  IqFrame tiny;
  tiny.samples.assign(76, {0.0, 0.0});
  CHECK_THROWS_AS(demodulate(tiny, pulse, key, 0.0, 0), std::out_of_range);
}

TEST_CASE("phase-corrected sign rule equals the two-correlation comparison") {
  const PulseShape pulse = make_gaussian_pulse(37, 9.0, 76, 1.0);
  Rng rng(5);
  for (int rep = 0; rep < 200; ++rep) {
    IqFrame frame;
    frame.samples.resize(76);
    for (auto& s : frame.samples) s = {rng.normal(), rng.normal()};
    const double theta_hat = 6.28 * rng.uniform01() - 3.14;

    const std::complex<double> derot{std::cos(theta_hat), -std::sin(theta_hat)};
    const auto corr = matched_filter_correlate(frame, pulse, 0);
    const double plus = (derot * corr).real();
    const double minus = (derot * -corr).real();
    const int via_comparison = plus >= minus ? 1 : -1;

    const SecretKey key = all_slots_key(1);
    CHECK(demodulate(frame, pulse, key, theta_hat, 0)[0] == via_comparison);
  }
}

TEST_CASE("sparse decoding never reads unselected slots") {
  const PulseShape pulse = make_gaussian_pulse(37, 9.0, 76, 1.0);
  SecretKey key;
  key.t = {1, 0, 1, 0, 1};
  key.s.assign(3, 0);

  IqFrame frame = bpsk_modulate_slots({+1, +1, -1, +1, +1}, pulse);
  const auto before = demodulate(frame, pulse, key, 0.0, 0);

  // Corrupt every unselected slot with large garbage.
  for (std::size_t i : {1ul, 3ul})
    for (std::size_t k = 0; k < 76; ++k) frame.samples[i * 76 + k] = {1e9, -1e9};
  CHECK(demodulate(frame, pulse, key, 0.0, 0) == before);
}

TEST_CASE("empirical BER matches the Gaussian-tail oracle at 2 dB") {
  const PulseShape pulse = make_gaussian_pulse(37, 9.0, 76, 1.0);
  const double snr = db_to_linear(2.0);
  const double sigma_sq = pulse.norm_sq / snr;
  const double theta = 0.6;

  const std::size_t bits_per_frame = 2000;
  const std::size_t frames = 60;
  const SecretKey key = all_slots_key(bits_per_frame);

  Rng bit_rng(17);
  std::size_t errors = 0, total = 0;
  for (std::size_t f = 0; f < frames; ++f) {
    std::vector<int> bits(bits_per_frame);
    for (auto& b : bits) b = bit_rng.sign();
    const IqFrame tx = bpsk_modulate_slots(bits, pulse);
    const IqFrame rx =
        propagate(tx, {.h = 1.0, .theta = theta, .sigma_sq = sigma_sq, .seed = 1000 + f});
    const auto decisions = demodulate(rx, pulse, key, theta, 0);
    for (std::size_t i = 0; i < bits.size(); ++i) errors += decisions[i] != bits[i];
    total += bits.size();
  }
  const double ber = static_cast<double>(errors) / static_cast<double>(total);
  const double expect = gaussian_tail(std::sqrt(snr));
  const double tol = 3.0 * std::sqrt(expect * (1.0 - expect) / static_cast<double>(total));
  CHECK(std::abs(ber - expect) <= tol);
}

TEST_CASE("BER is non-increasing in the path loss over a sweep") {
  const PulseShape pulse = make_gaussian_pulse(37, 9.0, 76, 1.0);
  const double sigma_sq = pulse.norm_sq;  // 0 dB at h = 1
  const std::size_t n_bits = 20000;
  const SecretKey key = all_slots_key(n_bits);

  Rng bit_rng(23);
  std::vector<int> bits(n_bits);
  for (auto& b : bits) b = bit_rng.sign();
  const IqFrame tx = bpsk_modulate_slots(bits, pulse);

  std::vector<double> bers;
  for (double h : {0.7, 1.0, 1.4}) {
    const IqFrame rx = propagate(tx, {.h = h, .theta = 0.0, .sigma_sq = sigma_sq, .seed = 7});
    const auto decisions = demodulate(rx, pulse, key, 0.0, 0);
    std::size_t errors = 0;
    for (std::size_t i = 0; i < bits.size(); ++i) errors += decisions[i] != bits[i];
    bers.push_back(static_cast<double>(errors) / static_cast<double>(n_bits));
  }
  // Adjacent h values differ by ~3 dB; the BER gaps dwarf Monte-Carlo noise.
  CHECK(bers[1] < bers[0]);
  CHECK(bers[2] < bers[1]);
}

TEST_CASE("single-pilot decoding behaves like a differentially-coherent link") {
  // Deciding by the sign of Re(e^{-j theta_hat} <c,y>) with theta_hat from
  // one equal-energy pilot is algebraically the sign of Re(y_d conj(y_p)),
  // so the error rate is exp(-SNR/2)/2 rather than Q(sqrt(SNR)).
  const PulseShape pulse = make_gaussian_pulse(37, 9.0, 76, 1.0);
  const double snr = db_to_linear(2.0);
  const double sigma_sq = pulse.norm_sq / snr;
  const double theta = 1.1;

  const std::size_t data_per_frame = 40;
  const std::size_t frames = 1200;
  const SecretKey key = all_slots_key(data_per_frame + 1);

  Rng bit_rng(4242);
  std::size_t errors = 0, total = 0;
  for (std::size_t f = 0; f < frames; ++f) {
    std::vector<int> bits(data_per_frame + 1);
    bits[0] = +1;  // pilot
    for (std::size_t i = 1; i < bits.size(); ++i) bits[i] = bit_rng.sign();
    const IqFrame tx = bpsk_modulate_slots(bits, pulse);
    const IqFrame rx =
        propagate(tx, {.h = 1.0, .theta = theta, .sigma_sq = sigma_sq, .seed = 50000 + f});
    const double theta_hat = estimate_phase(rx, pulse, {0}, {+1});
    const auto decisions = demodulate(rx, pulse, key, theta_hat, 0);
    for (std::size_t i = 1; i < bits.size(); ++i) errors += decisions[i] != bits[i];
    total += data_per_frame;
  }
  const double ber = static_cast<double>(errors) / static_cast<double>(total);
  const double expect = 0.5 * std::exp(-snr / 2.0);  // 0.2264 at 2 dB
  // Bits within a frame share the pilot, so allow for the clustering in the
  // binomial tolerance via the frame count.
  const double tol = 3.0 * std::sqrt(expect * (1.0 - expect) / static_cast<double>(frames));
  CHECK(std::abs(ber - expect) <= tol);
}

TEST_CASE("report compiles BSC statistics and flags sign inversion") {
  std::vector<int> truth(100);
  Rng rng(8);
  for (auto& b : truth) b = rng.sign();

  SUBCASE("perfect decode") {
    const BobReport r = compile_report(truth, truth, 101);
    CHECK(r.bit_errors == 0);
    CHECK(r.p_e_bsc_hat == 0.0);
    CHECK(r.c_bsc_hat == 1.0);
    CHECK(r.b_bsc_hat == doctest::Approx(101.0));
    CHECK_FALSE(r.degenerate_inversion);
  }

  SUBCASE("total inversion is degenerate, not informative") {
    std::vector<int> flipped(truth.size());
    for (std::size_t i = 0; i < truth.size(); ++i) flipped[i] = -truth[i];
    const BobReport r = compile_report(flipped, truth, 101);
    CHECK(r.p_e_bsc_hat == 1.0);
    CHECK(r.c_bsc_hat == 1.0);  // h2(1) = 0
    CHECK(r.degenerate_inversion);
  }

  SUBCASE("the 0.17 operating point") {
    std::vector<int> decoded = truth;
    for (std::size_t i = 0; i < 17; ++i) decoded[i * 5] = -decoded[i * 5];
    const BobReport r = compile_report(decoded, truth, 101);
    CHECK(r.p_e_bsc_hat == doctest::Approx(0.17));
    CHECK(r.c_bsc_hat == doctest::Approx(0.3422952212557805).epsilon(1e-12));
    CHECK(r.b_bsc_hat == doctest::Approx(101.0 * 0.3422952212557805).epsilon(1e-12));
  }

  SUBCASE("length mismatch throws") {
    CHECK_THROWS_AS(compile_report({1, 1}, {1}, 3), std::invalid_argument);
  }

  SUBCASE("empty data from a pilot-only packet") {
    const BobReport r = compile_report({}, {}, 1);
    CHECK(r.p_e_bsc_hat == 0.0);
    CHECK(r.bit_errors == 0);
  }
}
