#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "covert/dsp.hpp"

namespace covert {

// Pre-shared secret: slot-selection vector t (length n_p, Bernoulli(alpha))
// and one-time pad s (one bit per selected slot).
struct SecretKey {
  std::vector<std::uint8_t> t;
  std::vector<std::uint8_t> s;
  std::uint64_t seed = 0;

  std::size_t n_p() const { return t.size(); }
  std::size_t n_t() const;
  std::vector<std::size_t> selected_slots() const;
};

// Covertness budget: transmission probability alpha_n sized so the warden's
// relative entropy stays within delta_re = 8 delta^2.
struct CovertBudget {
  double alpha_n = 0.0;
  double delta = 0.0;
  double delta_re = 0.0;
  std::size_t n_p = 0;
  double snr_willie = 0.0;  // linear power ratio at the warden
  bool clipped = false;     // alpha formula exceeded 1 and was clipped
};

// alpha_n = min(1, 2 SNR^-1 sqrt(delta_re / n_p)). Throws on non-positive
// SNR, delta outside (0, 1/2), or n_p == 0.
CovertBudget compute_alpha(double snr_willie, double delta, std::size_t n_p);

// Average reliably-decodable bits: alpha_n * n_p * c_bsc.
double predicted_covert_bits(const CovertBudget& budget, double c_bsc);

// Draws t_i ~ Bernoulli(alpha_n) and one pad bit per selected slot.
// Deterministic given seed.
SecretKey generate_secret(const CovertBudget& budget, std::uint64_t seed);

// Cost of sharing the secret: n_t log2(n_p) bits for the slot indices plus
// n_t pad bits.
double secret_key_bits(const SecretKey& key, std::size_t n_p);

// Flips the sign of code_bits[i] where pad[i] is set. Involution.
std::vector<int> apply_one_time_pad(const std::vector<int>& code_bits,
                                    const std::vector<std::uint8_t>& pad);

// The first selected slot carries this known symbol before padding; it is
// excluded from throughput accounting.
inline constexpr int kPilotSymbol = +1;

// Three-segment packet: shaped preamble, Alice-on segment of n_p_on slots
// (message bits only where t_i = 1), Alice-off segment of n_p_off slots of
// silence. message_bits are pre-pad code symbols, message_bits[0] being the
// pilot; the pad is applied at build time.
struct PacketPlan {
  PreambleSpec preamble;
  double preamble_amplitude = 1.0;
  std::size_t n_p_on = 0;
  std::size_t n_p_off = 0;
  std::size_t slot_len = 0;
  SecretKey key;
  std::vector<int> message_bits;
  bool require_pilot = true;  // calibration packets carry no pilot
};

std::size_t packet_sample_count(const PacketPlan& plan);

IqFrame build_packet(const PacketPlan& plan, const PulseShape& pulse);

// Text serialization of a secret (fields: seed, alpha_n, n_p, t-indices,
// s-bits) so transmit-side and receive-side runs can be decoupled.
struct StoredSecret {
  SecretKey key;
  double alpha_n = 0.0;
};

void save_secret(const SecretKey& key, double alpha_n, const std::string& path);
StoredSecret load_secret(const std::string& path);

}  // namespace covert
