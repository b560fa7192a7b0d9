#include "covert/protocol.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "covert/rng.hpp"

namespace covert {

std::size_t SecretKey::n_t() const {
  std::size_t c = 0;
  for (auto b : t) c += (b != 0);
  return c;
}

std::vector<std::size_t> SecretKey::selected_slots() const {
  std::vector<std::size_t> idx;
  idx.reserve(s.size());
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i]) idx.push_back(i);
  return idx;
}

CovertBudget compute_alpha(double snr_willie, double delta, std::size_t n_p) {
  if (!(snr_willie > 0.0)) throw std::invalid_argument("compute_alpha: SNR must be positive");
  if (!(delta > 0.0 && delta < 0.5))
    throw std::invalid_argument("compute_alpha: delta must lie in (0, 1/2)");
  if (n_p == 0) throw std::invalid_argument("compute_alpha: n_p must be positive");

  CovertBudget b;
  b.delta = delta;
  b.delta_re = 8.0 * delta * delta;
  b.n_p = n_p;
  b.snr_willie = snr_willie;
  const double raw = 2.0 / snr_willie * std::sqrt(b.delta_re / static_cast<double>(n_p));
  b.clipped = raw > 1.0;
  b.alpha_n = b.clipped ? 1.0 : raw;
  return b;
}

double predicted_covert_bits(const CovertBudget& budget, double c_bsc) {
  return budget.alpha_n * static_cast<double>(budget.n_p) * c_bsc;
}

SecretKey generate_secret(const CovertBudget& budget, std::uint64_t seed) {
  SecretKey key;
  key.seed = seed;
  key.t.resize(budget.n_p);
  Rng rng(seed);
  std::size_t n_t = 0;
  for (auto& b : key.t) {
    b = rng.bernoulli(budget.alpha_n) ? 1 : 0;
    n_t += b;
  }
  key.s.resize(n_t);
  for (auto& b : key.s) b = static_cast<std::uint8_t>(rng.next_u64() & 1);
  return key;
}

double secret_key_bits(const SecretKey& key, std::size_t n_p) {
  if (n_p == 0) throw std::invalid_argument("secret_key_bits: n_p must be positive");
  const double n_t = static_cast<double>(key.n_t());
  return n_t * std::log2(static_cast<double>(n_p)) + n_t;
}

std::vector<int> apply_one_time_pad(const std::vector<int>& code_bits,
                                    const std::vector<std::uint8_t>& pad) {
  if (code_bits.size() != pad.size())
    throw std::invalid_argument("apply_one_time_pad: length mismatch");
  std::vector<int> out(code_bits.size());
  for (std::size_t i = 0; i < code_bits.size(); ++i)
    out[i] = pad[i] ? -code_bits[i] : code_bits[i];
  return out;
}

std::size_t packet_sample_count(const PacketPlan& plan) {
  return preamble_length(plan.preamble) + (plan.n_p_on + plan.n_p_off) * plan.slot_len;
}

IqFrame build_packet(const PacketPlan& plan, const PulseShape& pulse) {
  if (plan.slot_len != pulse.slot_len)
    throw std::invalid_argument("build_packet: plan and pulse disagree on slot length");
  if (plan.key.t.size() != plan.n_p_on)
    throw std::invalid_argument("build_packet: key length differs from Alice-on slot count");
  const std::size_t n_t = plan.key.n_t();
  if (plan.message_bits.size() != n_t)
    throw std::invalid_argument("build_packet: message length differs from selected slot count");
  if (plan.require_pilot && n_t > 0 && plan.message_bits.front() != kPilotSymbol)
    throw std::invalid_argument("build_packet: first selected slot must carry the pilot symbol");
  for (int b : plan.message_bits)
    if (b != 1 && b != -1) throw std::invalid_argument("build_packet: symbols must be +-1");

  const std::vector<double> preamble =
      make_preamble_waveform(plan.preamble, plan.preamble_amplitude);
  const std::vector<int> tx = apply_one_time_pad(plan.message_bits, plan.key.s);

  IqFrame frame;
  frame.samples.assign(packet_sample_count(plan), {0.0, 0.0});
  for (std::size_t i = 0; i < preamble.size(); ++i) frame.samples[i] = {preamble[i], 0.0};

  const std::size_t on_start = preamble.size();
  std::size_t sym = 0;
  for (std::size_t i = 0; i < plan.n_p_on; ++i) {
    if (!plan.key.t[i]) continue;
    const double b = static_cast<double>(tx[sym++]);
    const std::size_t at = on_start + i * plan.slot_len;
    for (std::size_t k = 0; k < pulse.samples.size(); ++k)
      frame.samples[at + k] = {b * pulse.samples[k], 0.0};
  }
  // Alice-off segment stays zero.
  return frame;
}

void save_secret(const SecretKey& key, double alpha_n, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_secret: cannot open " + path);
  out << "covert-secret v1\n";
  out << "seed " << key.seed << "\n";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", alpha_n);
  out << "alpha_n " << buf << "\n";
  out << "n_p " << key.t.size() << "\n";
  out << "t_indices";
  for (std::size_t i = 0; i < key.t.size(); ++i)
    if (key.t[i]) out << ' ' << i;
  out << "\n";
  out << "s_bits";
  for (auto b : key.s) out << ' ' << static_cast<int>(b);
  out << "\n";
  if (!out) throw std::runtime_error("save_secret: write failed for " + path);
}

StoredSecret load_secret(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_secret: cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line != "covert-secret v1")
    throw std::runtime_error("load_secret: bad magic line in " + path);

  StoredSecret stored;
  std::size_t n_p = 0;
  std::vector<std::size_t> indices;
  bool have_seed = false, have_np = false;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "seed") {
      if (!(ls >> stored.key.seed)) throw std::runtime_error("load_secret: bad seed");
      have_seed = true;
    } else if (tag == "alpha_n") {
      if (!(ls >> stored.alpha_n)) throw std::runtime_error("load_secret: bad alpha_n");
    } else if (tag == "n_p") {
      if (!(ls >> n_p)) throw std::runtime_error("load_secret: bad n_p");
      have_np = true;
    } else if (tag == "t_indices") {
      std::size_t i;
      while (ls >> i) indices.push_back(i);
    } else if (tag == "s_bits") {
      int b;
      while (ls >> b) {
        if (b != 0 && b != 1) throw std::runtime_error("load_secret: pad bits must be 0/1");
        stored.key.s.push_back(static_cast<std::uint8_t>(b));
      }
    } else {
      throw std::runtime_error("load_secret: unknown field '" + tag + "'");
    }
  }
  if (!have_seed || !have_np) throw std::runtime_error("load_secret: missing fields");
  stored.key.t.assign(n_p, 0);
  for (std::size_t i : indices) {
    if (i >= n_p) throw std::runtime_error("load_secret: slot index out of range");
    stored.key.t[i] = 1;
  }
  if (stored.key.s.size() != indices.size())
    throw std::runtime_error("load_secret: pad length differs from selected slot count");
  return stored;
}

}  // namespace covert
