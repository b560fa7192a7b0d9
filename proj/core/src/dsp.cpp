#include "covert/dsp.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace covert {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

std::vector<int> barker13() {
  return {+1, +1, +1, +1, +1, -1, -1, +1, +1, -1, +1, -1, +1};
}

PreambleSpec default_preamble_spec() {
  PreambleSpec spec;
  spec.barker_bits = barker13();
  spec.repetitions = 5;
  spec.rrc_span_symbols = 12;
  spec.rrc_rolloff = 0.35;
  spec.samples_per_symbol = 76;
  return spec;
}

std::size_t preamble_length(const PreambleSpec& spec) {
  const std::size_t n_symbols = spec.repetitions * spec.barker_bits.size();
  const std::size_t filter_len = spec.rrc_span_symbols * spec.samples_per_symbol + 1;
  return n_symbols * spec.samples_per_symbol + (filter_len - 1);
}

PulseShape make_gaussian_pulse(std::size_t filter_len, double sigma,
                               std::size_t slot_len, double amplitude) {
  if (filter_len == 0 || slot_len == 0)
    throw std::invalid_argument("make_gaussian_pulse: zero length");
  if (filter_len > slot_len)
    throw std::invalid_argument("make_gaussian_pulse: pulse would leak into the next slot");
  if (sigma <= 0.0 || amplitude <= 0.0)
    throw std::invalid_argument("make_gaussian_pulse: sigma and amplitude must be positive");

  PulseShape pulse;
  pulse.slot_len = slot_len;
  pulse.samples.resize(filter_len);
  const double center = (static_cast<double>(filter_len) - 1.0) / 2.0;
  double e = 0.0;
  for (std::size_t k = 0; k < filter_len; ++k) {
    const double d = static_cast<double>(k) - center;
    const double v = amplitude * std::exp(-d * d / (2.0 * sigma * sigma));
    pulse.samples[k] = v;
    e += v * v;
  }
  pulse.norm_sq = e;
  return pulse;
}

std::vector<double> make_rrc_filter(std::size_t span_symbols,
                                    std::size_t samples_per_symbol,
                                    double rolloff) {
  if (span_symbols == 0 || samples_per_symbol == 0)
    throw std::invalid_argument("make_rrc_filter: zero span or rate");
  if (rolloff <= 0.0 || rolloff > 1.0)
    throw std::invalid_argument("make_rrc_filter: rolloff must be in (0, 1]");

  const std::size_t n = span_symbols * samples_per_symbol + 1;
  std::vector<double> taps(n);
  const double mid = (static_cast<double>(n) - 1.0) / 2.0;
  const double b = rolloff;
  for (std::size_t i = 0; i < n; ++i) {
    // Time in symbol periods, symmetric about the center tap.
    const double t = (static_cast<double>(i) - mid) / static_cast<double>(samples_per_symbol);
    double v;
    if (std::abs(t) < 1e-12) {
      v = 1.0 + b * (4.0 / kPi - 1.0);
    } else if (std::abs(std::abs(t) - 1.0 / (4.0 * b)) < 1e-9) {
      v = (b / std::sqrt(2.0)) *
          ((1.0 + 2.0 / kPi) * std::sin(kPi / (4.0 * b)) +
           (1.0 - 2.0 / kPi) * std::cos(kPi / (4.0 * b)));
    } else {
      const double num =
          std::sin(kPi * t * (1.0 - b)) + 4.0 * b * t * std::cos(kPi * t * (1.0 + b));
      const double den = kPi * t * (1.0 - 16.0 * b * b * t * t);
      v = num / den;
    }
    taps[i] = v;
  }
  double e = 0.0;
  for (double v : taps) e += v * v;
  const double scale = 1.0 / std::sqrt(e);
  for (double& v : taps) v *= scale;
  return taps;
}

std::vector<double> make_preamble_waveform(const PreambleSpec& spec, double amplitude) {
  if (spec.barker_bits.empty() || spec.repetitions == 0)
    throw std::invalid_argument("make_preamble_waveform: empty preamble");
  const std::vector<double> rrc =
      make_rrc_filter(spec.rrc_span_symbols, spec.samples_per_symbol, spec.rrc_rolloff);

  const std::size_t n_symbols = spec.repetitions * spec.barker_bits.size();
  const std::size_t train_len = n_symbols * spec.samples_per_symbol;
  std::vector<double> wave(train_len + rrc.size() - 1, 0.0);
  // Sparse impulse train convolved with the filter: one shifted copy of the
  // taps per symbol.
  for (std::size_t s = 0; s < n_symbols; ++s) {
    const double bit =
        amplitude * static_cast<double>(spec.barker_bits[s % spec.barker_bits.size()]);
    const std::size_t at = s * spec.samples_per_symbol;
    for (std::size_t k = 0; k < rrc.size(); ++k) wave[at + k] += bit * rrc[k];
  }
  return wave;
}

IqFrame bpsk_modulate_slots(const std::vector<int>& bits, const PulseShape& pulse) {
  if (bits.empty()) throw std::invalid_argument("bpsk_modulate_slots: no bits");
  if (pulse.slot_len == 0 || pulse.samples.empty() || pulse.samples.size() > pulse.slot_len)
    throw std::invalid_argument("bpsk_modulate_slots: malformed pulse");

  IqFrame frame;
  frame.samples.assign(bits.size() * pulse.slot_len, {0.0, 0.0});
  for (std::size_t i = 0; i < bits.size(); ++i) {
    const double b = static_cast<double>(bits[i]);
    const std::size_t at = i * pulse.slot_len;
    for (std::size_t k = 0; k < pulse.samples.size(); ++k)
      frame.samples[at + k] = {b * pulse.samples[k], 0.0};
  }
  return frame;
}

std::complex<double> matched_filter_correlate(const IqFrame& frame,
                                              const PulseShape& pulse,
                                              std::size_t slot_index,
                                              std::size_t segment_offset) {
  const std::size_t start = segment_offset + slot_index * pulse.slot_len;
  if (start + pulse.slot_len > frame.size())
    throw std::out_of_range("matched_filter_correlate: slot outside frame");
  std::complex<double> acc{0.0, 0.0};
  const std::complex<double>* y = frame.samples.data() + start;
  for (std::size_t k = 0; k < pulse.samples.size(); ++k) acc += pulse.samples[k] * y[k];
  return acc;
}

PreambleLocation locate_preamble(const IqFrame& frame,
                                 const std::vector<double>& preamble_waveform,
                                 std::size_t max_lag) {
  const std::size_t m = preamble_waveform.size();
  if (m == 0) throw std::invalid_argument("locate_preamble: empty preamble");
  if (frame.size() <= m)
    throw std::invalid_argument("locate_preamble: frame shorter than preamble");

  double energy = 0.0;
  for (double v : preamble_waveform) energy += v * v;

  const std::size_t last_lag_all = frame.size() - m;
  const std::size_t last_lag = (max_lag == 0) ? last_lag_all : std::min(max_lag, last_lag_all);

  PreambleLocation best;
  double best_mag_sq = -1.0;
  const std::complex<double>* y = frame.samples.data();
  for (std::size_t lag = 0; lag <= last_lag; ++lag) {
    double re = 0.0, im = 0.0;
    const std::complex<double>* w = y + lag;
    for (std::size_t k = 0; k < m; ++k) {
      re += preamble_waveform[k] * w[k].real();
      im += preamble_waveform[k] * w[k].imag();
    }
    const double mag_sq = re * re + im * im;
    if (mag_sq > best_mag_sq) {
      best_mag_sq = mag_sq;
      best.offset = lag;
    }
  }
  best.peak_score = std::sqrt(best_mag_sq) / energy;
  return best;
}

double frame_energy(const IqFrame& frame) {
  double e = 0.0;
  for (const auto& s : frame.samples) e += std::norm(s);
  return e;
}

}  // namespace covert
