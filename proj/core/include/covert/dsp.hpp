#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace covert {

// Real pulse-shape vector c plus the slot geometry it lives in. The samples
// are the nonzero taps at the start of a slot of slot_len channel uses; the
// remainder of the slot is zero padding.
struct PulseShape {
  std::vector<double> samples;
  std::size_t slot_len = 0;
  double norm_sq = 0.0;
};

// Complex baseband samples. sample_rate is informational only.
struct IqFrame {
  std::vector<std::complex<double>> samples;
  double sample_rate = 0.0;

  std::size_t size() const { return samples.size(); }
};

struct PreambleSpec {
  std::vector<int> barker_bits;  // 13 chips, +-1
  std::size_t repetitions = 5;
  std::size_t rrc_span_symbols = 12;
  double rrc_rolloff = 0.35;
  std::size_t samples_per_symbol = 76;
};

struct PreambleLocation {
  std::size_t offset = 0;
  double peak_score = 0.0;  // peak correlation magnitude / preamble energy
};

// Normalized peak score above which a preamble is declared present.
// Noise-only frames score well below 0.2; a noiseless hit scores 1.
inline constexpr double kPreambleDetectionThreshold = 0.5;

// The standard 13-chip Barker sequence.
std::vector<int> barker13();

PreambleSpec default_preamble_spec();

// Samples occupied by the shaped preamble: repetitions*13*sps plus the
// filter transient, counted once.
std::size_t preamble_length(const PreambleSpec& spec);

// Truncated sampled Gaussian, peak `amplitude`, centered at (filter_len-1)/2.
// Throws std::invalid_argument if the pulse would not fit in the slot.
PulseShape make_gaussian_pulse(std::size_t filter_len, double sigma,
                               std::size_t slot_len, double amplitude);

// Unit-energy root-raised-cosine impulse response, span_symbols*sps + 1 taps.
// The removable singularities at t = 0 and |t| = Ts/(4*rolloff) use their
// analytic limits.
std::vector<double> make_rrc_filter(std::size_t span_symbols,
                                    std::size_t samples_per_symbol,
                                    double rolloff);

// Full preamble waveform: Barker chips repeated, impulse train at the symbol
// rate, convolved with the RRC filter and scaled by `amplitude`.
std::vector<double> make_preamble_waveform(const PreambleSpec& spec, double amplitude);

// One slot per bit: slot i holds bits[i]*pulse followed by zero padding.
IqFrame bpsk_modulate_slots(const std::vector<int>& bits, const PulseShape& pulse);

// Inner product <c, y_slot> = sum conj(c_k) y_k over slot `slot_index`
// (slots counted from `segment_offset`). Linear in the frame argument.
std::complex<double> matched_filter_correlate(const IqFrame& frame,
                                              const PulseShape& pulse,
                                              std::size_t slot_index,
                                              std::size_t segment_offset = 0);

// Lag maximizing the sliding cross-correlation magnitude against a known
// real waveform, searched over lags [0, max_lag]; max_lag = 0 scans every
// admissible lag. peak_score is the peak magnitude divided by the waveform
// energy, so a noiseless exact hit scores 1.
PreambleLocation locate_preamble(const IqFrame& frame,
                                 const std::vector<double>& preamble_waveform,
                                 std::size_t max_lag = 0);

double frame_energy(const IqFrame& frame);

}  // namespace covert
