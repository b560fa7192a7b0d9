#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "covert/analysis.hpp"
#include "covert/dsp.hpp"
#include "covert/protocol.hpp"

namespace covert {

enum class Segment { alice_on, alice_off };
enum class Hypothesis { h0, h1 };

// Per-slot sufficient statistics Re<c, w_slot> / ||c||. Under a zero warden
// phase this discards only components common to both hypotheses.
struct WardenObservation {
  std::vector<double> slot_stats;
  Segment segment_label = Segment::alice_off;
  std::size_t n_p = 0;
};

struct SnrEstimate {
  double h_sq_hat = 0.0;
  double sigma_sq_hat = 0.0;
  double snr_hat = 0.0;  // linear
  std::size_t n_pulse_slots_used = 0;
  std::size_t n_empty_slots_used = 0;
};

// Experimenter-side SNR characterization of the warden's channel from slots
// with known contents: h e^{j theta} from averaging x <c, w> / ||c||^2 over
// pulse-bearing slots, sigma^2 from the in-phase energy of empty slots.
// known_bits are the transmitted symbols of the selected slots, in slot
// order. Throws if either slot class is empty.
SnrEstimate estimate_snr(const IqFrame& frame, const PulseShape& pulse,
                         const SecretKey& known_key, const std::vector<int>& known_bits,
                         std::size_t segment_offset = 0);

WardenObservation slot_statistics(const IqFrame& frame, const PulseShape& pulse,
                                  std::size_t n_p, std::size_t segment_offset,
                                  Segment label);

// Exact log-likelihood ratio (natural log) of H1 vs H0 for the observation:
// sum_i log[(1-a) + (a/2) e^{-A^2/(2s^2)} (e^{A v_i / s^2} + e^{-A v_i / s^2})]
// with A = h * pulse_norm.
double log_likelihood_ratio(const WardenObservation& obs, double alpha, double h,
                            double pulse_norm, double sigma_sq);

// H1 iff the LLR is >= 0 (equal priors; ties resolve to H1).
Hypothesis detect(const WardenObservation& obs, double alpha, double h,
                  double pulse_norm, double sigma_sq);

struct DetectionError {
  double p_e = 0.0;
  Interval ci;  // Wilson 95%
  std::size_t decisions = 0;
};

// Mean of false-alarm and miss rates over paired (on, off) observations;
// each pair contributes one decision under each hypothesis.
DetectionError empirical_error_probability(
    const std::vector<std::pair<WardenObservation, WardenObservation>>& on_off_pairs,
    double alpha, double h, double pulse_norm, double sigma_sq);

}  // namespace covert
