#include "covert/willie.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

namespace covert {

namespace {

double logaddexp(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double m = std::max(a, b);
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

}  // namespace

SnrEstimate estimate_snr(const IqFrame& frame, const PulseShape& pulse,
                         const SecretKey& known_key, const std::vector<int>& known_bits,
                         std::size_t segment_offset) {
  const std::size_t n_p = known_key.n_p();
  if (known_key.n_t() != known_bits.size())
    throw std::invalid_argument("estimate_snr: known bits differ from selected slot count");
  if (segment_offset + n_p * pulse.slot_len > frame.size())
    throw std::out_of_range("estimate_snr: frame too short for the slot map");
  if (known_bits.empty())
    throw std::invalid_argument("estimate_snr: no pulse-bearing slots, h inestimable");
  if (known_bits.size() == n_p)
    throw std::invalid_argument("estimate_snr: no empty slots, sigma inestimable");

  SnrEstimate est;
  std::complex<double> h_acc{0.0, 0.0};
  double noise_acc = 0.0;
  std::size_t sym = 0;
  const std::size_t n_s = pulse.slot_len;
  for (std::size_t i = 0; i < n_p; ++i) {
    const std::size_t at = segment_offset + i * n_s;
    if (known_key.t[i]) {
      const auto corr = matched_filter_correlate(frame, pulse, i, segment_offset);
      h_acc += static_cast<double>(known_bits[sym++]) * corr / pulse.norm_sq;
      ++est.n_pulse_slots_used;
    } else {
      // Empty slot: in-phase energy only, matching the per-quadrature noise
      // convention (E sum Re(w)^2 = n_s sigma^2).
      double e = 0.0;
      for (std::size_t k = 0; k < n_s; ++k) {
        const double re = frame.samples[at + k].real();
        e += re * re;
      }
      noise_acc += e / static_cast<double>(n_s);
      ++est.n_empty_slots_used;
    }
  }
  h_acc /= static_cast<double>(est.n_pulse_slots_used);
  est.h_sq_hat = std::norm(h_acc);
  est.sigma_sq_hat = noise_acc / static_cast<double>(est.n_empty_slots_used);
  est.snr_hat = est.h_sq_hat * pulse.norm_sq /
                std::max(est.sigma_sq_hat, std::numeric_limits<double>::min());
  return est;
}

WardenObservation slot_statistics(const IqFrame& frame, const PulseShape& pulse,
                                  std::size_t n_p, std::size_t segment_offset,
                                  Segment label) {
  if (segment_offset + n_p * pulse.slot_len > frame.size())
    throw std::out_of_range("slot_statistics: frame too short");
  WardenObservation obs;
  obs.segment_label = label;
  obs.n_p = n_p;
  obs.slot_stats.resize(n_p);
  const double inv_norm = 1.0 / std::sqrt(pulse.norm_sq);
  for (std::size_t i = 0; i < n_p; ++i)
    obs.slot_stats[i] =
        matched_filter_correlate(frame, pulse, i, segment_offset).real() * inv_norm;
  return obs;
}

double log_likelihood_ratio(const WardenObservation& obs, double alpha, double h,
                            double pulse_norm, double sigma_sq) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument("log_likelihood_ratio: alpha outside [0, 1]");
  if (!(sigma_sq > 0.0) || !(pulse_norm > 0.0) || !(h >= 0.0))
    throw std::invalid_argument("log_likelihood_ratio: bad parameters");

  const double a = h * pulse_norm;                    // pulse amplitude along c
  const double half_a2 = 0.5 * a * a / sigma_sq;
  const double log_quiet =
      alpha < 1.0 ? std::log1p(-alpha) : -std::numeric_limits<double>::infinity();
  const double log_pulse = std::log(0.5 * alpha);

  double llr = 0.0;
  for (double v : obs.slot_stats) {
    if (!std::isfinite(v))
      throw std::invalid_argument("log_likelihood_ratio: non-finite slot statistic");
    if (alpha == 0.0) continue;
    const double av = a * v / sigma_sq;
    const double pulse_term = log_pulse + logaddexp(av - half_a2, -av - half_a2);
    llr += logaddexp(log_quiet, pulse_term);
  }
  return llr;
}

Hypothesis detect(const WardenObservation& obs, double alpha, double h,
                  double pulse_norm, double sigma_sq) {
  return log_likelihood_ratio(obs, alpha, h, pulse_norm, sigma_sq) >= 0.0 ? Hypothesis::h1
                                                                          : Hypothesis::h0;
}

DetectionError empirical_error_probability(
    const std::vector<std::pair<WardenObservation, WardenObservation>>& on_off_pairs,
    double alpha, double h, double pulse_norm, double sigma_sq) {
  if (on_off_pairs.empty())
    throw std::invalid_argument("empirical_error_probability: no paired trials");

  std::size_t errors = 0;
  for (const auto& [on, off] : on_off_pairs) {
    if (detect(on, alpha, h, pulse_norm, sigma_sq) == Hypothesis::h0) ++errors;  // miss
    if (detect(off, alpha, h, pulse_norm, sigma_sq) == Hypothesis::h1) ++errors; // false alarm
  }
  DetectionError e;
  e.decisions = 2 * on_off_pairs.size();
  e.p_e = static_cast<double>(errors) / static_cast<double>(e.decisions);
  e.ci = wilson_interval(errors, e.decisions);
  return e;
}

}  // namespace covert
