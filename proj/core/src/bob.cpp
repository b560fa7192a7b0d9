#include "covert/bob.hpp"

#include <cmath>
#include <stdexcept>

#include "covert/analysis.hpp"

namespace covert {

std::complex<double> pilot_statistic(const IqFrame& frame, const PulseShape& pulse,
                                     std::size_t slot_index, int pilot_bit,
                                     std::size_t segment_offset) {
  if (pilot_bit != 1 && pilot_bit != -1)
    throw std::invalid_argument("pilot_statistic: pilot bit must be +-1");
  return static_cast<double>(pilot_bit) *
         matched_filter_correlate(frame, pulse, slot_index, segment_offset);
}

double estimate_phase(const IqFrame& frame, const PulseShape& pulse,
                      const std::vector<std::size_t>& pilot_slots,
                      const std::vector<int>& pilot_bits,
                      std::size_t segment_offset) {
  if (pilot_slots.empty()) throw std::invalid_argument("estimate_phase: no pilot slots");
  if (pilot_slots.size() != pilot_bits.size())
    throw std::invalid_argument("estimate_phase: slots and bits differ in length");

  double p_i = 0.0, p_q = 0.0;
  for (std::size_t k = 0; k < pilot_slots.size(); ++k) {
    const auto stat =
        pilot_statistic(frame, pulse, pilot_slots[k], pilot_bits[k], segment_offset);
    p_i += stat.real();
    p_q += stat.imag();
  }
  return std::atan2(p_q, p_i);
}

std::vector<int> demodulate(const IqFrame& frame, const PulseShape& pulse,
                            const SecretKey& key, double theta_hat,
                            std::size_t segment_offset) {
  if (segment_offset + key.n_p() * pulse.slot_len > frame.size())
    throw std::out_of_range("demodulate: frame too short for the slot map");

  const std::complex<double> derotate{std::cos(theta_hat), -std::sin(theta_hat)};
  std::vector<int> decisions;
  decisions.reserve(key.s.size());
  for (std::size_t i = 0; i < key.n_p(); ++i) {
    if (!key.t[i]) continue;
    const auto corr = matched_filter_correlate(frame, pulse, i, segment_offset);
    decisions.push_back((derotate * corr).real() >= 0.0 ? 1 : -1);
  }
  return decisions;
}

BobReport compile_report(const std::vector<int>& decoded, const std::vector<int>& truth,
                         std::size_t n_t) {
  if (decoded.size() != truth.size())
    throw std::invalid_argument("compile_report: decoded/truth length mismatch");
  if (decoded.size() > n_t)
    throw std::invalid_argument("compile_report: more data bits than selected slots");

  BobReport report;
  report.decoded_bits = decoded;
  report.n_t = n_t;
  for (std::size_t i = 0; i < decoded.size(); ++i)
    report.bit_errors += (decoded[i] != truth[i]);

  const std::size_t data_bits = decoded.size();  // n_t minus pilot slots
  report.p_e_bsc_hat =
      static_cast<double>(report.bit_errors) / static_cast<double>(std::max<std::size_t>(data_bits, 1));
  report.c_bsc_hat = bsc_capacity(report.p_e_bsc_hat);
  report.b_bsc_hat = static_cast<double>(n_t) * report.c_bsc_hat;
  report.degenerate_inversion = data_bits > 0 && report.bit_errors == data_bits;
  return report;
}

}  // namespace covert
