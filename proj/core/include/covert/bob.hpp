#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "covert/dsp.hpp"
#include "covert/protocol.hpp"

namespace covert {

struct BobReport {
  std::vector<int> decoded_bits;  // data decisions, pilot excluded
  std::size_t bit_errors = 0;
  std::size_t n_t = 0;
  double p_e_bsc_hat = 0.0;
  double c_bsc_hat = 0.0;
  double b_bsc_hat = 0.0;
  double theta_hat = 0.0;
  bool degenerate_inversion = false;  // every data bit wrong (sign flip)
};

// Per-pilot statistic x <c, y_p(x)>; its mean is h ||c||^2 e^{j theta}.
std::complex<double> pilot_statistic(const IqFrame& frame, const PulseShape& pulse,
                                     std::size_t slot_index, int pilot_bit,
                                     std::size_t segment_offset = 0);

// Averages the pilot statistics and returns atan2(mean Q, mean I). Throws on
// an empty pilot set or mismatched lengths.
double estimate_phase(const IqFrame& frame, const PulseShape& pulse,
                      const std::vector<std::size_t>& pilot_slots,
                      const std::vector<int>& pilot_bits,
                      std::size_t segment_offset = 0);

// Hard decisions on the selected slots only: +1 iff
// Re(e^{-j theta_hat} <c, y_slot>) >= 0. Returns one symbol per selected
// slot in slot order; unselected slots are never read.
std::vector<int> demodulate(const IqFrame& frame, const PulseShape& pulse,
                            const SecretKey& key, double theta_hat,
                            std::size_t segment_offset);

// BSC statistics from data decisions vs transmitted truth. decoded carries
// the non-pilot bits, so pilots = n_t - decoded.size().
BobReport compile_report(const std::vector<int>& decoded, const std::vector<int>& truth,
                         std::size_t n_t);

}  // namespace covert
