#pragma once

#include <cmath>
#include <cstdint>

#include "covert/dsp.hpp"

namespace covert {

// Static complex AWGN link: amplitude path loss h, carrier-phase offset
// theta, and circularly-symmetric noise. sigma_sq is the noise variance per
// quadrature per complex sample; every formula in this library uses that
// convention.
struct ChannelParams {
  double h = 1.0;
  double theta = 0.0;
  double sigma_sq = 1.0;
  std::uint64_t seed = 0;
};

// output[i] = h e^{j theta} input[i] + z[i], with z[i] complex Gaussian,
// independent real/imaginary parts of variance sigma_sq. Deterministic
// given params.seed.
IqFrame propagate(const IqFrame& input, const ChannelParams& params);

// Received SNR of one pulse through this link: h^2 ||c||^2 / sigma_sq.
double snr_of(const ChannelParams& params, const PulseShape& pulse);

inline double linear_to_db(double x) { return 10.0 * std::log10(x); }
inline double db_to_linear(double x) { return std::pow(10.0, x / 10.0); }

}  // namespace covert
