#include "covert/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "covert/rng.hpp"

namespace covert {

IqFrame propagate(const IqFrame& input, const ChannelParams& params) {
  if (!(params.sigma_sq >= 0.0) || !std::isfinite(params.h))
    throw std::invalid_argument("propagate: bad channel parameters");

  IqFrame out;
  out.sample_rate = input.sample_rate;
  out.samples.resize(input.size());

  const std::complex<double> gain =
      params.h * std::complex<double>(std::cos(params.theta), std::sin(params.theta));
  const double sd = std::sqrt(params.sigma_sq);

  Rng rng(params.seed);
  const std::complex<double>* in = input.samples.data();
  std::complex<double>* dst = out.samples.data();
  for (std::size_t i = 0; i < input.size(); ++i) {
    const auto [zr, zi] = rng.normal_pair();
    dst[i] = gain * in[i] + std::complex<double>(sd * zr, sd * zi);
  }
  return out;
}

double snr_of(const ChannelParams& params, const PulseShape& pulse) {
  if (params.sigma_sq <= 0.0) throw std::invalid_argument("snr_of: sigma_sq must be positive");
  return params.h * params.h * pulse.norm_sq / params.sigma_sq;
}

}  // namespace covert
