#include "covert/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace covert {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014327;

double logaddexp(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double m = std::max(a, b);
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

// log of the per-slot density ratio p1(v)/p0(v) for the standardized
// statistic v: log[(1-a) + (a/2) e^{rv - r^2/2} + (a/2) e^{-rv - r^2/2}].
double log_density_ratio(double v, double alpha, double r) {
  const double ea = r * v - 0.5 * r * r;
  const double eb = -r * v - 0.5 * r * r;
  const double log_quiet =
      alpha < 1.0 ? std::log1p(-alpha) : -std::numeric_limits<double>::infinity();
  const double log_pulse = std::log(0.5 * alpha);
  return logaddexp(log_quiet, log_pulse + logaddexp(ea, eb));
}

// Integrand of D(P0 || P1): -phi(v) log(p1/p0).
double kl_integrand(double v, double alpha, double r) {
  const double phi0 = kInvSqrt2Pi * std::exp(-0.5 * v * v);
  return -phi0 * log_density_ratio(v, alpha, r);
}

double per_slot_relative_entropy(double alpha, double r, const QuadratureSpec& grid) {
  if (alpha == 0.0 || r == 0.0) return 0.0;

  const double lim = r + grid.tail_sigmas;
  std::size_t n = std::max<std::size_t>(grid.initial_intervals, 8);
  if (n % 2) ++n;

  auto simpson = [&](std::size_t panels) {
    const double h = 2.0 * lim / static_cast<double>(panels);
    double acc = kl_integrand(-lim, alpha, r) + kl_integrand(lim, alpha, r);
    for (std::size_t i = 1; i < panels; ++i) {
      const double v = -lim + h * static_cast<double>(i);
      acc += kl_integrand(v, alpha, r) * ((i % 2) ? 4.0 : 2.0);
    }
    return acc * h / 3.0;
  };

  double prev = simpson(n);
  for (std::size_t k = 0; k < grid.max_doublings; ++k) {
    n *= 2;
    const double cur = simpson(n);
    const double scale = std::max({std::abs(cur), std::abs(prev), 1e-300});
    if (std::abs(cur - prev) <= grid.rel_tol * scale) return cur;
    prev = cur;
  }
  throw std::runtime_error("relative_entropy_quadrature: grid refinement did not converge");
}

}  // namespace

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binary_entropy: p outside [0, 1]");
  if (p == 0.0 || p == 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double bsc_capacity(double p) { return 1.0 - binary_entropy(p); }

double gaussian_tail(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double relative_entropy_taylor(double alpha, double h, double pulse_norm,
                               double sigma_sq, std::size_t n_p) {
  if (sigma_sq <= 0.0)
    throw std::invalid_argument("relative_entropy_taylor: sigma_sq must be positive");
  const double a2 = alpha * alpha;
  const double hc = h * pulse_norm;
  const double hc2 = hc * hc;
  return static_cast<double>(n_p) * a2 * hc2 * hc2 / (4.0 * sigma_sq * sigma_sq);
}

double relative_entropy_quadrature(double alpha, double amplitude_ratio,
                                   std::size_t n_p, const QuadratureSpec& grid) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument("relative_entropy_quadrature: alpha outside [0, 1]");
  if (!(amplitude_ratio >= 0.0) || !std::isfinite(amplitude_ratio))
    throw std::invalid_argument("relative_entropy_quadrature: bad amplitude ratio");
  return static_cast<double>(n_p) * per_slot_relative_entropy(alpha, amplitude_ratio, grid);
}

bool verify_taylor_upper_bound(double amplitude_ratio, double alpha,
                               const QuadratureSpec& grid) {
  if (amplitude_ratio < 0.0)
    throw std::invalid_argument("verify_taylor_upper_bound: negative amplitude ratio");
  constexpr std::size_t kSteps = 32;
  for (std::size_t i = 1; i <= kSteps; ++i) {
    const double xi = amplitude_ratio * static_cast<double>(i) / static_cast<double>(kSteps);
    const double exact = per_slot_relative_entropy(alpha, xi, grid);
    const double taylor = alpha * alpha * xi * xi * xi * xi / 4.0;
    if (exact > taylor * (1.0 + 1e-6) + 1e-300) return false;
  }
  return true;
}

double pinsker_lower_bound(double d) {
  if (d < 0.0) throw std::invalid_argument("pinsker_lower_bound: negative relative entropy");
  return std::max(0.0, 0.5 - std::sqrt(d) / (2.0 * std::numbers::sqrt2));
}

CovertnessAssessment assess_covertness(double alpha, double snr, std::size_t n_p,
                                       const QuadratureSpec& grid) {
  if (!(snr > 0.0)) throw std::invalid_argument("assess_covertness: SNR must be positive");
  CovertnessAssessment a;
  const double r = std::sqrt(snr);
  // With the statistic standardized to unit noise, h ||c|| / sigma = sqrt(SNR).
  a.d_taylor = relative_entropy_taylor(alpha, r, 1.0, 1.0, n_p);
  a.d_quadrature = relative_entropy_quadrature(alpha, r, n_p, grid);
  a.pe_lower_taylor = pinsker_lower_bound(a.d_taylor);
  a.pe_lower_quadrature = pinsker_lower_bound(a.d_quadrature);
  a.taylor_is_upper_bound = a.d_quadrature <= a.d_taylor * (1.0 + 1e-6);
  return a;
}

PowerLawFit fit_sqrt_law(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw std::invalid_argument("fit_sqrt_law: need at least 3 points");
  std::vector<double> x, y;
  x.reserve(points.size());
  y.reserve(points.size());
  for (const auto& [n, b] : points) {
    if (!(n > 0.0 && b > 0.0))
      throw std::invalid_argument("fit_sqrt_law: coordinates must be positive");
    x.push_back(std::log(n));
    y.push_back(std::log(b));
  }
  const double m = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_sqrt_law: degenerate abscissa");

  PowerLawFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ss_res += r * r;
  }
  fit.r_sq = syy == 0.0 ? 1.0 : 1.0 - ss_res / syy;

  fit.constrained_intercept = my - 0.5 * mx;
  double ss_res_c = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.constrained_intercept + 0.5 * x[i]);
    ss_res_c += r * r;
  }
  fit.constrained_r_sq = syy == 0.0 ? 1.0 : 1.0 - ss_res_c / syy;
  return fit;
}

Interval wilson_interval(std::size_t successes, std::size_t total, double z) {
  if (total == 0) return {0.0, 1.0};
  if (successes > total) throw std::invalid_argument("wilson_interval: successes > total");
  const double n = static_cast<double>(total);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

MeanCi mean_ci(const std::vector<double>& xs, double z) {
  MeanCi out;
  if (xs.empty()) {
    out.mean = out.lo = out.hi = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  double s = 0.0;
  for (double v : xs) s += v;
  out.mean = s / static_cast<double>(xs.size());
  if (xs.size() == 1) {
    out.lo = out.hi = out.mean;
    return out;
  }
  double ss = 0.0;
  for (double v : xs) ss += (v - out.mean) * (v - out.mean);
  const double se = std::sqrt(ss / static_cast<double>(xs.size() - 1) /
                              static_cast<double>(xs.size()));
  out.lo = out.mean - z * se;
  out.hi = out.mean + z * se;
  return out;
}

}  // namespace covert
