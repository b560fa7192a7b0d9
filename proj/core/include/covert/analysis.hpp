#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace covert {

// h2(p) in bits, with h2(0) = h2(1) = 0. Throws for p outside [0, 1].
double binary_entropy(double p);

// BSC capacity 1 - h2(p).
double bsc_capacity(double p);

// Gaussian tail Q(x) = P(N(0,1) > x).
double gaussian_tail(double x);

// Fourth-order expansion of the warden's total relative entropy:
// n_p alpha^2 (h ||c||)^4 / (4 sigma^4).
double relative_entropy_taylor(double alpha, double h, double pulse_norm,
                               double sigma_sq, std::size_t n_p);

struct QuadratureSpec {
  std::size_t initial_intervals = 256;  // Simpson panels on the first pass
  std::size_t max_doublings = 20;
  double rel_tol = 1e-6;
  double tail_sigmas = 10.0;  // integrate over [-(A + k sigma), A + k sigma]
};

// Exact total relative entropy between the warden's per-slot densities,
// reduced to the 1-D sufficient statistic along the pulse direction:
// n_p * D( N(0,1) || (1-a) N(0,1) + a/2 N(r,1) + a/2 N(-r,1) ), with
// r = amplitude_ratio = h ||c|| / sigma. Adaptive interval doubling; throws
// if the refinement fails to converge to rel_tol.
double relative_entropy_quadrature(double alpha, double amplitude_ratio,
                                   std::size_t n_p, const QuadratureSpec& grid = {});

// True iff the fourth-order term upper-bounds the exact relative entropy for
// every pulse amplitude in [0, amplitude_ratio]. This is the numerical
// analogue of checking the sign of the expansion's remainder over the whole
// interval; it holds for large alpha but fails in the sparse regime, where
// the positive higher-order amplitude terms outweigh the negative alpha^3
// term (see tests for the measured crossover).
bool verify_taylor_upper_bound(double amplitude_ratio, double alpha,
                               const QuadratureSpec& grid = {});

// max(0, 1/2 - sqrt(d) / (2 sqrt(2))). Throws for d < 0.
double pinsker_lower_bound(double d);

struct CovertnessAssessment {
  double d_taylor = 0.0;
  double d_quadrature = 0.0;
  double pe_lower_taylor = 0.0;
  double pe_lower_quadrature = 0.0;
  bool taylor_is_upper_bound = false;
};

// Bundles both relative-entropy routes and their Pinsker bounds for one
// operating point (alpha, warden SNR in linear units, n_p slots).
CovertnessAssessment assess_covertness(double alpha, double snr, std::size_t n_p,
                                       const QuadratureSpec& grid = {});

struct PowerLawFit {
  double slope = 0.0;      // free least-squares slope of log b vs log n
  double intercept = 0.0;  // free-fit intercept (natural log)
  double r_sq = 0.0;       // R^2 of the free fit
  double constrained_intercept = 0.0;  // intercept of the slope-1/2 fit
  double constrained_r_sq = 0.0;       // R^2 of the slope-1/2 fit
};

// Log-log regression of throughput-vs-channel-uses points. Requires >= 3
// points with positive coordinates.
PowerLawFit fit_sqrt_law(const std::vector<std::pair<double, double>>& points);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// Wilson score interval for a binomial proportion (z defaults to 95%).
Interval wilson_interval(std::size_t successes, std::size_t total, double z = 1.959964);

struct MeanCi {
  double mean = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

// Sample mean with a normal-approximation confidence interval.
MeanCi mean_ci(const std::vector<double>& xs, double z = 1.959964);

}  // namespace covert
