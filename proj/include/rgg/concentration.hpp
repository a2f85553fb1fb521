#pragma once

#include <utility>
#include <vector>

#include "rgg/rng.hpp"
#include "rgg/sphere.hpp"

namespace rgg {

// Weighted particle ensemble approximating a density on the sphere.
struct ParticleDistribution {
  Eigen::MatrixXd particles;  // one unit row per particle
  Eigen::VectorXd weights;    // nonnegative, sum 1 within 1e-12

  int count() const { return int(particles.rows()); }
  int dim() const { return int(particles.cols()); }
  void validate() const;

  static ParticleDistribution uniform(int count, int d, RngStream& rng);
  static ParticleDistribution point_mass(const Vec& v, int count);
};

// X(z): weighted fraction of particles with <x, z> > tau.
double cap_fraction(const ParticleDistribution& nu, const Vec& z, double tau);

struct DeviationProfileEstimate {
  double epsilon;
  double dev_estimate;  // Pr over uniform z of |X(z) - p| > p * epsilon
  long z_samples;
  double stderr_;
};

DeviationProfileEstimate deviation_profile(const ParticleDistribution& nu,
                                           double tau, double eps, long z_samples,
                                           const RngStream& rng);

// One step of the cap-convolution chain: every particle moves to a uniform
// point of its own cap; weights are untouched.
ParticleDistribution cap_convolution_push(const ParticleDistribution& nu,
                                          double tau, RngStream& rng);

// Empirical 0.99-quantile over uniform z of |X(z) - p| / p; a measurable
// proxy for how far the ensemble sits from the uniform law.
double cap_discrepancy(const ParticleDistribution& nu, double tau, long z_samples,
                       const RngStream& rng);

// Unbiased uniform-sphere Monte Carlo estimate of the measure of an
// intersection of caps / anti-caps, with binomial standard error.
std::pair<double, double> intersection_measure_mc(const std::vector<CapSpec>& caps,
                                                  long mc_samples, RngStream& rng);

struct PrefixMeasures {
  std::vector<double> mean;     // index = prefix length, 0..k; entry 0 is 1
  std::vector<double> stderr_;  // aligned; entry 0 is exact
};

// Unbiased per-prefix estimates of rho(caps[0] AND ... AND caps[t-1]) by
// sequential conditioning on latitudes: each path walks the constraints in
// order, multiplies the conditional cap (or anti-cap) measure of the next
// one given the latitudes fixed so far, and resamples the latitude from
// the conditioned side. Usable at depths far beyond what uniform rejection
// can reach, since the product tracks the measure multiplicatively.
PrefixMeasures sequential_intersection_measures(const std::vector<CapSpec>& caps,
                                                long paths, const RngStream& rng);

struct MartingaleTrace {
  std::vector<double> ratios;  // R_0 .. R_k (R_0 = 1)
  int j = 0;
  int k = 0;
  double p = 0.0;
  std::vector<double> per_step_stderr;  // aligned with ratios
  bool truncated = false;               // estimate hit exact zero mid-trace
  int truncated_at = -1;
};

// Draws k cap centers (first j caps, rest anti-caps) and estimates the
// normalized intersection-measure sequence R_t at every prefix. Prefix
// measures are estimated by sequential conditioning on latitudes, an
// unbiased product-of-conditional-cap-measures estimator that stays usable
// where the raw measure (about p^j (1-p)^(k-j)) is far below any feasible
// uniform-rejection budget. mc_samples counts conditioning paths.
MartingaleTrace martingale_ratio_trace(int k, int j, int d, double p,
                                       long mc_samples, const RngStream& rng);

struct AnticapSummary {
  int m = 0;
  long trials = 0;
  double mean = 0.0;   // of rho(A) / (1-p)^m across center draws
  double stddev = 0.0;
  double q05 = 0.0, q50 = 0.0, q95 = 0.0;
  double mean_stderr = 0.0;
  std::vector<double> ratios;
};

// Distribution of the normalized anti-cap intersection measure across
// independent center draws (same sequential estimator as the traces).
AnticapSummary anticap_concentration_experiment(int m, int d, double p, long trials,
                                                long mc_samples, const RngStream& rng);

// Least-squares slope of log(y) against log(x); pairs with y <= 0 are
// rejected. Used for the d-scaling checks.
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace rgg
