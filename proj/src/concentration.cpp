#include "rgg/concentration.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rgg/gram.hpp"

namespace rgg {

namespace {

// Lower-triangular coefficient matrix (Cholesky of the Gram matrix) of k
// i.i.d. uniform centers. For k <= d the Wishart Cholesky factor is drawn
// directly; otherwise vectors are materialized and orthogonalized.
Eigen::MatrixXd random_center_coefficients(int k, int d, RngStream& rng) {
  if (k <= d) {
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(k, k);
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < i; ++j) L(i, j) = rng.normal();
      L(i, i) = std::sqrt(rng.chi_square(double(d - i)));
    }
    for (int i = 0; i < k; ++i) L.row(i) /= L.row(i).head(i + 1).norm();
    return L;
  }
  GramBasis basis(d, k);
  for (int i = 0; i < k; ++i) basis.add_center(sample_uniform_sphere(d, rng));
  return basis.rows().topLeftCorner(k, k);
}

// Core of the sequential-conditioning estimator, parametrized by the
// coefficient rows of the centers (Cholesky of their Gram matrix), one
// threshold and orientation per constraint.
PrefixMeasures sequential_prefix_measures(const Eigen::MatrixXd& L,
                                          const std::vector<bool>& is_cap,
                                          const std::vector<double>& taus, int d,
                                          long paths, const RngStream& rng) {
  const int k = int(is_cap.size());
  if (paths < 2) throw std::domain_error("need at least 2 conditioning paths");
  std::vector<double> sum(std::size_t(k) + 1, 0.0), sumsq(std::size_t(k) + 1, 0.0);
  std::vector<double> beta(std::size_t(k), 0.0);
  for (long path = 0; path < paths; ++path) {
    RngStream r(rng.seed(), substream_index(rng.stream_index(), std::uint64_t(path)));
    double z = 1.0;
    double r2 = 1.0;
    sum[0] += 1.0;
    sumsq[0] += 1.0;
    for (int t = 0; t < k; ++t) {
      if (z > 0.0) {
        double fixed = 0.0;
        for (int s = 0; s < t; ++s) fixed += L(t, s) * beta[std::size_t(s)];
        const double tau = taus[std::size_t(t)];
        const double dir = L(t, t);
        const double res = std::sqrt(std::max(0.0, r2));
        const int dd = d - t;  // residual sphere: latitudes follow psi_dd
        double mult, tlat;
        if (dir * res < 1e-12) {
          // Dependent center (or exhausted mass): membership is decided by
          // the fixed part alone.
          const bool inside = is_cap[std::size_t(t)] ? fixed >= tau : fixed < tau;
          mult = inside ? 1.0 : 0.0;
          tlat = 0.0;
        } else {
          const double h = (tau - fixed) / (dir * res);
          if (dd == 1) {
            // 0-sphere residual: latitude is +-1 with equal mass.
            const double q = h <= -1.0 ? 1.0 : (h <= 1.0 ? 0.5 : 0.0);
            mult = is_cap[std::size_t(t)] ? q : 1.0 - q;
            if (mult <= 0.0) {
              z = 0.0;
            } else if (is_cap[std::size_t(t)]) {
              tlat = (q == 1.0) ? (r.uniform() < 0.5 ? 1.0 : -1.0) : 1.0;
            } else {
              tlat = (q == 0.0) ? (r.uniform() < 0.5 ? 1.0 : -1.0) : -1.0;
            }
          } else if (h >= 1.0) {
            mult = is_cap[std::size_t(t)] ? 0.0 : 1.0;
            if (mult > 0.0) tlat = fast_latitude(dd, r);
            else z = 0.0;
          } else if (h <= -1.0) {
            mult = is_cap[std::size_t(t)] ? 1.0 : 0.0;
            if (mult > 0.0) tlat = fast_latitude(dd, r);
            else z = 0.0;
          } else {
            const double q = cap_measure(dd, h);
            if (is_cap[std::size_t(t)]) {
              mult = q;
              if (mult > 0.0) tlat = fast_latitude_above(dd, h, r);
            } else {
              mult = 1.0 - q;
              if (mult > 0.0) tlat = fast_latitude_below(dd, h, r);
            }
            if (mult <= 0.0) z = 0.0;
          }
        }
        if (z > 0.0) {
          z *= mult;
          beta[std::size_t(t)] = res * tlat;
          r2 = std::max(0.0, r2 * (1.0 - tlat * tlat));
        }
      }
      sum[std::size_t(t) + 1] += z;
      sumsq[std::size_t(t) + 1] += z * z;
    }
  }
  PrefixMeasures out;
  out.mean.resize(std::size_t(k) + 1);
  out.stderr_.resize(std::size_t(k) + 1);
  for (int t = 0; t <= k; ++t) {
    const double m = sum[std::size_t(t)] / double(paths);
    const double var =
        std::max(0.0, sumsq[std::size_t(t)] / double(paths) - m * m);
    out.mean[std::size_t(t)] = m;
    out.stderr_[std::size_t(t)] = std::sqrt(var / double(paths));
  }
  return out;
}

// Weighted in-cap fractions X(z) for a panel of directions, evaluated as
// blocked matrix products so large ensembles stay GEMM-bound.
std::vector<double> panel_cap_fractions(const ParticleDistribution& nu,
                                        const Eigen::MatrixXd& zs, double tau) {
  const int m = int(zs.rows());
  const int n = nu.count();
  std::vector<double> frac(std::size_t(m), 0.0);
  const int zb = 128, pb = 8192;
  Eigen::MatrixXd s;
  for (int z0 = 0; z0 < m; z0 += zb) {
    const int zc = std::min(zb, m - z0);
    for (int p0 = 0; p0 < n; p0 += pb) {
      const int pc = std::min(pb, n - p0);
      s.noalias() =
          zs.middleRows(z0, zc) * nu.particles.middleRows(p0, pc).transpose();
      for (int i = 0; i < zc; ++i) {
        double acc = 0.0;
        for (int j = 0; j < pc; ++j)
          if (s(i, j) > tau) acc += nu.weights[p0 + j];
        frac[std::size_t(z0 + i)] += acc;
      }
    }
  }
  return frac;
}

// Uniform z panel drawn in a fixed order from one stream.
Eigen::MatrixXd draw_panel(int m, int d, RngStream& rng) {
  Eigen::MatrixXd zs(m, d);
  for (int i = 0; i < m; ++i) zs.row(i) = sample_uniform_sphere(d, rng).transpose();
  return zs;
}

}  // namespace

void ParticleDistribution::validate() const {
  if (particles.rows() != weights.size())
    throw std::domain_error("particle/weight count mismatch");
  if (particles.cols() < 2) throw std::domain_error("dimension must be >= 2");
  double sum = 0.0;
  for (int i = 0; i < weights.size(); ++i) {
    if (weights[i] < 0.0) throw std::domain_error("negative particle weight");
    sum += weights[i];
  }
  if (std::fabs(sum - 1.0) > 1e-12)
    throw std::domain_error("particle weights do not sum to 1");
}

ParticleDistribution ParticleDistribution::uniform(int count, int d, RngStream& rng) {
  ParticleDistribution out;
  out.particles.resize(count, d);
  out.weights = Eigen::VectorXd::Constant(count, 1.0 / double(count));
  for (int i = 0; i < count; ++i)
    out.particles.row(i) = sample_uniform_sphere(d, rng).transpose();
  return out;
}

ParticleDistribution ParticleDistribution::point_mass(const Vec& v, int count) {
  ParticleDistribution out;
  out.particles.resize(count, v.size());
  out.weights = Eigen::VectorXd::Constant(count, 1.0 / double(count));
  for (int i = 0; i < count; ++i) out.particles.row(i) = v.transpose();
  return out;
}

double cap_fraction(const ParticleDistribution& nu, const Vec& z, double tau) {
  if (nu.dim() != int(z.size())) throw std::domain_error("dimension mismatch");
  const Eigen::VectorXd ip = nu.particles * z;
  double frac = 0.0;
  for (int i = 0; i < ip.size(); ++i)
    if (ip[i] > tau) frac += nu.weights[i];
  return frac;
}

DeviationProfileEstimate deviation_profile(const ParticleDistribution& nu,
                                           double tau, double eps, long z_samples,
                                           const RngStream& rng) {
  if (!(eps > 0.0)) throw std::domain_error("eps must be > 0");
  const int d = nu.dim();
  const double p = cap_measure(d, tau);
  long hits = 0;
  RngStream r(rng.seed(), substream_index(rng.stream_index(), 0));
  for (long done = 0; done < z_samples;) {
    const int chunk = int(std::min<long>(512, z_samples - done));
    const Eigen::MatrixXd zs = draw_panel(chunk, d, r);
    for (double x : panel_cap_fractions(nu, zs, tau))
      if (std::fabs(x - p) > p * eps) ++hits;
    done += chunk;
  }
  const double dev = double(hits) / double(z_samples);
  return {eps, dev, z_samples,
          std::sqrt(std::max(0.0, dev * (1.0 - dev) / double(z_samples)))};
}

ParticleDistribution cap_convolution_push(const ParticleDistribution& nu,
                                          double tau, RngStream& rng) {
  if (tau >= 1.0) throw std::domain_error("empty cap: threshold >= 1");
  ParticleDistribution out;
  out.weights = nu.weights;  // conserved exactly
  out.particles.resize(nu.particles.rows(), nu.particles.cols());
  const int d = nu.dim();
  const double pcap = cap_measure(d, tau);
  if (!(pcap > 0.0)) throw std::runtime_error("cap measure underflow in push");
  Vec center(d), g(d), u(d);
  for (int i = 0; i < nu.count(); ++i) {
    center = nu.particles.row(i).transpose();
    const double t = fast_latitude_above(d, tau, rng);
    for (;;) {
      for (int c = 0; c < d; ++c) g[c] = rng.normal();
      u = g - g.dot(center) * center;
      const double n = u.norm();
      if (n > 1e-150) {
        u /= n;
        break;
      }
    }
    Vec x = t * center + std::sqrt(std::max(0.0, 1.0 - t * t)) * u;
    normalize_unit(x);
    out.particles.row(i) = x.transpose();
  }
  return out;
}

double cap_discrepancy(const ParticleDistribution& nu, double tau, long z_samples,
                       const RngStream& rng) {
  const int d = nu.dim();
  const double p = cap_measure(d, tau);
  if (!(p > 0.0)) throw std::runtime_error("cap measure underflow");
  std::vector<double> devs;
  devs.reserve(std::size_t(z_samples));
  RngStream r(rng.seed(), substream_index(rng.stream_index(), 0));
  for (long done = 0; done < z_samples;) {
    const int chunk = int(std::min<long>(512, z_samples - done));
    const Eigen::MatrixXd zs = draw_panel(chunk, d, r);
    for (double x : panel_cap_fractions(nu, zs, tau))
      devs.push_back(std::fabs(x - p) / p);
    done += chunk;
  }
  std::sort(devs.begin(), devs.end());
  const std::size_t idx =
      std::size_t(std::floor(0.99 * double(devs.size() - 1)) + 0.5);
  return devs[idx];
}

std::pair<double, double> intersection_measure_mc(const std::vector<CapSpec>& caps,
                                                  long mc_samples, RngStream& rng) {
  if (caps.empty()) return {1.0, 0.0};
  if (mc_samples < 1000) throw std::domain_error("need at least 1e3 samples");
  const int d = int(caps.front().center.size());
  GramBasis basis(d, int(caps.size()));
  for (const CapSpec& c : caps) basis.add_center(c.center);
  std::vector<double> a(std::size_t(basis.rank()) + 1);
  long hits = 0;
  for (long it = 0; it < mc_samples; ++it) {
    double inv;
    basis.draw(rng, a.data(), inv);
    bool inside = true;
    for (std::size_t k = 0; k < caps.size(); ++k) {
      const double t = basis.inner_product(int(k), a.data(), inv);
      if ((t >= caps[k].threshold) != (caps[k].orientation == Orientation::Cap)) {
        inside = false;
        break;
      }
    }
    if (inside) ++hits;
  }
  const double est = double(hits) / double(mc_samples);
  return {est, std::sqrt(std::max(0.0, est * (1.0 - est) / double(mc_samples)))};
}

MartingaleTrace martingale_ratio_trace(int k, int j, int d, double p,
                                       long mc_samples, const RngStream& rng) {
  if (j > k || j < 0) throw std::domain_error("need 0 <= j <= k");
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("cap fraction outside (0, 1)");
  const double tau = tau_of_p(d, p);
  RngStream centers_rng(rng.seed(), substream_index(rng.stream_index(), 0));
  RngStream paths_rng(rng.seed(), substream_index(rng.stream_index(), 1));
  const Eigen::MatrixXd L = random_center_coefficients(k, d, centers_rng);
  std::vector<bool> is_cap(static_cast<std::size_t>(k));
  for (int t = 0; t < k; ++t) is_cap[std::size_t(t)] = t < j;
  const std::vector<double> taus(static_cast<std::size_t>(k), tau);
  const PrefixMeasures est =
      sequential_prefix_measures(L, is_cap, taus, d, mc_samples, paths_rng);

  MartingaleTrace out;
  out.j = j;
  out.k = k;
  out.p = p;
  out.ratios.resize(std::size_t(k) + 1);
  out.per_step_stderr.resize(std::size_t(k) + 1);
  double denom = 1.0;
  for (int t = 0; t <= k; ++t) {
    if (t > 0) denom *= is_cap[std::size_t(t - 1)] ? p : (1.0 - p);
    out.ratios[std::size_t(t)] = est.mean[std::size_t(t)] / denom;
    out.per_step_stderr[std::size_t(t)] = est.stderr_[std::size_t(t)] / denom;
    if (!out.truncated && est.mean[std::size_t(t)] == 0.0) {
      out.truncated = true;
      out.truncated_at = t;
    }
  }
  return out;
}

AnticapSummary anticap_concentration_experiment(int m, int d, double p, long trials,
                                                long mc_samples,
                                                const RngStream& rng) {
  if (m < 0) throw std::domain_error("anti-cap count must be >= 0");
  if (trials < 2) throw std::domain_error("need at least 2 trials");
  AnticapSummary out;
  out.m = m;
  out.trials = trials;
  out.ratios.reserve(std::size_t(trials));
  const double denom = std::pow(1.0 - p, double(m));
  for (long trial = 0; trial < trials; ++trial) {
    if (m == 0) {
      out.ratios.push_back(1.0);
      continue;
    }
    RngStream r(rng.seed(), substream_index(rng.stream_index(), std::uint64_t(trial) + 1));
    RngStream centers_rng(r.seed(), substream_index(r.stream_index(), 0));
    RngStream paths_rng(r.seed(), substream_index(r.stream_index(), 1));
    const double tau = tau_of_p(d, p);
    const Eigen::MatrixXd L = random_center_coefficients(m, d, centers_rng);
    const std::vector<bool> is_cap(static_cast<std::size_t>(m), false);
    const std::vector<double> taus(static_cast<std::size_t>(m), tau);
    const PrefixMeasures est =
        sequential_prefix_measures(L, is_cap, taus, d, mc_samples, paths_rng);
    out.ratios.push_back(est.mean[std::size_t(m)] / denom);
  }
  double sum = 0.0, sumsq = 0.0;
  for (double v : out.ratios) {
    sum += v;
    sumsq += v * v;
  }
  out.mean = sum / double(trials);
  const double var = std::max(0.0, sumsq / double(trials) - out.mean * out.mean);
  out.stddev = std::sqrt(var * double(trials) / double(trials - 1));
  out.mean_stderr = out.stddev / std::sqrt(double(trials));
  std::vector<double> sorted = out.ratios;
  std::sort(sorted.begin(), sorted.end());
  auto quant = [&](double q) {
    return sorted[std::size_t(std::floor(q * double(sorted.size() - 1)) + 0.5)];
  };
  out.q05 = quant(0.05);
  out.q50 = quant(0.50);
  out.q95 = quant(0.95);
  return out;
}

PrefixMeasures sequential_intersection_measures(const std::vector<CapSpec>& caps,
                                                long paths, const RngStream& rng) {
  if (caps.empty()) return {{1.0}, {0.0}};
  const int d = int(caps.front().center.size());
  GramBasis basis(d, int(caps.size()));
  std::vector<bool> is_cap;
  std::vector<double> taus;
  for (const CapSpec& c : caps) {
    if (int(c.center.size()) != d) throw std::domain_error("cap dimension mismatch");
    basis.add_center(c.center);
    is_cap.push_back(c.orientation == Orientation::Cap);
    taus.push_back(c.threshold);
  }
  const Eigen::MatrixXd L =
      basis.rows().topLeftCorner(int(caps.size()), int(caps.size()));
  return sequential_prefix_measures(L, is_cap, taus, d, paths, rng);
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::domain_error("need matched samples for a slope");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = double(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0 && y[i] > 0.0))
      throw std::domain_error("log-log slope needs positive values");
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace rgg
