#include "rgg/triangles.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "rgg/samplers.hpp"
#include "rgg/sphere.hpp"

namespace rgg {

double signed_triangle_statistic(const GraphSample& g, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("probability outside [0, 1]");
  const int n = g.n();
  std::vector<double> c(std::size_t(n) * std::size_t(n), -p);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (g.edge(i, j)) {
        c[std::size_t(i) * n + j] = 1.0 - p;
        c[std::size_t(j) * n + i] = 1.0 - p;
      }
  double sum = 0.0, comp = 0.0;  // Kahan
  for (int i = 0; i < n; ++i) {
    const double* ci = &c[std::size_t(i) * n];
    for (int j = i + 1; j < n; ++j) {
      const double cij = ci[j];
      const double* cj = &c[std::size_t(j) * n];
      for (int k = j + 1; k < n; ++k) {
        const double term = cij * ci[k] * cj[k];
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
      }
    }
  }
  return sum;
}

std::pair<double, double> er_signed_triangle_moments(int n, double p) {
  if (n < 3) throw std::domain_error("need at least 3 vertices");
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("probability outside [0, 1]");
  const double triples = double(n) * (n - 1) * (n - 2) / 6.0;
  const double q = p * (1.0 - p);
  return {0.0, triples * q * q * q};
}

TestOutcome triangle_test(const GraphSample& g, double p, double z) {
  if (!(z > 0.0)) throw std::domain_error("z must be > 0");
  const auto [mean, var] = er_signed_triangle_moments(g.n(), p);
  const double sigma = std::sqrt(var);
  const double t = signed_triangle_statistic(g, p);
  const double thr = z * sigma;
  return {t, thr, t > thr ? Verdict::Geometric : Verdict::ErdosRenyi, mean, sigma};
}

PowerEstimate detection_power(int n, double p, int d, long trials, double z,
                              const RngStream& rng) {
  if (trials < 100) throw std::domain_error("need at least 100 trials");
  long geo_hits = 0, er_hits = 0;
  // Degenerate densities: the statistic is identically 0 under both laws.
  const bool degenerate = (p <= 0.0 || p >= 1.0);
  for (long t = 0; t < trials; ++t) {
    RngStream geo_rng(rng.seed(), substream_index(rng.stream_index(), 2 * t));
    RngStream er_rng(rng.seed(), substream_index(rng.stream_index(), 2 * t + 1));
    if (!degenerate) {
      GraphSample gg = sample_geo_graph(n, p, d, geo_rng);
      if (triangle_test(gg, p, z).decision == Verdict::Geometric) ++geo_hits;
    }
    GraphSample ge = sample_er(n, p, er_rng);
    if (triangle_test(ge, p, z).decision == Verdict::Geometric) ++er_hits;
  }
  const double power = double(geo_hits) / double(trials);
  const double fp = double(er_hits) / double(trials);
  auto se = [&](double q) { return std::sqrt(q * (1.0 - q) / double(trials)); };
  return {power, fp, se(power), se(fp)};
}

std::pair<double, double> conditional_triangle_prob(int d, double p, long trials,
                                                    const RngStream& rng) {
  if (trials < 10000) throw std::domain_error("need at least 1e4 trials");
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("edge probability outside (0, 1)");
  const double tau = tau_of_p(d, p);
  long hits = 0;
  for (long t = 0; t < trials; ++t) {
    RngStream r(rng.seed(), substream_index(rng.stream_index(), t));
    // c = <v2, v3> given the edge {2,3}; t2 = <v1, v2> unconditioned.
    const double c = fast_latitude_above(d, tau, r);
    const double t2 = fast_latitude(d, r);
    double t3;  // inner product of v1 with the part of v3 orthogonal to v2
    if (d - 1 >= 2) {
      t3 = fast_latitude(d - 1, r);
    } else {
      t3 = r.uniform() < 0.5 ? 1.0 : -1.0;  // the 0-sphere
    }
    const double t13 =
        c * t2 + std::sqrt(std::max(0.0, (1.0 - c * c) * (1.0 - t2 * t2))) * t3;
    if (t2 >= tau && t13 >= tau) ++hits;
  }
  const double q = double(hits) / double(trials);
  return {q, std::sqrt(q * (1.0 - q) / double(trials))};
}

}  // namespace rgg
