#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "rgg/samplers.hpp"
#include "rgg/triangles.hpp"

using namespace rgg;

TEST_CASE("signed triangle statistic pinned values") {
  GraphSample empty(3);
  CHECK(signed_triangle_statistic(empty, 0.5) == doctest::Approx(-0.125).epsilon(1e-15));
  GraphSample k3(3);
  k3.set_edge(0, 1, true);
  k3.set_edge(1, 2, true);
  k3.set_edge(0, 2, true);
  CHECK(signed_triangle_statistic(k3, 0.5) == doctest::Approx(0.125).epsilon(1e-15));
  GraphSample one(3);
  one.set_edge(0, 1, true);
  CHECK(signed_triangle_statistic(one, 0.5) == doctest::Approx(0.125).epsilon(1e-15));
}

TEST_CASE("statistic is invariant under vertex relabeling") {
  RngStream rng(41, 0);
  for (int it = 0; it < 40; ++it) {
    const GraphSample g = sample_er(9, 0.35, rng);
    std::vector<int> perm(9);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = 8; i > 0; --i)
      std::swap(perm[std::size_t(i)], perm[std::size_t(rng.next_u64() % (i + 1))]);
    GraphSample h(9);
    for (int i = 0; i < 9; ++i)
      for (int j = i + 1; j < 9; ++j)
        if (g.edge(i, j)) h.set_edge(perm[std::size_t(i)], perm[std::size_t(j)], true);
    CHECK(signed_triangle_statistic(g, 0.35) ==
          doctest::Approx(signed_triangle_statistic(h, 0.35)).epsilon(1e-12));
  }
}

TEST_CASE("null moments formula") {
  const auto [m3, v3] = er_signed_triangle_moments(3, 0.5);
  CHECK(m3 == 0.0);
  CHECK(v3 == doctest::Approx(0.015625).epsilon(1e-15));
  const auto [m0, v0] = er_signed_triangle_moments(3, 0.0);
  CHECK(v0 == 0.0);
  CHECK_THROWS_AS(er_signed_triangle_moments(2, 0.5), std::domain_error);
}

TEST_CASE("empirical null moments match the formula across (n, p)") {
  struct Case { int n; double p; long trials; };
  for (const Case c : {Case{10, 0.1, 100000}, Case{30, 0.2, 100000}, Case{30, 0.5, 100000}}) {
    RngStream rng(42 + c.n, 0);
    double sum = 0, sumsq = 0;
    for (long t = 0; t < c.trials; ++t) {
      const double T = signed_triangle_statistic(sample_er(c.n, c.p, rng), c.p);
      sum += T;
      sumsq += T * T;
    }
    const auto [mean, var] = er_signed_triangle_moments(c.n, c.p);
    const double emp_mean = sum / c.trials;
    const double emp_var = sumsq / c.trials - emp_mean * emp_mean;
    // Mean within 4 standard errors of 0; variance within 5%.
    CHECK(std::fabs(emp_mean - mean) < 4.0 * std::sqrt(emp_var / c.trials));
    CHECK(std::fabs(emp_var - var) < 0.05 * var);
  }
}

TEST_CASE("variance under the geometric law via Monte Carlo oracle") {
  // n=10, p=0.2: the independent-edge variance formula against an
  // independent-edge Monte Carlo; validates the oracle pathway used above.
  RngStream rng(43, 0);
  const long trials = 1000000;
  const int n = 10;
  const double p = 0.2;
  double sum = 0, sumsq = 0;
  for (long t = 0; t < trials; ++t) {
    const double T = signed_triangle_statistic(sample_er(n, p, rng), p);
    sum += T;
    sumsq += T * T;
  }
  const double emp_var = sumsq / trials - (sum / trials) * (sum / trials);
  const auto [mean, var] = er_signed_triangle_moments(n, p);
  (void)mean;
  CHECK(std::fabs(emp_var - var) < 0.03 * var);
}

TEST_CASE("triangle test decision logic") {
  GraphSample empty(4);
  const TestOutcome o = triangle_test(empty, 0.5, 3.0);
  CHECK(o.decision == Verdict::ErdosRenyi);
  CHECK(o.statistic_value < 0.0);
  CHECK(o.threshold == doctest::Approx(3.0 * o.null_std));
  CHECK_THROWS_AS(triangle_test(empty, 0.5, 0.0), std::domain_error);
}

TEST_CASE("detection power separates the laws at low dimension") {
  RngStream rng(44, 0);
  const PowerEstimate pe = detection_power(50, 0.2, 8, 1000, 3.0, rng);
  CHECK(pe.power >= 0.9);
  CHECK(pe.false_positive <= 0.01 + 4 * pe.fp_stderr);
}

TEST_CASE("power equals false-positive rate in the high-dimension limit") {
  RngStream rng(45, 0);
  const PowerEstimate pe = detection_power(20, 0.2, 100000000, 1000, 3.0, rng);
  const double se = std::sqrt(pe.power_stderr * pe.power_stderr +
                              pe.fp_stderr * pe.fp_stderr) + 1e-12;
  CHECK(std::fabs(pe.power - pe.false_positive) < 4 * se);
}

TEST_CASE("degenerate densities yield zero power at any z") {
  RngStream rng(46, 0);
  const PowerEstimate p0 = detection_power(10, 0.0, 50, 200, 3.0, rng);
  CHECK(p0.power == 0.0);
  CHECK(p0.false_positive == 0.0);
  const PowerEstimate p1 = detection_power(10, 1.0, 50, 200, 3.0, rng);
  CHECK(p1.power == 0.0);
  CHECK(p1.false_positive == 0.0);
}

// 2D quadrature oracle for Q at d=3: v2, v3 adjacent (latitude c uniform on
// [tau,1] since psi_3 is constant), v1 fresh. Conditional on c, the chance
// that v1 lands in both caps is the two-cap intersection measure, computed
// by integrating the longitude fraction over the latitude around v2.
static double q_oracle_d3(double p) {
  const double tau = tau_of_p(3, p);
  const int nc = 2001, nu = 2001;
  auto lens = [&](double c) {
    // measure of {x : <x,a> >= tau, <x,b> >= tau} with <a,b> = c on S^2
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    double acc = 0.0;
    const double h = (1.0 - tau) / (nu - 1);
    for (int i = 0; i < nu; ++i) {
      const double u = tau + h * i;
      const double su = std::sqrt(std::max(0.0, 1.0 - u * u));
      double frac;
      if (s * su == 0.0) {
        frac = (u * c >= tau) ? 1.0 : 0.0;
      } else {
        const double x = (tau - u * c) / (s * su);
        frac = x <= -1.0 ? 1.0 : (x >= 1.0 ? 0.0 : std::acos(x) / M_PI);
      }
      const double w = (i == 0 || i == nu - 1) ? 0.5 : 1.0;
      acc += w * 0.5 * frac * h;  // psi_3 = 1/2
    }
    return acc;
  };
  double acc = 0.0;
  const double h = (1.0 - tau) / (nc - 1);
  for (int i = 0; i < nc; ++i) {
    const double c = tau + h * i;
    const double w = (i == 0 || i == nc - 1) ? 0.5 : 1.0;
    acc += w * lens(c) * h;
  }
  // c | adjacency has density psi_3 / p = 1/(2p) on [tau, 1].
  return acc / (2.0 * p);
}

TEST_CASE("conditional triangle probability") {
  // d -> infinity proxy: q within 4 sigma of p^2.
  {
    RngStream rng(47, 0);
    const auto [q, se] = conditional_triangle_prob(1000000, 0.3, 20000, rng);
    CHECK(std::fabs(q - 0.09) < 4 * se);
  }
  // Low dimension: q exceeds p^2 by at least 5 sigma.
  {
    RngStream rng(48, 0);
    const auto [q, se] = conditional_triangle_prob(20, 0.3, 1000000, rng);
    CHECK(q - 0.09 > 5 * se);
  }
  // d=3 quadrature oracle at 4 sigma.
  {
    RngStream rng(49, 0);
    const auto [q, se] = conditional_triangle_prob(3, 0.5, 1000000, rng);
    const double oracle = q_oracle_d3(0.5);
    CHECK(std::fabs(q - oracle) < 4 * se);
  }
  // Cross-check the latitude path against explicit vector sampling at d=8.
  {
    RngStream rng(50, 0);
    const double p = 0.3, tau = tau_of_p(8, p);
    const long trials = 200000;
    long hits = 0;
    for (long t = 0; t < trials; ++t) {
      const Vec v2 = sample_uniform_sphere(8, rng);
      const Vec v3 = sample_in_cap(v2, tau, rng);
      const Vec v1 = sample_uniform_sphere(8, rng);
      if (v1.dot(v2) >= tau && v1.dot(v3) >= tau) ++hits;
    }
    const double q_vec = double(hits) / trials;
    const auto [q_lat, se] = conditional_triangle_prob(8, p, trials, rng);
    const double se2 = std::sqrt(2.0) * se + 1e-12;
    CHECK(std::fabs(q_vec - q_lat) < 5 * se2);
  }
}

TEST_CASE("scaling shape of the geometric excess across dimensions") {
  // Mean statistic divided by C(n,3) p^3 sqrt(ln^3(1/p)/d) stays within a
  // factor 3 band across the dimension grid.
  RngStream rng(51, 0);
  const int n = 40;
  const double p = 0.2;
  const long trials = 3000;
  std::vector<double> ratios;
  for (int d : {8, 32, 128, 512}) {
    double sum = 0;
    for (long t = 0; t < trials; ++t) {
      RngStream r(rng.seed(), substream_index(d, std::uint64_t(t)));
      sum += signed_triangle_statistic(sample_geo_graph(n, p, d, r), p);
    }
    const double mean = sum / trials;
    const double scale = (double(n) * (n - 1) * (n - 2) / 6.0) * p * p * p *
                         std::sqrt(std::pow(std::log(1.0 / p), 3.0) / d);
    ratios.push_back(mean / scale);
  }
  const double lo = *std::min_element(ratios.begin(), ratios.end());
  const double hi = *std::max_element(ratios.begin(), ratios.end());
  CHECK(lo > 0.0);
  CHECK(hi / lo < 3.0);
}
