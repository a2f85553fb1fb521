#pragma once

#include <utility>

#include "rgg/graph.hpp"
#include "rgg/rng.hpp"

namespace rgg {

// T(G) = sum over i<j<k of (G_ij - p)(G_jk - p)(G_ik - p), evaluated
// directly over all C(n,3) triples with compensated accumulation.
double signed_triangle_statistic(const GraphSample& g, double p);

// Mean and variance of T under the independent-edge law:
// (0, C(n,3) p^3 (1-p)^3). Requires n >= 3.
std::pair<double, double> er_signed_triangle_moments(int n, double p);

enum class Verdict { Geometric, ErdosRenyi };

struct TestOutcome {
  double statistic_value;
  double threshold;
  Verdict decision;
  double null_mean;
  double null_std;
};

// One-sided test at z null standard deviations: Geometric iff T > z * sigma.
TestOutcome triangle_test(const GraphSample& g, double p, double z);

struct PowerEstimate {
  double power;           // fraction of geometric samples flagged Geometric
  double false_positive;  // fraction of independent-edge samples flagged
  double power_stderr;
  double fp_stderr;
};

// Runs `trials` geometric and `trials` independent-edge samples through
// triangle_test. Trials use substreams of rng, so results are independent
// of any parallel schedule.
PowerEstimate detection_power(int n, double p, int d, long trials, double z,
                              const RngStream& rng);

// Estimates Q = Pr[all three edges | edge {2,3}] by drawing the second and
// third vectors conditioned on adjacency and a fresh first vector. Only the
// three pairwise inner products matter, so the draw works on latitudes.
// Returns (estimate, binomial standard error).
std::pair<double, double> conditional_triangle_prob(int d, double p, long trials,
                                                    const RngStream& rng);

}  // namespace rgg
