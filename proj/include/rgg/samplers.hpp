#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rgg/graph.hpp"
#include "rgg/rng.hpp"
#include "rgg/sphere.hpp"

namespace rgg {

// Erdos-Renyi sample: each pair present independently with probability p.
GraphSample sample_er(int n, double p, RngStream& rng);

// Geometric sample: n i.i.d. uniform unit vectors, edges where the inner
// product reaches tau_of_p(d, p). Returns the graph and its embedding.
std::pair<GraphSample, VectorEmbedding> sample_geo(int n, double p, int d,
                                                   RngStream& rng);

// Same edge law as sample_geo without materializing coordinates: when
// n <= d the pairwise inner products are drawn through the Cholesky
// factor of a Wishart Gram matrix, otherwise vectors are materialized.
GraphSample sample_geo_graph(int n, double p, int d, RngStream& rng);

// Result of rejection sampling a cap/anti-cap intersection.
struct RejectionResult {
  std::optional<Vec> point;  // empty on budget exhaustion
  long attempts = 0;
};

// Uniform sample from the intersection region, by rejection from the
// uniform sphere law. Failure after `budget` draws reports the attempts.
// An empty region means the whole sphere; pass its dimension explicitly.
RejectionResult rejection_sample_region(const std::vector<CapSpec>& region,
                                        long budget, RngStream& rng,
                                        int dim_if_empty = 0);

// Raised when a conditional-fraction estimate cannot reach the configured
// minimum number of accepted samples within its raw-draw budget.
struct InsufficientAcceptanceError : std::runtime_error {
  InsufficientAcceptanceError(long accepted_, long budget_, int vertex_, int prev_)
      : std::runtime_error("insufficient accepted samples in conditional fraction"),
        accepted(accepted_), budget(budget_), vertex(vertex_), prev(prev_) {}
  long accepted;
  long budget;
  int vertex;  // -1 when raised outside the coupled sampler
  int prev;
};

// Monte Carlo estimate of
//   rho(region AND cap(new_center, tau)) / rho(region)
// by rejection sampling uniform points of the region and testing cap
// membership. Returns (estimate, binomial standard error).
std::pair<double, double> conditional_cap_fraction(
    const std::vector<CapSpec>& region, const Vec& new_center, double tau,
    long mc_budget, RngStream& rng, long min_accept = 10);

struct FractionRecord {
  long pair_index;
  double estimate;
  double stderr_;
};

struct CoupledTriple {
  GraphSample g_minus, g, g_plus;
  bool sandwich_ok = false;
  std::vector<FractionRecord> fraction_estimates;
  long mc_budget_used = 0;
};

// Joint sampler of (G-, G, G+): per-vertex, per-pair thresholds theta
// decide edges of G- and G+ at (1 -/+ eps) p exactly, while G follows the
// thresholded-vector law with the exact conditional cap fraction replaced
// by a shared-pool Monte Carlo estimate. The accepted pool of the final
// pair step also supplies the vertex vector, keeping decision and draw
// consistent.
CoupledTriple coupled_triple_sample(int n, double p, int d, double eps,
                                    long mc_budget, RngStream& rng,
                                    long min_accept = 10);

// eps = c2 * sqrt((n p + ln n) ln^4 n / d); the relative edge-probability
// margin at which the coupling sandwich holds with high probability.
double default_coupling_eps(int n, double p, int d, double c2);

// Pilot-calibrated default for the c2 margin constant.
inline constexpr double kDefaultCouplingC2 = 1.0;

}  // namespace rgg
