#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rgg/graph.hpp"
#include "rgg/rng.hpp"

namespace rgg {

// Finite distribution over opaque keys; probabilities sum to 1 within 1e-12.
struct DiscreteDistribution {
  std::vector<std::pair<std::string, double>> outcomes;

  void validate() const;  // throws when the invariant is violated
};

// Half the L1 distance over the union of supports.
double empirical_tv(const DiscreteDistribution& a, const DiscreteDistribution& b);

// sum_k a(k) ln(a(k)/b(k)); +infinity when a puts mass where b has none.
// Zero-mass outcomes of a contribute 0.
double kl_discrete(const DiscreteDistribution& a, const DiscreteDistribution& b);

// Exact frequency table over the 2^C(n,2) graphs on n <= 5 vertices.
struct EmpiricalGraphDistribution {
  int n = 0;
  long trials = 0;
  std::vector<long> counts;  // indexed by GraphSample::code()

  DiscreteDistribution to_distribution() const;
};

using GraphSampler = std::function<GraphSample(RngStream&)>;

// Samples `trials` graphs (one substream per trial) and tabulates exact
// outcome frequencies. Throws for n > 5.
EmpiricalGraphDistribution enumerate_graph_distribution(const GraphSampler& sampler,
                                                        int n, long trials,
                                                        const RngStream& rng);

// Exact independent-edge distribution over the same outcome space.
DiscreteDistribution exact_er_distribution(int n, double p);

// Conservative bound on the total variation estimation error of an
// empirical distribution over k cells from trials multinomial samples:
// mean bound sqrt(k/trials)/2 plus a bounded-difference tail at the 1e-3
// level.
double multinomial_tv_bound(long cells, long trials);

struct TvPoint {
  long d;
  double tv;
  double bound;
  double kl;  // relative entropy of the empirical law w.r.t. the exact one
};

// TV between empirical geometric and exact independent-edge distributions
// for each dimension in d_grid, with the sampling error bound attached.
std::vector<TvPoint> tv_curve(int n, double p, const std::vector<long>& d_grid,
                              long trials, const RngStream& rng);

}  // namespace rgg
