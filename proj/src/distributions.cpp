#include "rgg/distributions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "rgg/samplers.hpp"

namespace rgg {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

std::unordered_map<std::string, double> as_map(const DiscreteDistribution& d) {
  std::unordered_map<std::string, double> m;
  for (const auto& [k, v] : d.outcomes) m[k] += v;
  return m;
}
}  // namespace

void DiscreteDistribution::validate() const {
  double sum = 0.0;
  for (const auto& [k, v] : outcomes) {
    if (v < 0.0) throw std::domain_error("negative probability for key " + k);
    sum += v;
  }
  if (std::fabs(sum - 1.0) > 1e-12)
    throw std::domain_error("probabilities do not sum to 1");
}

double empirical_tv(const DiscreteDistribution& a, const DiscreteDistribution& b) {
  auto ma = as_map(a), mb = as_map(b);
  double l1 = 0.0;
  for (const auto& [k, v] : ma) {
    auto it = mb.find(k);
    l1 += std::fabs(v - (it == mb.end() ? 0.0 : it->second));
  }
  for (const auto& [k, v] : mb)
    if (!ma.count(k)) l1 += v;
  return 0.5 * l1;
}

double kl_discrete(const DiscreteDistribution& a, const DiscreteDistribution& b) {
  auto ma = as_map(a), mb = as_map(b);
  double kl = 0.0;
  for (const auto& [k, v] : ma) {
    if (v <= 0.0) continue;
    auto it = mb.find(k);
    if (it == mb.end() || it->second <= 0.0) return kInf;
    kl += v * std::log(v / it->second);
  }
  return std::max(0.0, kl);
}

DiscreteDistribution EmpiricalGraphDistribution::to_distribution() const {
  DiscreteDistribution out;
  out.outcomes.reserve(counts.size());
  for (std::size_t code = 0; code < counts.size(); ++code) {
    if (counts[code] == 0) continue;
    out.outcomes.emplace_back(GraphSample::from_code(n, code).serialize(),
                              double(counts[code]) / double(trials));
  }
  return out;
}

EmpiricalGraphDistribution enumerate_graph_distribution(const GraphSampler& sampler,
                                                        int n, long trials,
                                                        const RngStream& rng) {
  if (n > 5) throw std::domain_error("exact enumeration supports n <= 5 only");
  if (n < 1) throw std::domain_error("need at least one vertex");
  if (trials < 1) throw std::domain_error("need at least one trial");
  EmpiricalGraphDistribution out;
  out.n = n;
  out.trials = trials;
  out.counts.assign(std::size_t(1) << (std::size_t(n) * (n - 1) / 2), 0);
  for (long t = 0; t < trials; ++t) {
    RngStream r(rng.seed(), substream_index(rng.stream_index(), t));
    const GraphSample g = sampler(r);
    if (g.n() != n) throw std::domain_error("sampler produced wrong vertex count");
    ++out.counts[std::size_t(g.code())];
  }
  return out;
}

DiscreteDistribution exact_er_distribution(int n, double p) {
  if (n > 5) throw std::domain_error("exact enumeration supports n <= 5 only");
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("probability outside [0, 1]");
  const long m = long(n) * (n - 1) / 2;
  DiscreteDistribution out;
  out.outcomes.reserve(std::size_t(1) << m);
  for (std::uint64_t code = 0; code < (std::uint64_t(1) << m); ++code) {
    const GraphSample g = GraphSample::from_code(n, code);
    const long e = g.edge_count();
    const double prob = std::pow(p, double(e)) * std::pow(1.0 - p, double(m - e));
    if (prob > 0.0) out.outcomes.emplace_back(g.serialize(), prob);
  }
  return out;
}

double multinomial_tv_bound(long cells, long trials) {
  const double mean_part = 0.5 * std::sqrt(double(cells) / double(trials));
  const double tail_part = std::sqrt(std::log(2000.0) / (2.0 * double(trials)));
  return mean_part + tail_part;
}

std::vector<TvPoint> tv_curve(int n, double p, const std::vector<long>& d_grid,
                              long trials, const RngStream& rng) {
  const DiscreteDistribution er = exact_er_distribution(n, p);
  std::vector<TvPoint> out;
  out.reserve(d_grid.size());
  const long cells = 1L << (long(n) * (n - 1) / 2);
  for (std::size_t gi = 0; gi < d_grid.size(); ++gi) {
    const long d = d_grid[gi];
    if (d < 2) throw std::domain_error("dimension must be >= 2");
    RngStream base(rng.seed(), substream_index(rng.stream_index(), gi));
    GraphSampler sampler = [n, p, d](RngStream& r) {
      return sample_geo_graph(n, p, int(d), r);
    };
    const auto emp = enumerate_graph_distribution(sampler, n, trials, base);
    const DiscreteDistribution geo = emp.to_distribution();
    out.push_back({d, empirical_tv(geo, er), multinomial_tv_bound(cells, trials),
                   kl_discrete(geo, er)});
  }
  return out;
}

}  // namespace rgg
