#include "rgg/samplers.hpp"

#include <cmath>
#include <cstring>

#include "rgg/gram.hpp"

namespace rgg {

namespace {

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("probability outside [0, 1]");
}

struct RegionView {
  const GramBasis* basis;
  std::vector<double> thresholds;
  std::vector<bool> is_cap;

  bool contains(const double* a, double inv_norm) const {
    for (std::size_t k = 0; k < thresholds.size(); ++k) {
      const double t = basis->inner_product(int(k), a, inv_norm);
      if ((t >= thresholds[k]) != bool(is_cap[k])) return false;
    }
    return true;
  }
};

}  // namespace

GraphSample sample_er(int n, double p, RngStream& rng) {
  check_probability(p);
  GraphSample g(n);
  const long m = g.pair_count();
  for (long k = 0; k < m; ++k)
    if (rng.uniform() < p) g.set_edge_by_index(k, true);
  return g;
}

std::pair<GraphSample, VectorEmbedding> sample_geo(int n, double p, int d,
                                                   RngStream& rng) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("edge probability outside (0, 1)");
  const double tau = tau_of_p(d, p);
  VectorEmbedding emb;
  emb.vectors.reserve(std::size_t(n));
  for (int i = 0; i < n; ++i) emb.vectors.push_back(sample_uniform_sphere(d, rng));
  return {emb.induced_graph(tau), std::move(emb)};
}

GraphSample sample_geo_graph(int n, double p, int d, RngStream& rng) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("edge probability outside (0, 1)");
  if (d < n) return sample_geo(n, p, d, rng).first;
  const double tau = tau_of_p(d, p);
  // Cholesky sample of a Wishart(d) Gram matrix; normalizing the rows of L
  // gives the pairwise inner products of n i.i.d. uniform unit vectors.
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) L(i, j) = rng.normal();
    L(i, i) = std::sqrt(rng.chi_square(double(d - i)));
  }
  Eigen::VectorXd inv_norm(n);
  for (int i = 0; i < n; ++i) inv_norm[i] = 1.0 / L.row(i).head(i + 1).norm();
  GraphSample g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double t =
          L.row(j).head(i + 1).dot(L.row(i).head(i + 1)) * inv_norm[i] * inv_norm[j];
      if (t >= tau) g.set_edge(i, j, true);
    }
  return g;
}

RejectionResult rejection_sample_region(const std::vector<CapSpec>& region,
                                        long budget, RngStream& rng,
                                        int dim_if_empty) {
  if (region.empty()) {
    if (dim_if_empty < 2)
      throw std::domain_error("empty region needs an explicit dimension >= 2");
    RejectionResult res;
    if (budget < 1) return res;
    res.attempts = 1;
    res.point = sample_uniform_sphere(dim_if_empty, rng);
    return res;
  }
  const int d = int(region.front().center.size());
  GramBasis basis(d, int(region.size()));
  RegionView view{&basis, {}, {}};
  for (const CapSpec& c : region) {
    basis.add_center(c.center);
    view.thresholds.push_back(c.threshold);
    view.is_cap.push_back(c.orientation == Orientation::Cap);
  }
  std::vector<double> a(std::size_t(basis.rank()) + 1);
  RejectionResult res;
  for (long it = 0; it < budget; ++it) {
    double inv;
    basis.draw(rng, a.data(), inv);
    ++res.attempts;
    if (view.contains(a.data(), inv)) {
      res.point = basis.reconstruct(a.data(), inv, rng);
      return res;
    }
  }
  return res;
}

std::pair<double, double> conditional_cap_fraction(
    const std::vector<CapSpec>& region, const Vec& new_center, double tau,
    long mc_budget, RngStream& rng, long min_accept) {
  const int d = int(new_center.size());
  GramBasis basis(d, int(region.size()) + 1);
  RegionView view{&basis, {}, {}};
  for (const CapSpec& c : region) {
    basis.add_center(c.center);
    view.thresholds.push_back(c.threshold);
    view.is_cap.push_back(c.orientation == Orientation::Cap);
  }
  const int probe = basis.count();
  basis.add_center(new_center);
  std::vector<double> a(std::size_t(basis.rank()) + 1);
  long accepted = 0, in_cap = 0;
  for (long it = 0; it < mc_budget; ++it) {
    double inv;
    basis.draw(rng, a.data(), inv);
    if (!view.contains(a.data(), inv)) continue;
    ++accepted;
    if (basis.inner_product(probe, a.data(), inv) >= tau) ++in_cap;
  }
  if (accepted < min_accept)
    throw InsufficientAcceptanceError(accepted, mc_budget, -1, -1);
  const double f = double(in_cap) / double(accepted);
  const double se = std::sqrt(std::max(0.0, f * (1.0 - f) / double(accepted)));
  return {f, se};
}

double default_coupling_eps(int n, double p, int d, double c2) {
  const double ln_n = std::log(double(n));
  const double ln4 = ln_n * ln_n * ln_n * ln_n;
  return c2 * std::sqrt((n * p + ln_n) * ln4 / double(d));
}

CoupledTriple coupled_triple_sample(int n, double p, int d, double eps,
                                    long mc_budget, RngStream& rng,
                                    long min_accept) {
  if (n < 1) throw std::domain_error("vertex count must be >= 1");
  if (!(p > 0.0 && p <= 0.5)) throw std::domain_error("coupling requires 0 < p <= 1/2");
  if (!(eps > 0.0)) throw std::domain_error("eps must be > 0");
  if (mc_budget < std::max<long>(min_accept, 1))
    throw std::domain_error("mc_budget too small for the accepted-sample minimum");

  const double tau = tau_of_p(d, p);
  const double p_minus = std::min(1.0, std::max(0.0, (1.0 - eps) * p));
  const double p_plus = std::min(1.0, std::max(0.0, (1.0 + eps) * p));

  CoupledTriple out;
  out.g_minus = GraphSample(n);
  out.g = GraphSample(n);
  out.g_plus = GraphSample(n);

  GramBasis basis(d, std::max(1, n - 1));
  Vec v = sample_uniform_sphere(d, rng);
  if (n >= 2) basis.add_center(v);

  std::vector<double> a(std::size_t(n) + 1);
  std::vector<double> side_a[2];
  side_a[0].resize(std::size_t(n) + 1);
  side_a[1].resize(std::size_t(n) + 1);

  std::vector<char> decided;  // 1 = cap side, per earlier pair of this vertex
  for (int i = 1; i < n; ++i) {
    const int prev = i;  // constraints come from vertices 0..i-1
    decided.assign(std::size_t(prev), 0);
    Vec vi;
    for (int k = 0; k < prev; ++k) {
      const double theta = rng.uniform();
      if (theta < p_minus) out.g_minus.set_edge(i, k, true);
      if (theta < p_plus) out.g_plus.set_edge(i, k, true);

      long accepted = 0, in_cap = 0;
      long side_count[2] = {0, 0};
      double side_inv[2] = {0.0, 0.0};
      const bool final_step = (k == prev - 1);
      for (long it = 0; it < mc_budget; ++it) {
        double inv;
        basis.draw(rng, a.data(), inv);
        bool inside = true;
        for (int j = 0; j < k; ++j) {
          const double t = basis.inner_product(j, a.data(), inv);
          if ((t >= tau) != bool(decided[std::size_t(j)])) {
            inside = false;
            break;
          }
        }
        if (!inside) continue;
        ++accepted;
        const int side = basis.inner_product(k, a.data(), inv) >= tau ? 1 : 0;
        in_cap += side;
        if (final_step) {
          // Reservoir of one uniform accepted draw per side; the winner on
          // the decided side becomes the vertex vector.
          ++side_count[side];
          if (rng.uniform() * double(side_count[side]) < 1.0) {
            std::memcpy(side_a[side].data(), a.data(),
                        sizeof(double) * std::size_t(basis.rank()));
            side_inv[side] = inv;
          }
        }
      }
      out.mc_budget_used += mc_budget;
      if (accepted < min_accept)
        throw InsufficientAcceptanceError(accepted, mc_budget, i, k);
      const double f = double(in_cap) / double(accepted);
      const double se = std::sqrt(std::max(0.0, f * (1.0 - f) / double(accepted)));
      out.fraction_estimates.push_back({out.g.pair_index(i, k), f, se});
      const bool edge = theta < f;
      if (edge) out.g.set_edge(i, k, true);
      decided[std::size_t(k)] = edge ? 1 : 0;
      if (final_step) {
        const int side = edge ? 1 : 0;
        // theta < f implies the cap side is populated; theta >= f with
        // f < 1 implies the complement side is. Either way the reservoir
        // on the decided side holds a draw.
        vi = basis.reconstruct(side_a[side].data(), side_inv[side], rng);
      }
    }
    if (i < n - 1) basis.add_center(vi);
  }
  out.sandwich_ok =
      out.g_minus.subgraph_of(out.g) && out.g.subgraph_of(out.g_plus);
  return out;
}

}  // namespace rgg
