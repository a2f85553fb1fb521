#include "rgg/sphere.hpp"

#include <cmath>
#include <limits>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace rgg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_dim(int d) {
  if (d < 2) throw std::domain_error("dimension must be >= 2");
}

// log Beta(a, a); memoized since a run touches only a handful of dimensions.
double log_beta_sym(double a) {
  thread_local std::unordered_map<double, double> cache;
  auto it = cache.find(a);
  if (it != cache.end()) return it->second;
  const double v = 2.0 * std::lgamma(a) - std::lgamma(2.0 * a);
  if (cache.size() > 4096) cache.clear();
  cache.emplace(a, v);
  return v;
}

// Continued fraction for the regularized incomplete beta I_x(a, b),
// modified Lentz iteration. Requires x <= (a+1)/(a+b+2) for fast
// convergence; callers arrange that.
double beta_cont_fraction(double x, double a, double b) {
  const double tiny = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double dd = 1.0 - qab * x / qap;
  if (std::fabs(dd) < tiny) dd = tiny;
  dd = 1.0 / dd;
  double h = dd;
  for (int m = 1; m <= 200000; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    dd = 1.0 + aa * dd;
    if (std::fabs(dd) < tiny) dd = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    dd = 1.0 / dd;
    h *= dd * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    dd = 1.0 + aa * dd;
    if (std::fabs(dd) < tiny) dd = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    dd = 1.0 / dd;
    const double del = dd * c;
    h *= del;
    if (std::fabs(del - 1.0) < 3e-16) return h;
  }
  throw std::runtime_error("incomplete beta continued fraction did not converge");
}

// log I_x(a, a) for x <= 1/2.
double log_reg_beta_lower_half(double x, double a) {
  if (x <= 0.0) return -kInf;
  const double log_prefix =
      a * std::log(x) + a * std::log1p(-x) - std::log(a) - log_beta_sym(a);
  return log_prefix + std::log(beta_cont_fraction(x, a, a));
}

// Gauss-Legendre nodes/weights on [0, 1], 64 points.
struct GaussLegendre64 {
  double node[64];
  double weight[64];
  GaussLegendre64() {
    // Newton iteration on Legendre P_64 roots, standard construction.
    const int n = 64;
    for (int i = 0; i < n / 2; ++i) {
      double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      double pp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = 0.0;
        for (int j = 0; j < n; ++j) {
          const double p2 = p1;
          p1 = p0;
          p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
        }
        pp = n * (x * p0 - p1) / (x * x - 1.0);
        const double dx = p0 / pp;
        x -= dx;
        if (std::fabs(dx) < 1e-16) break;
      }
      node[i] = 0.5 * (1.0 - x);
      node[n - 1 - i] = 0.5 * (1.0 + x);
      weight[i] = weight[n - 1 - i] = 1.0 / ((1.0 - x * x) * pp * pp);
    }
  }
};

const GaussLegendre64& gl64() {
  static const GaussLegendre64 table;
  return table;
}

// Integral of psi_d over [0, tau] for 0 <= tau < 1, by Gauss-Legendre.
// Accurate to ~1e-16 absolute; used where the cap measure is of order 1 so
// the half-minus-integral form loses nothing.
double psi_integral_from_zero(int d, double tau) {
  const auto& q = gl64();
  const double log_norm = std::lgamma(0.5 * d) -
                          std::lgamma(0.5 * (d - 1)) - 0.5 * std::log(M_PI);
  const double ex = 0.5 * (d - 3);
  double sum = 0.0;
  for (int i = 0; i < 64; ++i) {
    const double t = tau * q.node[i];
    sum += q.weight[i] * std::exp(log_norm + ex * std::log1p(-t * t));
  }
  return sum * tau;
}

}  // namespace

double log_inner_product_density(int d, double t) {
  check_dim(d);
  if (std::fabs(t) > 1.0) throw std::domain_error("inner product outside [-1, 1]");
  const double log_norm = std::lgamma(0.5 * d) -
                          std::lgamma(0.5 * (d - 1)) - 0.5 * std::log(M_PI);
  const double one_minus_t2 = (1.0 - t) * (1.0 + t);
  if (one_minus_t2 <= 0.0) {
    if (d == 2) return kInf;
    if (d == 3) return log_norm;
    return -kInf;
  }
  return log_norm + 0.5 * (d - 3) * std::log(one_minus_t2);
}

double inner_product_density(int d, double t) {
  return std::exp(log_inner_product_density(d, t));
}

double cap_measure(int d, double tau) {
  check_dim(d);
  if (std::fabs(tau) > 1.0) throw std::domain_error("threshold outside [-1, 1]");
  if (tau >= 1.0) return 0.0;
  if (tau <= -1.0) return 1.0;
  // On the circle the beta value collapses to a closed form (the quadrature
  // below would also hit the endpoint singularity of psi_2).
  if (d == 2) return std::acos(tau) / M_PI;
  const double a = 0.5 * (d - 1);
  // Near the equator both beta parameters sit against x ~ 1/2 where the
  // continued fraction is slow; a direct quadrature of psi_d is exact there.
  if (tau * tau * d <= 2.25) {
    const double body = psi_integral_from_zero(d, std::fabs(tau));
    return tau >= 0.0 ? 0.5 - body : 0.5 + body;
  }
  if (tau > 0.0) {
    const double x = 0.5 * (1.0 - tau);
    return std::exp(log_reg_beta_lower_half(x, a));
  }
  const double x = 0.5 * (1.0 + tau);
  return 1.0 - std::exp(log_reg_beta_lower_half(x, a));
}

double log_cap_measure(int d, double tau) {
  check_dim(d);
  if (std::fabs(tau) > 1.0) throw std::domain_error("threshold outside [-1, 1]");
  if (tau >= 1.0) return -kInf;
  if (tau <= -1.0) return 0.0;
  if (d == 2) return std::log(std::acos(tau)) - std::log(M_PI);
  const double a = 0.5 * (d - 1);
  if (tau > 0.0 && tau * tau * d > 2.25) {
    return log_reg_beta_lower_half(0.5 * (1.0 - tau), a);
  }
  return std::log(cap_measure(d, tau));
}

double tau_of_p(int d, double p) {
  check_dim(d);
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("cap fraction outside (0, 1)");
  // Samplers resolve the same (d, p) pair millions of times.
  struct Key {
    int d;
    double p;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return std::hash<int>()(k.d) ^ (std::hash<double>()(k.p) << 1);
    }
  };
  thread_local std::unordered_map<Key, double, KeyHash> cache;
  const Key key{d, p};
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  // Bracketed Newton: bisection narrows the basin, Newton steps with the
  // density finish it off, falling back to the midpoint whenever a step
  // leaves the bracket. cap_measure is strictly decreasing, so f > 0 means
  // the root lies above tau.
  double lo = -1.0, hi = 1.0;
  for (int it = 0; it < 20; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (cap_measure(d, mid) > p)
      lo = mid;
    else
      hi = mid;
  }
  double tau = 0.5 * (lo + hi);
  double residual = cap_measure(d, tau) - p;
  double best_tau = tau, best_res = std::fabs(residual);
  for (int it = 0; it < 80 && std::fabs(residual) > 1e-16 * p; ++it) {
    if (residual > 0.0)
      lo = tau;
    else
      hi = tau;
    const double dens = inner_product_density(d, tau);
    double next = tau + residual / dens;
    if (!(dens > 0.0) || !std::isfinite(next) || !(next > lo && next < hi))
      next = 0.5 * (lo + hi);
    if (next == tau) break;
    tau = next;
    residual = cap_measure(d, tau) - p;
    if (std::fabs(residual) < best_res) {
      best_res = std::fabs(residual);
      best_tau = tau;
    }
  }
  tau = best_tau;
  residual = best_res;
  // Adjacent doubles in tau move the measure by about density * ulp; the
  // solver cannot beat that floor (relevant only where the density blows
  // up, i.e. d = 2 next to the poles).
  const double ulp = std::nextafter(std::fabs(tau) + 1.0, 2.0) - (std::fabs(tau) + 1.0);
  const double floor_tol = 4.0 * inner_product_density(d, tau) * ulp;
  const double tol = std::max({1e-13, 1e-12 * std::max(1.0, p), floor_tol});
  if (std::fabs(residual) > tol)
    throw std::runtime_error("tau_of_p failed to converge to requested measure");
  if (cache.size() > 4096) cache.clear();
  cache.emplace(key, tau);
  return tau;
}

double slab_measure(int d, double tau, double eps) {
  check_dim(d);
  if (eps < 0.0) throw std::domain_error("band half-width must be >= 0");
  const double lo = std::max(-1.0, tau - eps);
  const double hi = std::min(1.0, tau + eps);
  if (lo >= hi) return 0.0;
  const double mass = cap_measure(d, lo) - cap_measure(d, hi);
  return std::min(1.0, std::max(0.0, mass));
}

Vec sample_uniform_sphere(int d, RngStream& rng) {
  check_dim(d);
  Vec v(d);
  for (;;) {
    for (int i = 0; i < d; ++i) v[i] = rng.normal();
    const double n = v.norm();
    if (n > 1e-150) {
      v /= n;
      return v;
    }
  }
}

double sample_latitude_above(int d, double lo, RngStream& rng) {
  if (lo >= 1.0) throw std::domain_error("empty cap: threshold >= 1");
  if (lo <= -1.0) {
    // Unrestricted draw from psi_d via the inverse survival function.
    return tau_of_p(d, rng.uniform_pos());
  }
  const double pcap = cap_measure(d, lo);
  if (!(pcap > 0.0))
    throw std::runtime_error("cap measure underflow in latitude sampling");
  const double target = rng.uniform_pos() * pcap;
  return tau_of_p(d, target);
}

double sample_latitude_below(int d, double hi, RngStream& rng) {
  if (hi <= -1.0) throw std::domain_error("empty anti-cap: threshold <= -1");
  if (hi >= 1.0) return tau_of_p(d, rng.uniform_pos());
  const double pcap = cap_measure(d, hi);
  const double target = pcap + rng.uniform_pos() * (1.0 - pcap);
  return tau_of_p(d, target);
}

double fast_latitude(int d, RngStream& rng) {
  check_dim(d);
  // (1+t)/2 is Beta(a, a) for a = (d-1)/2; a beta draw is a gamma ratio.
  const double a = 0.5 * (d - 1);
  const double g1 = rng.gamma(a);
  const double g2 = rng.gamma(a);
  const double u = g1 / (g1 + g2);
  return std::min(1.0, std::max(-1.0, 2.0 * u - 1.0));
}

double fast_latitude_above(int d, double lo, RngStream& rng) {
  check_dim(d);
  if (lo >= 1.0) throw std::domain_error("empty cap: threshold >= 1");
  if (lo <= -1.0) return fast_latitude(d, rng);
  if (d == 2) {
    // Closed form on the circle: t = cos(angle), angle uniform.
    return std::cos(rng.uniform_pos() * std::acos(lo));
  }
  const double q = cap_measure(d, lo);
  if (q >= 0.1) {
    for (int it = 0; it < 10000; ++it) {
      const double t = fast_latitude(d, rng);
      if (t >= lo) return t;
    }
    return sample_latitude_above(d, lo, rng);
  }
  // Tail draw for d >= 3: the log-density (a-1) ln(1-t^2) is concave, so
  // its tangent at lo gives a dominating exponential hull on [lo, 1].
  const double am1 = 0.5 * (d - 1) - 1.0;
  const double lo2 = lo * lo;
  const double lambda = -2.0 * am1 * lo / (1.0 - lo2);  // <= 0 here
  const double span = 1.0 - lo;
  const double log_f_lo = am1 * std::log1p(-lo2);
  for (int it = 0; it < 10000; ++it) {
    const double u = rng.uniform_pos();
    double t;
    if (std::fabs(lambda) < 1e-12) {
      t = lo + u * span;
    } else {
      t = lo + std::log1p(u * std::expm1(lambda * span)) / lambda;
    }
    if (t >= 1.0) continue;
    const double log_f = am1 * std::log1p(-t * t);
    const double log_hull = log_f_lo + lambda * (t - lo);
    if (std::log(rng.uniform_pos()) <= log_f - log_hull) return t;
  }
  return sample_latitude_above(d, lo, rng);
}

double fast_latitude_below(int d, double hi, RngStream& rng) {
  return -fast_latitude_above(d, -hi, rng);
}

Vec sample_in_cap(const Vec& center, double tau, RngStream& rng) {
  const int d = int(center.size());
  check_dim(d);
  if (tau >= 1.0) throw std::domain_error("empty cap: threshold >= 1");
  const double t = sample_latitude_above(d, tau, rng);
  // Uniform direction orthogonal to the center.
  Vec g(d);
  Vec u(d);
  for (;;) {
    for (int i = 0; i < d; ++i) g[i] = rng.normal();
    u = g - g.dot(center) * center;
    const double n = u.norm();
    if (n > 1e-150) {
      u /= n;
      break;
    }
  }
  Vec x = t * center + std::sqrt(std::max(0.0, 1.0 - t * t)) * u;
  normalize_unit(x);
  return x;
}

bool region_membership(const Vec& x, const std::vector<CapSpec>& caps) {
  for (const CapSpec& c : caps) {
    if (c.center.size() != x.size())
      throw std::domain_error("cap center dimension mismatch");
    const double ip = c.center.dot(x);
    const bool in_cap = ip >= c.threshold;
    if ((c.orientation == Orientation::Cap) != in_cap) return false;
  }
  return true;
}

void normalize_unit(Vec& v) {
  const double n = v.norm();
  if (!(n > 1e-150)) throw std::runtime_error("cannot normalize ~zero vector");
  v /= n;
}

}  // namespace rgg
