#pragma once

#include <Eigen/Dense>
#include <vector>

#include "rgg/rng.hpp"

namespace rgg {

using Vec = Eigen::VectorXd;

// Region defined by one spherical cap or its complement.
enum class Orientation { Cap, AntiCap };

struct CapSpec {
  Vec center;        // unit vector
  double threshold;  // inner-product threshold in [-1, 1]
  Orientation orientation = Orientation::Cap;
};

// ---------------------------------------------------------------------------
// Exact cap numerics.
//
// For two independent uniform unit vectors in dimension d, the inner product
// t has density psi_d(t) proportional to (1 - t^2)^((d-3)/2) on [-1, 1].
// The measure of the cap {x : <c, x> >= tau} is the upper tail of psi_d,
// which is a regularized incomplete beta value with both parameters equal
// to (d-1)/2. Everything below is evaluated in log space so tail measures
// down to ~1e-300 stay representable.
// ---------------------------------------------------------------------------

// Density of the inner product of two uniform unit vectors. Throws
// std::domain_error for |t| > 1 or d < 2.
double inner_product_density(int d, double t);

// log of inner_product_density; -inf where the density vanishes.
double log_inner_product_density(int d, double t);

// Uniform measure of {x : <c,x> >= tau}. Strictly decreasing in tau on
// (-1, 1); exactly 0 at tau = 1 and 1 at tau = -1.
double cap_measure(int d, double tau);

// log(cap_measure); usable when the linear value would underflow.
double log_cap_measure(int d, double tau);

// Inverse of cap_measure in tau: returns tau with cap_measure(d, tau) = p
// to ~1e-15 in the measure. Throws std::domain_error for p outside (0,1)
// and std::runtime_error if the residual check fails after the iteration
// budget.
double tau_of_p(int d, double p);

// Mass of the inner-product band [tau - eps, tau + eps].
double slab_measure(int d, double tau, double eps);

// ---------------------------------------------------------------------------
// Sampling.
// ---------------------------------------------------------------------------

// Uniform point on the (d-1)-sphere. d >= 2.
Vec sample_uniform_sphere(int d, RngStream& rng);

// Latitude draw: t ~ psi_d conditioned on t >= lo (lo < 1), via inverse CDF.
double sample_latitude_above(int d, double lo, RngStream& rng);

// Latitude draw: t ~ psi_d conditioned on t < hi (hi > -1).
double sample_latitude_below(int d, double hi, RngStream& rng);

// Exact rejection-based latitude draws; same laws as the inverse-CDF
// versions (the symmetric-beta representation gives unrestricted draws
// from a gamma pair, tails use a tangent-line exponential hull), at a
// small constant cost per draw. Used in conditioning-chain hot loops.
double fast_latitude(int d, RngStream& rng);
double fast_latitude_above(int d, double lo, RngStream& rng);
double fast_latitude_below(int d, double hi, RngStream& rng);

// Uniform point of the cap {x : <center,x> >= tau}. Throws for tau >= 1.
Vec sample_in_cap(const Vec& center, double tau, RngStream& rng);

// True iff x lies in the intersection of all listed caps / anti-caps.
// Throws std::domain_error on dimension mismatch.
bool region_membership(const Vec& x, const std::vector<CapSpec>& caps);

// Normalizes v in place to unit length; throws if the norm is ~0.
void normalize_unit(Vec& v);

}  // namespace rgg
