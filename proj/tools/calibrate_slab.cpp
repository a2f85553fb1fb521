// Calibration scan for the slab-bound constant: max over the grid of
//   slab_measure / (p * eps * exp(2 d tau eps) * sqrt(d ln(1/p)))
// restricted to tau(p) <= 1/2 where the band-vs-density comparison applies.
#include "rgg/sphere.hpp"
#include <cstdio>
#include <cmath>
using namespace rgg;
int main() {
  double worst = 0; int wd = 0; double wp = 0, we = 0;
  for (int d : {10, 20, 50, 100, 200, 400, 800, 1600, 3200})
    for (double p : {1e-4, 1e-3, 1e-2, 0.05, 0.1, 0.2, 0.3, 0.45})
      for (double eps : {1e-4, 1e-3, 1e-2, 0.05, 0.1, 0.2}) {
        const double tau = tau_of_p(d, p);
        if (tau > 0.5) continue;
        const double mass = slab_measure(d, tau, eps);
        const double base = p * eps * std::exp(2.0 * d * tau * eps) * std::sqrt(d * std::log(1.0 / p));
        const double ratio = mass / base;
        if (ratio > worst) { worst = ratio; wd = d; wp = p; we = eps; }
      }
  std::printf("max ratio %.4f at d=%d p=%g eps=%g\n", worst, wd, wp, we);
  return 0;
}
