#pragma once

#include <cstdint>
#include <cmath>
#include <stdexcept>

namespace rgg {

// Counter-keyed xoshiro256++ stream. A stream is identified by the pair
// (seed, stream_index): equal pairs reproduce the identical sequence,
// distinct pairs give statistically independent sequences. Streams never
// share state, so they can be drawn from concurrently without locks.
class RngStream {
public:
  RngStream(std::uint64_t seed, std::uint64_t stream_index)
      : seed_(seed), stream_(stream_index) {
    std::uint64_t a = mix64(seed + 0x9e3779b97f4a7c15ULL);
    std::uint64_t b = mix64(stream_index ^ 0xd1b54a32d192ed03ULL);
    s_[0] = mix64(a ^ rotl(b, 17));
    s_[1] = mix64(b + 0x8cb92ba72f3d8dd7ULL + a);
    s_[2] = mix64(a + rotl(b, 43) + 0x2545f4914f6cdd1dULL);
    s_[3] = mix64(b ^ (a >> 13) ^ 0x9afcb56cfe19e7b1ULL);
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_index() const { return stream_; }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform on [0,1), 53-bit resolution.
  double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on (0,1]; safe as an argument to log() or as a quantile level.
  double uniform_pos() { return 1.0 - uniform(); }

  // Standard normal via Marsaglia's polar method (second value cached).
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, q;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      q = u * u + v * v;
    } while (q >= 1.0 || q == 0.0);
    const double f = std::sqrt(-2.0 * std::log(q) / q);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

  // Gamma(shape, 1) by Marsaglia-Tsang; the shape<1 case is boosted.
  double gamma(double shape) {
    if (!(shape > 0.0)) throw std::domain_error("gamma: shape must be > 0");
    if (shape < 1.0) {
      const double u = uniform_pos();
      return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform_pos();
      const double x2 = x * x;
      if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
      if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  // Chi-square with dof degrees of freedom (dof >= 1 integer typical,
  // any positive real accepted).
  double chi_square(double dof) {
    if (dof == 1.0) {
      const double z = normal();
      return z * z;
    }
    return 2.0 * gamma(0.5 * dof);
  }

private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  static std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_, stream_;
  std::uint64_t s_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Stream index for a nested loop (trial, step) so that independent work
// units get non-colliding substreams under one root seed. The multiplier
// is odd, so the fold is a bijection per nesting level.
inline std::uint64_t substream_index(std::uint64_t outer, std::uint64_t inner) {
  return outer * 0x9e3779b97f4a7c15ULL + inner;
}

}  // namespace rgg
