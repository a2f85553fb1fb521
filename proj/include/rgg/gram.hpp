#pragma once

#include <vector>

#include "rgg/rng.hpp"
#include "rgg/sphere.hpp"

namespace rgg {

// Orthonormal-basis view of a list of centers, grown one center at a time.
// Row k stores the coefficients of center k in the basis; the coefficient
// matrix is lower triangular when the centers are in general position.
//
// The point of the structure: the inner products of a uniform sphere point
// with all centers depend only on these coefficients, so membership tests
// against many caps cost O(rank) per draw instead of O(d).
class GramBasis {
public:
  GramBasis(int d, int max_centers)
      : d_(d), q_(d, max_centers), rows_(max_centers, max_centers) {
    rows_.setZero();
  }

  int dim() const { return d_; }
  int rank() const { return rank_; }
  int count() const { return count_; }
  const Eigen::MatrixXd& rows() const { return rows_; }

  void add_center(const Vec& v) {
    if (int(v.size()) != d_) throw std::domain_error("center dimension mismatch");
    Vec w = v;
    // Two projection passes keep the basis orthonormal to working precision.
    for (int pass = 0; pass < 2; ++pass)
      for (int s = 0; s < rank_; ++s) w -= q_.col(s).dot(w) * q_.col(s);
    for (int s = 0; s < rank_; ++s) rows_(count_, s) = q_.col(s).dot(v);
    const double wn = w.norm();
    if (wn > 1e-9) {
      q_.col(rank_) = w / wn;
      rows_(count_, rank_) = q_.col(rank_).dot(v);
      ++rank_;
    }
    ++count_;
  }

  // Draws the joint law of the inner products of a uniform point with all
  // centers: coefficient vector a ~ N(0, I_rank) plus the squared mass of
  // the orthogonal complement, folded into inv_norm. The inner product
  // with center k is then row_k . a * inv_norm.
  void draw(RngStream& rng, double* a, double& inv_norm) const {
    double sq = 0.0;
    for (int s = 0; s < rank_; ++s) {
      a[s] = rng.normal();
      sq += a[s] * a[s];
    }
    const double tail = rank_ < d_ ? rng.chi_square(double(d_ - rank_)) : 0.0;
    inv_norm = 1.0 / std::sqrt(sq + tail);
  }

  double inner_product(int k, const double* a, double inv_norm) const {
    double dot = 0.0;
    const int lim = std::min(k + 1, rank_);
    for (int s = 0; s < lim; ++s) dot += rows_(k, s) * a[s];
    return dot * inv_norm;
  }

  // Lifts an accepted draw back to coordinates: the position inside the
  // span is fixed by a, the orthogonal part gets a fresh uniform direction
  // carrying the recorded mass.
  Vec reconstruct(const double* a, double inv_norm, RngStream& rng) const {
    Vec x = Vec::Zero(d_);
    for (int s = 0; s < rank_; ++s) x += (a[s] * inv_norm) * q_.col(s);
    if (rank_ < d_) {
      const double coeff = std::sqrt(std::max(0.0, 1.0 - x.squaredNorm()));
      Vec g(d_);
      Vec u(d_);
      for (;;) {
        for (int i = 0; i < d_; ++i) g[i] = rng.normal();
        u = g;
        for (int pass = 0; pass < 2; ++pass)
          for (int s = 0; s < rank_; ++s) u -= q_.col(s).dot(u) * q_.col(s);
        const double n = u.norm();
        if (n > 1e-150) {
          u /= n;
          break;
        }
      }
      x += coeff * u;
    }
    normalize_unit(x);
    return x;
  }

private:
  int d_;
  int rank_ = 0;
  int count_ = 0;
  Eigen::MatrixXd q_;
  Eigen::MatrixXd rows_;
};

}  // namespace rgg
