#include "rgg/graph.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace rgg {

GraphSample::GraphSample(int n) : n_(n) {
  if (n < 1) throw std::domain_error("graph needs at least one vertex");
  words_.assign(std::size_t((pair_count() + 63) / 64), 0);
}

long GraphSample::pair_index(int i, int j) const {
  if (i == j || i < 0 || j < 0 || i >= n_ || j >= n_)
    throw std::domain_error("invalid vertex pair");
  if (i > j) std::swap(i, j);
  return long(i) * n_ - long(i) * (i + 1) / 2 + (j - i - 1);
}

bool GraphSample::edge(int i, int j) const { return edge_by_index(pair_index(i, j)); }

void GraphSample::set_edge(int i, int j, bool present) {
  set_edge_by_index(pair_index(i, j), present);
}

bool GraphSample::edge_by_index(long k) const {
  return (words_[std::size_t(k >> 6)] >> (k & 63)) & 1ULL;
}

void GraphSample::set_edge_by_index(long k, bool present) {
  if (present)
    words_[std::size_t(k >> 6)] |= (1ULL << (k & 63));
  else
    words_[std::size_t(k >> 6)] &= ~(1ULL << (k & 63));
}

long GraphSample::edge_count() const {
  long c = 0;
  for (std::uint64_t w : words_) c += std::popcount(w);
  return c;
}

int GraphSample::degree(int v) const {
  int deg = 0;
  for (int u = 0; u < n_; ++u)
    if (u != v && edge(u, v)) ++deg;
  return deg;
}

bool GraphSample::subgraph_of(const GraphSample& g) const {
  if (n_ != g.n_) throw std::domain_error("vertex count mismatch");
  for (std::size_t w = 0; w < words_.size(); ++w)
    if (words_[w] & ~g.words_[w]) return false;
  return true;
}

std::uint64_t GraphSample::code() const {
  if (pair_count() > 63) throw std::domain_error("graph too large for dense code");
  return words_.empty() ? 0 : words_[0];
}

GraphSample GraphSample::from_code(int n, std::uint64_t code) {
  GraphSample g(n);
  if (g.pair_count() > 63) throw std::domain_error("graph too large for dense code");
  if (!g.words_.empty()) g.words_[0] = code;
  return g;
}

std::string GraphSample::serialize() const {
  static const char* hex = "0123456789abcdef";
  const long m = pair_count();
  std::string out = std::to_string(n_);
  out.push_back('\n');
  for (long k = 0; k < m; k += 4) {
    int digit = 0;
    for (int b = 0; b < 4; ++b) {
      digit <<= 1;
      if (k + b < m && edge_by_index(k + b)) digit |= 1;
    }
    out.push_back(hex[digit]);
  }
  out.push_back('\n');
  return out;
}

GraphSample GraphSample::deserialize(const std::string& text) {
  std::istringstream in(text);
  int n = 0;
  std::string hex;
  if (!(in >> n) || !(in >> hex) || n < 1)
    throw std::runtime_error("malformed graph serialization");
  GraphSample g(n);
  const long m = g.pair_count();
  if (long(hex.size()) != (m + 3) / 4)
    throw std::runtime_error("graph serialization length mismatch");
  for (long k = 0; k < m; ++k) {
    const char c = hex[std::size_t(k / 4)];
    int digit;
    if (c >= '0' && c <= '9')
      digit = c - '0';
    else if (c >= 'a' && c <= 'f')
      digit = c - 'a' + 10;
    else
      throw std::runtime_error("invalid hex digit in graph serialization");
    const bool bit = (digit >> (3 - (k & 3))) & 1;
    g.set_edge_by_index(k, bit);
  }
  return g;
}

GraphSample VectorEmbedding::induced_graph(double tau) const {
  const int n = int(vectors.size());
  GraphSample g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (vectors[std::size_t(i)].dot(vectors[std::size_t(j)]) >= tau)
        g.set_edge(i, j, true);
  return g;
}

}  // namespace rgg
