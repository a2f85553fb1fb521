#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rgg/sphere.hpp"

namespace rgg {

// Undirected simple graph on n vertices stored as a bitset over the
// C(n,2) unordered pairs. Pair order is (1,2),(1,3),...,(1,n),(2,3),...
// (1-based description; indices are 0-based in code) and is part of the
// serialization contract.
class GraphSample {
public:
  GraphSample() = default;
  explicit GraphSample(int n);

  int n() const { return n_; }
  long pair_count() const { return long(n_) * (n_ - 1) / 2; }

  // Lexicographic index of the pair {i, j}, i != j.
  long pair_index(int i, int j) const;

  bool edge(int i, int j) const;
  void set_edge(int i, int j, bool present);
  bool edge_by_index(long k) const;
  void set_edge_by_index(long k, bool present);

  long edge_count() const;
  int degree(int v) const;

  // True iff every edge of this graph is also an edge of g.
  bool subgraph_of(const GraphSample& g) const;

  bool operator==(const GraphSample& o) const {
    return n_ == o.n_ && words_ == o.words_;
  }

  // Dense code in [0, 2^C(n,2)); only valid while C(n,2) <= 63.
  std::uint64_t code() const;
  static GraphSample from_code(int n, std::uint64_t code);

  // Two-line serialization: "n\n<hex>\n". The hex string covers the pair
  // bitset in pair order, four pairs per digit, first pair in the most
  // significant bit of the first digit. Identical bytes across platforms.
  std::string serialize() const;
  static GraphSample deserialize(const std::string& text);

private:
  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

// n unit vectors of common dimension paired with the graph they induce.
struct VectorEmbedding {
  std::vector<Vec> vectors;

  int dim() const { return vectors.empty() ? 0 : int(vectors.front().size()); }

  // Graph with an edge wherever <v_i, v_j> >= tau.
  GraphSample induced_graph(double tau) const;
};

}  // namespace rgg
