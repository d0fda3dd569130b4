#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "avgjohn/metric.hpp"

namespace avgjohn {

using Edge = std::pair<std::size_t, std::size_t>;

// Simple undirected graph on vertices 0..n-1.
class Graph {
 public:
  Graph() = default;
  // Rejects self-loops, duplicate edges and out-of-range endpoints.
  Graph(std::size_t n, std::vector<Edge> edges);

  std::size_t size() const { return adj_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::size_t>& neighbors(std::size_t v) const { return adj_[v]; }
  // Common degree, or -1 when the graph is not regular.
  long degree() const;

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> adj_;
};

inline constexpr std::size_t kMaxGraphOrder = 4096;

Graph hypercube(int k);
Graph cycle(std::size_t n);
Graph complete(std::size_t n);
// Pairing model with whole-graph rejection of loops and multi-edges, then a
// connectivity check. Deterministic for a given seed.
Graph random_regular(std::size_t n, std::size_t degree, std::uint64_t seed);

bool is_connected(const Graph& g);
// All-pairs BFS distances. Throws on a disconnected graph. Uses up to
// thread_count() workers.
FiniteMetricSpace bfs_metric(const Graph& g);

// (sum_ij w_i w_j d_ij^s)^{1/s}.
double distance_moment(const FiniteMetricSpace& m, double s, const ProbabilityWeights& w);

// Cayley graph of SL_k(F_q) for the elementary generators I +/- E_ij,
// explored by right multiplication from the identity.
struct CayleyGroup {
  int k = 0;
  int q = 0;
  std::vector<std::vector<int>> elements;   // row-major k*k entries in [0, q)
  std::vector<std::vector<int>> generators; // deduplicated
  Graph graph;
  std::vector<std::string> labels;

  std::size_t order() const { return elements.size(); }
  std::size_t index_of(const std::vector<int>& x) const;

  std::vector<std::uint64_t> keys;  // sorted codes paired with indices below
  std::vector<std::size_t> key_index;
};

// Order cap 4096 covers SL_2(F_q) for q <= 13 and SL_3(F_2).
CayleyGroup cayley_sl(int k, int q);
std::vector<int> mat_mul_mod(const std::vector<int>& a, const std::vector<int>& b, int k, int q);
bool is_prime(int q);

// Worker count from AVGJOHN_THREADS, default 1.
unsigned thread_count();

}  // namespace avgjohn
