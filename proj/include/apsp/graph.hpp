#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace apsp {

using vertex_t = std::uint32_t;
using dist_t = std::uint64_t;

// Distances saturate at kInfDist; it is strictly larger than any real path
// length (weights are capped at kMaxWeight = 2^40, so sums of up to 2^22
// edges stay below 2^63 - 1).
inline constexpr dist_t kInfDist = (dist_t{1} << 63) - 1;
inline constexpr dist_t kMaxWeight = dist_t{1} << 40;
inline constexpr vertex_t kNoVertex = static_cast<vertex_t>(-1);

inline dist_t sat_add(dist_t a, dist_t b) {
  if (a >= kInfDist || b >= kInfDist) return kInfDist;
  dist_t s = a + b;
  return s >= kInfDist ? kInfDist : s;
}

// Project PRNG: SplitMix64 (Steele, Lea, Flood 2014). Fixed here so that
// every randomized routine is bit-reproducible from its seed; sub-streams
// are derived with split().
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53 bits of precision.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in [0, bound); bound must be positive. The modulo bias is below
  // bound / 2^64 and irrelevant at the weight ranges used here.
  std::uint64_t next_below(std::uint64_t bound) { return next() % bound; }

  // Derives an independent seed for a named sub-stream.
  static std::uint64_t split(std::uint64_t seed, std::uint64_t stream) {
    SplitMix64 g(seed ^ (0x6a09e667f3bcc909ULL + stream * 0x9e3779b97f4a7c15ULL));
    g.next();
    return g.next();
  }

 private:
  std::uint64_t state_;
};

struct Edge {
  vertex_t u;
  vertex_t v;
  dist_t w;
};

// Immutable undirected graph in compressed adjacency form. Vertex ids are
// 0..n-1, weights are integers in [0, kMaxWeight]. Parallel edges collapse
// to the minimum weight and self-loops are dropped at construction.
class Graph {
 public:
  Graph() = default;
  Graph(vertex_t n, std::vector<Edge> edges);

  vertex_t num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }

  // Canonical edge list: u < v, sorted lexicographically, deduplicated.
  const std::vector<Edge>& edges() const { return edges_; }

  vertex_t degree(vertex_t u) const {
    return static_cast<vertex_t>(offsets_[u + 1] - offsets_[u]);
  }
  std::span<const vertex_t> neighbors(vertex_t u) const {
    return {adj_.data() + offsets_[u], offsets_[u + 1] - offsets_[u]};
  }
  std::span<const dist_t> weights(vertex_t u) const {
    return {adj_w_.data() + offsets_[u], offsets_[u + 1] - offsets_[u]};
  }

  bool unweighted() const { return unweighted_; }
  dist_t max_weight() const { return max_weight_; }

 private:
  vertex_t n_ = 0;
  bool unweighted_ = true;
  dist_t max_weight_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<vertex_t> adj_;
  std::vector<dist_t> adj_w_;
};

struct DistanceVector {
  vertex_t source = 0;
  std::vector<dist_t> dist;
};

// Text format: first line "n m", then m lines "u v w" (w optional, default
// 1). Throws std::runtime_error naming the offending line on malformed
// input, negative weights, or out-of-range vertex ids.
Graph load_graph(const std::string& path);
void save_graph(const Graph& g, const std::string& path);

// G(n, p) with weights uniform in [1, w_max]; bit-reproducible from seed.
Graph gen_gnp(vertex_t n, double p_edge, dist_t w_max, std::uint64_t seed);

DistanceVector dijkstra(const Graph& g, vertex_t src);

// Hop distances; requires an unweighted graph (all weights 1).
DistanceVector bfs(const Graph& g, vertex_t src);

// Rows of exact single-source distances, one per source, in order.
std::vector<std::vector<dist_t>> multi_source_rows(
    const Graph& g, const std::vector<vertex_t>& sources);

// Same vertex set; keeps an edge iff at least one endpoint has degree (in g)
// at most threshold.
Graph degree_filtered_subgraph(const Graph& g, vertex_t threshold);

}  // namespace apsp
