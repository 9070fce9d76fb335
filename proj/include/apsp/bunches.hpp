#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "apsp/graph.hpp"

namespace apsp {

// Size bound constants, shared with the r-hierarchy: |S| <= kPivotSetFactor
// * p * n * ln n, and every bunch/cluster <= kBunchSizeFactor * ln n / p.
// Violations resample with the next derived seed, up to kBunchMaxRetries.
inline constexpr double kBunchSizeFactor = 4.0;
inline constexpr double kPivotSetFactor = 4.0;
inline constexpr int kBunchMaxRetries = 20;

struct BunchMember {
  vertex_t vertex;
  dist_t dist;
};

// Sampled pivot set S, nearest pivots, bunches B(u) = {v : d(u,v) <
// d(u,S)} united with {p(u)}, and the inverse clusters C(v) = {u : v in
// B(u)}, all with exact distances. Vertices in components without a pivot
// keep pivot = kNoVertex and pivot_dist = kInfDist; their bunches span their
// component.
struct BunchStructure {
  double p = 1.0;
  std::uint64_t seed = 0;
  std::vector<vertex_t> pivot_set;          // sorted
  std::vector<vertex_t> pivot;              // per vertex, kNoVertex if none
  std::vector<dist_t> pivot_dist;           // d(u, S)
  std::vector<std::vector<BunchMember>> bunches;   // sorted by vertex id
  std::vector<std::vector<BunchMember>> clusters;  // sorted by vertex id

  bool in_bunch(vertex_t u, vertex_t v) const;
  // Stored d(u,v) for v in B(u); kInfDist if absent.
  dist_t bunch_dist(vertex_t u, vertex_t v) const;
  std::size_t max_bunch() const;
  std::size_t max_cluster() const;
};

// Pivot assignment for an explicit pivot set: lexicographic multi-source
// Dijkstra, so ties go to the smallest pivot id.
void nearest_pivots(const Graph& g, const std::vector<vertex_t>& pivot_set,
                    std::vector<vertex_t>& pivot, std::vector<dist_t>& pivot_dist);

// Bunches and clusters for a pivot assignment (cluster growth by truncated
// Dijkstra); no size enforcement.
void grow_bunches(const Graph& g, const std::vector<vertex_t>& pivot,
                  const std::vector<dist_t>& pivot_dist,
                  std::vector<std::vector<BunchMember>>& bunches,
                  std::vector<std::vector<BunchMember>>& clusters);

// Samples S at rate p and builds the full structure; resamples with the next
// derived seed while the size bounds fail (throws after kBunchMaxRetries).
// The bound factors default to the documented constants above.
BunchStructure compute_bunches(const Graph& g, double p, std::uint64_t seed,
                               double size_factor = kBunchSizeFactor,
                               double pivot_factor = kPivotSetFactor);

// Versioned binary blob: header, S, pivot arrays, CSR bunches and clusters.
std::vector<std::uint8_t> serialize_bunches(const BunchStructure& bs);
BunchStructure deserialize_bunches(const std::uint8_t* data, std::size_t size,
                                   std::size_t* consumed = nullptr);

}  // namespace apsp
