#pragma once

#include <cstdint>
#include <vector>

#include "apsp/bunches.hpp"
#include "apsp/estimate.hpp"
#include "apsp/graph.hpp"

namespace apsp {

// Nested pivot sets S_0 = V down to S_k with k = round((1-r) * log2 n),
// each level half the previous by subsampling, every level blended with the
// cluster-bounding pivot set S of compute_bunches at rate p = n^(r-1).
struct RHierarchy {
  double r = 0.5;
  int k = 0;
  std::uint64_t seed = 0;
  std::vector<std::vector<vertex_t>> levels;        // S_0 .. S_k, sorted
  std::vector<std::vector<vertex_t>> level_pivot;   // p_i(u) per level
  std::vector<std::vector<dist_t>> level_pivot_dist;
  BunchStructure base;                              // bunches/clusters w.r.t. S
  // Bunches w.r.t. the top level S_k (subsets of the base bunches plus the
  // level-k pivot), with exact distances.
  std::vector<std::vector<BunchMember>> top_bunches;
  std::vector<std::vector<BunchMember>> top_clusters;

  bool in_top_bunch(vertex_t u, vertex_t v) const;
  dist_t top_bunch_dist(vertex_t u, vertex_t v) const;
};

RHierarchy build_r_hierarchy(const Graph& g, double r, std::uint64_t seed);

// Output of the level-wise subroutine: delta(s, v) rows for every vertex
// (S_0 = V), each entry a real path length. Rows of level-i pivots have been
// refined by Dijkstra on the sparsified edge set E_{S_{i+1}} seeded with the
// propagated bunch estimates.
struct PivotEstimates {
  EstimateMatrix delta;
};

PivotEstimates bk_scheme(const Graph& g, const RHierarchy& h);

// (2+eps)-approximate APSP: exact inside the top-level bunches, otherwise
// the best pivot route over all levels, with MSSP from S_k (eps forwarded)
// folded into the level-k rows.
EstimateMatrix bk_apsp(const Graph& g, double r, double eps, std::uint64_t seed);

}  // namespace apsp
