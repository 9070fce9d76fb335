#pragma once

#include <vector>

#include "apsp/estimate.hpp"
#include "apsp/graph.hpp"

namespace apsp {

// Level plan for the +k scheme: k/2 + 1 geometric degree thresholds from n
// down to the average-degree floor.
struct AdditiveConfig {
  int k = 2;
  std::vector<vertex_t> thresholds;  // strictly decreasing

  static AdditiveConfig plan(const Graph& g, int k);
};

// Purely additive APSP for unweighted graphs, contract (1, k) for even k.
//
// Level j pairs a hitting set for degree >= t_{j+1} with BFS rows on the
// subgraph filtered at t_j: any pair whose shortest path tops out in
// [t_{j+1}, t_j] picks up a +2 detour through a hit neighbor. Paths below
// the last threshold are solved exactly by BFS from every vertex on the
// sparsest edge set. Estimates are BFS path lengths throughout, so they
// never drop below the true distance (and are usually well inside the +k
// budget).
EstimateMatrix additive_apsp_k(const Graph& g, int k);

// The k = 2 instance, contract (1, 2).
EstimateMatrix additive_apsp_2(const Graph& g);

}  // namespace apsp
