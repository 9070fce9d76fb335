#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "apsp/estimate.hpp"
#include "apsp/graph.hpp"

namespace apsp {

// Sparse-graph APSP plugged into the degree-layered frame as Algorithm A.
struct AlgoA {
  std::string name;
  StretchContract contract;
  std::function<EstimateMatrix(const Graph&, std::uint64_t seed)> run;
};

// Through-set routine (Algorithm B): given exact rows d(a, v) for a in S_i
// as an |S|-by-n table, estimates min_a d(a,u) + d(a,v) for all pairs.
struct AlgoB {
  std::string name;
  StretchContract contract;
  std::function<EstimateMatrix(const std::vector<std::vector<dist_t>>& rows, vertex_t n)> run;
};

struct FrameworkConfig {
  double r = 0.5;
  AlgoA algo_a;
  AlgoB algo_b;
  std::uint64_t seed = 0;
};

// Registered names: Algorithm A ids {"bk-half", "additive+k" (k even)},
// Algorithm B ids {"star-dijkstra", "minplus:<eps>"}. The CLI resolves its
// flags through these.
AlgoA make_algo_a(const std::string& id);
AlgoB make_algo_b(const std::string& id);

// Per-level intermediates, exposed for inspection and tests.
struct LevelEstimate {
  int level;                      // i: hitting threshold 2^i, filter 2^(i+1)
  std::size_t hitting_set_size;
  EstimateMatrix estimate;        // Algorithm B's output at this level
};

// Degree-layered APSP for unweighted graphs: Algorithm A on the subgraph of
// edges with a low-degree endpoint, Algorithm B through a hitting set per
// degree band, combined entrywise. Every pair gets contract_A or
// (mult_B, add_B + 2 mult_B). The sparse cutoff is 2^i_lo with i_lo =
// round((1-r) * log2 n), so the degree bands tile.
EstimateMatrix framework_apsp(const Graph& g, const FrameworkConfig& cfg,
                              std::vector<LevelEstimate>* levels_out = nullptr);

// (2+eps)-approximate unweighted APSP: A = bk-half on the sparse subgraph,
// B = approximate min-plus with eps/2; direct edges seed the estimate so
// adjacent pairs stay exact.
EstimateMatrix two_approx_unweighted(const Graph& g, double r, double eps,
                                     std::uint64_t seed = 0);

// 2-approximate unweighted APSP at r = 1/4 with the exact through-set
// routine; never touches the min-plus module.
EstimateMatrix two_approx_combinatorial(const Graph& g, std::uint64_t seed = 0);

// (1+eps, k)-approximate unweighted APSP for even k: A = additive +k.
EstimateMatrix near_additive_apsp(const Graph& g, int k, double eps, double r);

// Entrywise hat(d) = min(floor(delta), delta_add) for the 2+eps -> 2
// reduction; requires delta_2eps with contract (2 + 1/K, 0) and delta_add
// with contract (1, K) for the same K. Entries here are integral, so the
// floor is the identity; the contract argument is unchanged.
EstimateMatrix reduce_2eps_to_2(const Graph& g, const EstimateMatrix& delta_2eps,
                                const EstimateMatrix& delta_add);

// Clean 2-approximation: two_approx_unweighted at eps = 1/K folded
// with additive +K, K = 2 * ceil(log2 n). Contract (2, 0).
EstimateMatrix two_approx_exact_stretch(const Graph& g, double r, std::uint64_t seed = 0);

}  // namespace apsp
