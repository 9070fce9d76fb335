#include "apsp/additive.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "apsp/hitting.hpp"
#include "apsp/parallel.hpp"

namespace apsp {

AdditiveConfig AdditiveConfig::plan(const Graph& g, int k) {
  const vertex_t n = g.num_vertices();
  const int levels = k / 2 + 1;
  const double top = static_cast<double>(std::max<vertex_t>(n, 2));
  const double floor_deg =
      std::max(1.0, std::ceil(2.0 * static_cast<double>(g.num_edges()) / std::max<vertex_t>(n, 1)));
  AdditiveConfig cfg;
  cfg.k = k;
  for (int j = 0; j < levels; ++j) {
    const double frac = static_cast<double>(j) / levels;
    auto t = static_cast<vertex_t>(std::ceil(top * std::pow(floor_deg / top, frac)));
    t = std::min<vertex_t>(std::max<vertex_t>(t, 1), std::max<vertex_t>(n, 1));
    if (!cfg.thresholds.empty()) {
      if (cfg.thresholds.back() == 1) break;  // nothing strictly below 1
      if (t >= cfg.thresholds.back()) t = cfg.thresholds.back() - 1;
    }
    cfg.thresholds.push_back(t);
  }
  return cfg;
}

EstimateMatrix additive_apsp_k(const Graph& g, int k) {
  if (!g.unweighted()) throw std::invalid_argument("additive_apsp_k: weighted input");
  const vertex_t n = g.num_vertices();
  const int k_cap = 2 * static_cast<int>(std::ceil(std::log2(std::max<double>(n, 2))));
  if (k < 2 || k % 2 != 0 || k > std::max(2, k_cap))
    throw std::invalid_argument("additive_apsp_k: k must be even in [2, 2*ceil(log2 n)]");

  EstimateMatrix out(n);
  out.set_contract({{1, 1}, static_cast<dist_t>(k)});
  if (n < 2) return out;

  const AdditiveConfig cfg = AdditiveConfig::plan(g, k);
  for (const Edge& e : g.edges()) {
    out.min_assign(e.u, e.v, 1);
    out.min_assign(e.v, e.u, 1);
  }

  // Levels j: hitting set for degree >= t_{j+1}, BFS in the filter at t_j,
  // estimates through the hit set. The band [t_{j+1}, t_j] is covered with
  // surplus at most 2.
  const std::size_t levels = cfg.thresholds.size();
  for (std::size_t j = 0; j + 1 < levels; ++j) {
    const HittingSet hs = hit(g, cfg.thresholds[j + 1]);
    if (hs.members.empty()) continue;
    const Graph level_graph = degree_filtered_subgraph(g, cfg.thresholds[j]);
    const auto rows = multi_source_rows(level_graph, hs.members);
    parallel_for(0, n, [&](std::size_t u) {
      dist_t* row_u = out.row(static_cast<vertex_t>(u));
      for (const auto& row : rows) {
        const dist_t du = row[u];
        if (du >= kInfDist) continue;
        for (vertex_t v = 0; v < n; ++v) {
          const dist_t cand = sat_add(du, row[v]);
          if (cand < row_u[v]) row_u[v] = cand;
        }
      }
    });
  }

  // Sparse floor: exact BFS from every vertex on the sparsest edge set.
  {
    const Graph floor_graph = degree_filtered_subgraph(g, cfg.thresholds.back());
    parallel_for(0, n, [&](std::size_t u) {
      const auto dv = bfs(floor_graph, static_cast<vertex_t>(u));
      dist_t* row_u = out.row(static_cast<vertex_t>(u));
      for (vertex_t v = 0; v < n; ++v)
        if (dv.dist[v] < row_u[v]) row_u[v] = dv.dist[v];
    });
  }
  return out;
}

EstimateMatrix additive_apsp_2(const Graph& g) { return additive_apsp_k(g, 2); }

}  // namespace apsp
