#include "apsp/bk.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "apsp/parallel.hpp"
#include "apsp/weighted.hpp"

namespace apsp {

namespace {

const BunchMember* find_member(const std::vector<BunchMember>& list, vertex_t v) {
  auto it = std::partition_point(list.begin(), list.end(),
                                 [v](const BunchMember& m) { return m.vertex < v; });
  return (it != list.end() && it->vertex == v) ? &*it : nullptr;
}

}  // namespace

bool RHierarchy::in_top_bunch(vertex_t u, vertex_t v) const {
  return find_member(top_bunches[u], v) != nullptr;
}

dist_t RHierarchy::top_bunch_dist(vertex_t u, vertex_t v) const {
  const BunchMember* m = find_member(top_bunches[u], v);
  return m ? m->dist : kInfDist;
}

RHierarchy build_r_hierarchy(const Graph& g, double r, std::uint64_t seed) {
  if (r < 0.0 || r > 1.0) throw std::invalid_argument("build_r_hierarchy: r outside [0,1]");
  const vertex_t n = g.num_vertices();
  if (n == 0) throw std::invalid_argument("build_r_hierarchy: empty graph");
  const double log2n = std::log2(std::max<double>(n, 2));
  const double logn = std::max(1.0, std::log(static_cast<double>(n)));
  const int k = static_cast<int>(std::lround((1.0 - r) * log2n));
  const double p_base = std::min(1.0, std::max(1.0 / n, std::pow(static_cast<double>(n), r - 1.0)));

  for (int attempt = 0; attempt < kBunchMaxRetries; ++attempt) {
    RHierarchy h;
    h.r = r;
    h.k = k;
    h.seed = seed;
    h.base = compute_bunches(g, p_base, SplitMix64::split(seed, 0x726b62 + attempt));

    // Subsample V at rate 1/2 per level, then blend the cluster-bounding set
    // S into every level.
    SplitMix64 rng(SplitMix64::split(seed, 0x6c766c + attempt));
    std::vector<std::vector<vertex_t>> raw(k + 1);
    raw[0].resize(n);
    for (vertex_t v = 0; v < n; ++v) raw[0][v] = v;
    for (int i = 1; i <= k; ++i)
      for (vertex_t v : raw[i - 1])
        if (rng.next_unit() < 0.5) raw[i].push_back(v);

    h.levels.resize(k + 1);
    bool sizes_ok = true;
    for (int i = 0; i <= k; ++i) {
      h.levels[i] = raw[i];
      h.levels[i].insert(h.levels[i].end(), h.base.pivot_set.begin(), h.base.pivot_set.end());
      std::sort(h.levels[i].begin(), h.levels[i].end());
      h.levels[i].erase(std::unique(h.levels[i].begin(), h.levels[i].end()), h.levels[i].end());
      const double cap = kPivotSetFactor * (static_cast<double>(n) / std::exp2(i)) * logn;
      if (i > 0 && static_cast<double>(h.levels[i].size()) > cap) sizes_ok = false;
    }
    const double top_cap =
        kPivotSetFactor * std::pow(static_cast<double>(n), r) * logn;
    if (static_cast<double>(h.levels[k].size()) > std::max(top_cap, 1.0)) sizes_ok = false;
    if (!sizes_ok) continue;

    h.level_pivot.resize(k + 1);
    h.level_pivot_dist.resize(k + 1);
    for (int i = 0; i <= k; ++i)
      nearest_pivots(g, h.levels[i], h.level_pivot[i], h.level_pivot_dist[i]);

    grow_bunches(g, h.level_pivot[k], h.level_pivot_dist[k], h.top_bunches, h.top_clusters);
    return h;
  }
  throw std::runtime_error("build_r_hierarchy: size bounds failed after retries");
}

PivotEstimates bk_scheme(const Graph& g, const RHierarchy& h) {
  const vertex_t n = g.num_vertices();
  PivotEstimates pe;
  pe.delta = EstimateMatrix(n, kInfDist);
  EstimateMatrix& delta = pe.delta;

  // Pivot entries: delta(u, p_i(u)) = d(u, p_i(u)), stored symmetrically.
  for (int i = 0; i <= h.k; ++i) {
    for (vertex_t u = 0; u < n; ++u) {
      const vertex_t p = h.level_pivot[i][u];
      if (p == kNoVertex) continue;
      const dist_t d = h.level_pivot_dist[i][u];
      delta.min_assign(u, p, d);
      delta.min_assign(p, u, d);
    }
  }

  // Propagate bunch walks into pivot rows: for u outside S_k, x in
  // B(u, S_k), neighbor y of x, every level i:
  //   delta(p_i(u), y) <- min(.., d(u, p_i(u)) + d(u, x) + w(x, y)).
  std::vector<bool> in_top(n, false);
  for (vertex_t s : h.levels[h.k]) in_top[s] = true;
  std::vector<std::pair<vertex_t, dist_t>> pivots_of_u;
  for (vertex_t u = 0; u < n; ++u) {
    if (in_top[u]) continue;
    pivots_of_u.clear();
    for (int i = 0; i <= h.k; ++i) {
      const vertex_t p = h.level_pivot[i][u];
      if (p != kNoVertex) pivots_of_u.push_back({p, h.level_pivot_dist[i][u]});
    }
    for (const BunchMember& x : h.top_bunches[u]) {
      auto nb = g.neighbors(x.vertex);
      auto ws = g.weights(x.vertex);
      for (std::size_t e = 0; e < nb.size(); ++e) {
        const dist_t walk = sat_add(x.dist, ws[e]);
        const vertex_t y = nb[e];
        for (const auto& [p, dp] : pivots_of_u) delta.min_assign(p, y, sat_add(dp, walk));
      }
    }
  }

  // Level sweeps: Dijkstra from every s in S_i on the sparsified edges
  // E_{S_{i+1}} plus the star of current estimates; rows only improve.
  for (int i = 0; i < h.k; ++i) {
    const std::vector<dist_t>& next_dist = h.level_pivot_dist[i + 1];
    std::vector<std::size_t> offsets(n + 1, 0);
    std::vector<vertex_t> adj;
    std::vector<dist_t> adj_w;
    for (const Edge& e : g.edges())
      if (e.w <= next_dist[e.u] || e.w <= next_dist[e.v]) {
        ++offsets[e.u + 1];
        ++offsets[e.v + 1];
      }
    for (vertex_t v = 0; v < n; ++v) offsets[v + 1] += offsets[v];
    adj.resize(offsets[n]);
    adj_w.resize(offsets[n]);
    std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
    for (const Edge& e : g.edges())
      if (e.w <= next_dist[e.u] || e.w <= next_dist[e.v]) {
        adj[cursor[e.u]] = e.v;
        adj_w[cursor[e.u]++] = e.w;
        adj[cursor[e.v]] = e.u;
        adj_w[cursor[e.v]++] = e.w;
      }

    const auto& sources = h.levels[i];
    parallel_for(0, sources.size(), [&](std::size_t si) {
      const vertex_t s = sources[si];
      dist_t* row = delta.row(s);
      using Item = std::pair<dist_t, vertex_t>;
      std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
      for (vertex_t v = 0; v < n; ++v)
        if (row[v] < kInfDist) pq.push({row[v], v});
      while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (d != row[u]) continue;
        for (std::size_t e = offsets[u]; e < offsets[u + 1]; ++e) {
          const dist_t nd = sat_add(d, adj_w[e]);
          if (nd < row[adj[e]]) {
            row[adj[e]] = nd;
            pq.push({nd, adj[e]});
          }
        }
      }
    });
  }
  return pe;
}

EstimateMatrix bk_apsp(const Graph& g, double r, double eps, std::uint64_t seed) {
  if (eps < 0) throw std::invalid_argument("bk_apsp: eps must be >= 0");
  const vertex_t n = g.num_vertices();
  const RHierarchy h = build_r_hierarchy(g, r, seed);
  PivotEstimates pe = bk_scheme(g, h);
  EstimateMatrix& delta = pe.delta;

  // Fold (1+eps)-approximate MSSP from the top level into its pivot rows.
  const auto rows = mssp(g, h.levels[h.k], eps);
  for (std::size_t i = 0; i < h.levels[h.k].size(); ++i) {
    dist_t* row = delta.row(h.levels[h.k][i]);
    const auto& fresh = rows[i];
    for (vertex_t v = 0; v < n; ++v) row[v] = std::min(row[v], fresh[v]);
  }

  EstimateMatrix out(n);
  parallel_for(0, n, [&](std::size_t ui) {
    const vertex_t u = static_cast<vertex_t>(ui);
    dist_t* orow = out.row(u);
    for (vertex_t v = 0; v < n; ++v) {
      if (v == u) continue;
      dist_t best = h.top_bunch_dist(u, v);
      if (best == kInfDist) best = h.top_bunch_dist(v, u);
      if (best == kInfDist) {
        for (int i = 0; i <= h.k; ++i) {
          const vertex_t pu = h.level_pivot[i][u];
          if (pu != kNoVertex)
            best = std::min(best, sat_add(h.level_pivot_dist[i][u], delta.at(pu, v)));
          const vertex_t pv = h.level_pivot[i][v];
          if (pv != kNoVertex)
            best = std::min(best, sat_add(h.level_pivot_dist[i][v], delta.at(pv, u)));
        }
      }
      orow[v] = best;
    }
  });
  // The two bunch-membership directions can disagree on which candidate they
  // saw first; symmetrize by entrywise min.
  for (vertex_t u = 0; u < n; ++u)
    for (vertex_t v = u + 1; v < n; ++v) {
      const dist_t m = std::min(out.at(u, v), out.at(v, u));
      out.at(u, v) = m;
      out.at(v, u) = m;
    }
  out.set_contract({Rational{2, 1} + Rational::from_double_floor(eps), 0});
  return out;
}

}  // namespace apsp
