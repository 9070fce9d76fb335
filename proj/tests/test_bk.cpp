#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "apsp/bk.hpp"
#include "apsp/estimate.hpp"
#include "apsp/graph.hpp"
#include "doctest.h"

using namespace apsp;

namespace {

Graph unit_path(vertex_t n) {
  std::vector<Edge> edges;
  for (vertex_t i = 0; i + 1 < n; ++i) edges.push_back({i, static_cast<vertex_t>(i + 1), 1});
  return Graph(n, std::move(edges));
}

Graph complete(vertex_t n) {
  std::vector<Edge> edges;
  for (vertex_t u = 0; u < n; ++u)
    for (vertex_t v = u + 1; v < n; ++v) edges.push_back({u, v, 1});
  return Graph(n, std::move(edges));
}

void check_hierarchy_invariants(const Graph& g, const RHierarchy& h) {
  const vertex_t n = g.num_vertices();
  const double logn = std::max(1.0, std::log(static_cast<double>(n)));
  REQUIRE(h.levels.size() == static_cast<std::size_t>(h.k + 1));
  CHECK(h.levels[0].size() == n);
  for (int i = 1; i <= h.k; ++i) {
    for (vertex_t v : h.levels[i])
      CHECK(std::binary_search(h.levels[i - 1].begin(), h.levels[i - 1].end(), v));
    for (vertex_t s : h.base.pivot_set)
      CHECK(std::binary_search(h.levels[i].begin(), h.levels[i].end(), s));
    CHECK(static_cast<double>(h.levels[i].size()) <=
          kPivotSetFactor * (static_cast<double>(n) / std::exp2(i)) * logn);
  }
  const auto exact = exact_apsp(g);
  for (int i = 0; i <= h.k; ++i) {
    for (vertex_t u = 0; u < n; ++u) {
      dist_t best = kInfDist;
      for (vertex_t s : h.levels[i]) best = std::min(best, exact.at(u, s));
      CHECK(h.level_pivot_dist[i][u] == best);
    }
  }
}

void check_contract(const Graph& g, const EstimateMatrix& est, const char* mult) {
  const auto exact = exact_apsp(g);
  const auto rep = verify_stretch(exact, est, Rational::from_decimal(mult), 0);
  CAPTURE(mult);
  CHECK(rep.violations == 0);
}

}  // namespace

TEST_CASE("r = 1 collapses the hierarchy to one level") {
  const Graph g = gen_gnp(40, 0.2, 20, 5);
  const RHierarchy h = build_r_hierarchy(g, 1.0, 7);
  CHECK(h.k == 0);
  REQUIRE(h.levels.size() == 1);
  CHECK(h.levels[0].size() == 40);
}

TEST_CASE("r = 0 on n = 16 keeps level sizes bounded across seeds") {
  const Graph g = gen_gnp(16, 0.4, 10, 11);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const RHierarchy h = build_r_hierarchy(g, 0.0, seed);
    CHECK(h.k == 4);
    check_hierarchy_invariants(g, h);
  }
}

TEST_CASE("hierarchy invariants on a random weighted graph") {
  const Graph g = gen_gnp(100, 0.2, 30, 79);
  const RHierarchy h = build_r_hierarchy(g, 0.5, 79);
  check_hierarchy_invariants(g, h);
  //

  // Cluster bound w.r.t. the blended set S comes from compute_bunches.
  const double cap = kBunchSizeFactor * std::log(100.0) / h.base.p;
  CHECK(static_cast<double>(h.base.max_cluster()) <= cap);
}

TEST_CASE("scheme with r = 1 leaves only self-pivots and bunch seeds") {
  const Graph g = gen_gnp(30, 0.3, 10, 13);
  const RHierarchy h = build_r_hierarchy(g, 1.0, 13);
  const PivotEstimates pe = bk_scheme(g, h);
  for (vertex_t u = 0; u < 30; ++u) CHECK(pe.delta.at(u, u) == 0);
}

TEST_CASE("scheme estimates are sound (real path lengths)") {
  const Graph g = gen_gnp(60, 0.2, 25, 17);
  const RHierarchy h = build_r_hierarchy(g, 0.5, 17);
  const PivotEstimates pe = bk_scheme(g, h);
  const auto exact = exact_apsp(g);
  for (vertex_t s = 0; s < 60; ++s)
    for (vertex_t v = 0; v < 60; ++v) CHECK(pe.delta.at(s, v) >= exact.at(s, v));
}

TEST_CASE("far-pivot pairs on a path get a 2x route from some level") {
  const Graph g = unit_path(4);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const RHierarchy h = build_r_hierarchy(g, 0.5, seed);
    if (h.k < 1 || h.levels[h.k].size() >= g.num_vertices()) continue;
    const PivotEstimates pe = bk_scheme(g, h);
    const auto exact = exact_apsp(g);
    for (vertex_t u = 0; u < 4; ++u)
      for (vertex_t v = 0; v < 4; ++v) {
        if (u == v) continue;
        const dist_t du = h.level_pivot_dist[h.k][u];
        const dist_t dv = h.level_pivot_dist[h.k][v];
        if (sat_add(du, dv) <= exact.at(u, v)) continue;
        dist_t best = kInfDist;
        for (int i = 0; i <= h.k; ++i) {
          const vertex_t pu = h.level_pivot[i][u];
          const vertex_t pv = h.level_pivot[i][v];
          if (pu != kNoVertex)
            best = std::min(best, sat_add(h.level_pivot_dist[i][u], pe.delta.at(pu, v)));
          if (pv != kNoVertex)
            best = std::min(best, sat_add(h.level_pivot_dist[i][v], pe.delta.at(pv, u)));
        }
        CHECK(best <= 2 * exact.at(u, v));
      }
  }
}

TEST_CASE("far-pivot pairs on a random graph get a 2x route from some level") {
  const Graph g = gen_gnp(80, 0.25, 40, 83);
  const RHierarchy h = build_r_hierarchy(g, 0.5, 83);
  const PivotEstimates pe = bk_scheme(g, h);
  const auto exact = exact_apsp(g);
  for (vertex_t u = 0; u < 80; ++u)
    for (vertex_t v = u + 1; v < 80; ++v) {
      if (exact.at(u, v) >= kInfDist) continue;
      const dist_t du = h.level_pivot_dist[h.k][u];
      const dist_t dv = h.level_pivot_dist[h.k][v];
      if (sat_add(du, dv) <= exact.at(u, v)) continue;  // near-pivot case
      dist_t best = kInfDist;
      for (int i = 0; i <= h.k; ++i) {
        const vertex_t pu = h.level_pivot[i][u];
        const vertex_t pv = h.level_pivot[i][v];
        if (pu != kNoVertex)
          best = std::min(best, sat_add(h.level_pivot_dist[i][u], pe.delta.at(pu, v)));
        if (pv != kNoVertex)
          best = std::min(best, sat_add(h.level_pivot_dist[i][v], pe.delta.at(pv, u)));
      }
      CAPTURE(u);
      CAPTURE(v);
      CHECK(best <= 2 * exact.at(u, v));
    }
}

TEST_CASE("complete graph answers are one or two") {
  for (double r : {0.0, 0.5, 1.0}) {
    const auto est = bk_apsp(complete(6), r, 0.0, 3);
    for (vertex_t u = 0; u < 6; ++u)
      for (vertex_t v = 0; v < 6; ++v) {
        if (u == v) continue;
        CHECK(est.at(u, v) >= 1);
        CHECK(est.at(u, v) <= 2);
      }
  }
}

TEST_CASE("classic 2-approximation at r = 1/2") {
  const Graph g = gen_gnp(120, 0.15, 60, 89);
  check_contract(g, bk_apsp(g, 0.5, 0.0, 89), "2");
}

TEST_CASE("relaxed eps keeps the declared contract") {
  const Graph g = gen_gnp(120, 0.15, 60, 89);
  check_contract(g, bk_apsp(g, 0.8, 0.25, 89), "2.25");
}

TEST_CASE("exactness inside the top-level bunch") {
  const Graph g = gen_gnp(90, 0.2, 35, 101);
  const RHierarchy h = build_r_hierarchy(g, 0.5, 101);
  const auto est = bk_apsp(g, 0.5, 0.0, 101);
  const auto exact = exact_apsp(g);
  std::size_t checked = 0;
  for (vertex_t u = 0; u < 90; ++u)
    for (const BunchMember& m : h.top_bunches[u]) {
      CHECK(est.at(u, m.vertex) == exact.at(u, m.vertex));
      ++checked;
    }
  CHECK(checked > 90);
}

TEST_CASE("(2,0) contract across the r grid") {
  const Graph g = gen_gnp(70, 0.2, 45, 7);
  for (double r : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    CAPTURE(r);
    check_contract(g, bk_apsp(g, r, 0.0, 7), "2");
  }
}

TEST_CASE("weighted barbell keeps the 2x bound across r") {
  std::vector<Edge> edges;
  SplitMix64 rng(12);
  auto clique = [&](vertex_t base) {
    for (vertex_t a = 0; a < 12; ++a)
      for (vertex_t b = a + 1; b < 12; ++b)
        edges.push_back({static_cast<vertex_t>(base + a), static_cast<vertex_t>(base + b),
                         1 + rng.next_below(9)});
  };
  clique(0);
  clique(12);
  edges.push_back({0, 24, 30});
  for (vertex_t i = 24; i < 49; ++i)
    edges.push_back({i, static_cast<vertex_t>(i + 1), 1 + rng.next_below(50)});
  edges.push_back({49, 12, 30});
  const Graph g(50, std::move(edges));
  const auto exact = exact_apsp(g);
  for (double r : {0.0, 0.5, 1.0})
    CHECK(verify_stretch(exact, bk_apsp(g, r, 0.0, 4), {2, 1}, 0).violations == 0);
}

TEST_CASE("input validation") {
  const Graph g = gen_gnp(20, 0.3, 10, 1);
  CHECK_THROWS_AS(build_r_hierarchy(g, -0.1, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_r_hierarchy(g, 1.5, 1), std::invalid_argument);
  CHECK_THROWS_AS(bk_apsp(g, 0.5, -1.0, 1), std::invalid_argument);
}
