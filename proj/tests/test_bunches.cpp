#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "apsp/bunches.hpp"
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

// Bunch membership straight from the definition, via exact distances.
void check_against_definition(const Graph& g, const BunchStructure& bs) {
  const auto exact = exact_apsp(g);
  const vertex_t n = g.num_vertices();
  for (vertex_t u = 0; u < n; ++u) {
    dist_t best = kInfDist;
    vertex_t best_pivot = kNoVertex;
    for (vertex_t s : bs.pivot_set) {
      if (exact.at(u, s) < best || (exact.at(u, s) == best && s < best_pivot)) {
        best = exact.at(u, s);
        best_pivot = s;
      }
    }
    CHECK(bs.pivot_dist[u] == best);
    CHECK(bs.pivot[u] == best_pivot);

    for (vertex_t v = 0; v < n; ++v) {
      const bool expected = exact.at(u, v) < bs.pivot_dist[u] || v == bs.pivot[u];
      CHECK(bs.in_bunch(u, v) == expected);
      if (expected) CHECK(bs.bunch_dist(u, v) == exact.at(u, v));
    }
  }
}

}  // namespace

TEST_CASE("p = 1 samples every vertex") {
  const Graph g = gen_gnp(12, 0.4, 8, 3);
  const BunchStructure bs = compute_bunches(g, 1.0, 42);
  REQUIRE(bs.pivot_set.size() == 12);
  for (vertex_t u = 0; u < 12; ++u) {
    CHECK(bs.pivot[u] == u);
    CHECK(bs.pivot_dist[u] == 0);
    REQUIRE(bs.bunches[u].size() == 1);
    CHECK(bs.bunches[u][0].vertex == u);
    CHECK(bs.bunches[u][0].dist == 0);
    REQUIRE(bs.clusters[u].size() == 1);
    CHECK(bs.clusters[u][0].vertex == u);
  }
}

TEST_CASE("path with pivot forced to one endpoint") {
  const Graph g = unit_path(3);
  // Search seeds until the sample is exactly {0}: definition unrolled on a path.
  BunchStructure bs;
  bool found = false;
  for (std::uint64_t seed = 0; seed < 400 && !found; ++seed) {
    bs = compute_bunches(g, 1.0 / 3.0, seed);
    found = bs.pivot_set == std::vector<vertex_t>{0};
  }
  REQUIRE(found);
  CHECK(bs.pivot[2] == 0);
  CHECK(bs.pivot_dist[2] == 2);
  REQUIRE(bs.bunches[2].size() == 3);
  CHECK(bs.bunch_dist(2, 2) == 0);
  CHECK(bs.bunch_dist(2, 1) == 1);
  CHECK(bs.bunch_dist(2, 0) == 2);
}

TEST_CASE("random weighted graph matches the membership rule on sampled pairs") {
  const Graph g = gen_gnp(80, 0.15, 50, 21);
  const BunchStructure bs = compute_bunches(g, 0.2, 21);
  const auto exact = exact_apsp(g);
  SplitMix64 rng(99);
  for (int it = 0; it < 20; ++it) {
    const auto u = static_cast<vertex_t>(rng.next_below(80));
    const auto v = static_cast<vertex_t>(rng.next_below(80));
    const bool expected = exact.at(u, v) < bs.pivot_dist[u] || v == bs.pivot[u];
    CHECK(bs.in_bunch(u, v) == expected);
  }
}

TEST_CASE("full enumeration against the definition") {
  for (std::uint64_t seed : {5, 6}) {
    const Graph g = gen_gnp(60, 0.12, 30, seed);
    const BunchStructure bs = compute_bunches(g, 0.25, seed);
    check_against_definition(g, bs);
  }
  // Unweighted too.
  const Graph g = gen_gnp(50, 0.1, 1, 8);
  check_against_definition(g, compute_bunches(g, 0.3, 8));
}

TEST_CASE("bunch and cluster loads agree and bounds hold") {
  const Graph g = gen_gnp(100, 0.2, 40, 31);
  const double p = 0.25;
  const BunchStructure bs = compute_bunches(g, p, 31);
  std::size_t bunch_total = 0, cluster_total = 0;
  for (const auto& b : bs.bunches) bunch_total += b.size();
  for (const auto& c : bs.clusters) cluster_total += c.size();
  CHECK(bunch_total == cluster_total);

  const double cap = kBunchSizeFactor * std::log(100.0) / p;
  CHECK(static_cast<double>(bs.max_bunch()) <= cap);
  CHECK(static_cast<double>(bs.max_cluster()) <= cap);
  CHECK(static_cast<double>(bs.pivot_set.size()) <=
        kPivotSetFactor * p * 100 * std::log(100.0));
}

TEST_CASE("membership symmetry between bunches and clusters") {
  const Graph g = gen_gnp(70, 0.15, 20, 17);
  const BunchStructure bs = compute_bunches(g, 0.2, 17);
  for (vertex_t u = 0; u < 70; ++u)
    for (const BunchMember& m : bs.bunches[u]) {
      bool found = false;
      for (const BunchMember& c : bs.clusters[m.vertex])
        if (c.vertex == u) {
          found = true;
          CHECK(c.dist == m.dist);
        }
      CHECK(found);
    }
}

TEST_CASE("deterministic given the seed") {
  const Graph g = gen_gnp(60, 0.2, 10, 77);
  const BunchStructure a = compute_bunches(g, 0.3, 123);
  const BunchStructure b = compute_bunches(g, 0.3, 123);
  CHECK(a.pivot_set == b.pivot_set);
  CHECK(a.pivot == b.pivot);
  CHECK(a.pivot_dist == b.pivot_dist);
}

TEST_CASE("disconnected vertices keep an empty pivot and their own bunch") {
  Graph g(4, {{0, 1, 2}});  // vertices 2, 3 isolated
  bool saw_unpivoted = false;
  for (std::uint64_t seed = 0; seed < 50 && !saw_unpivoted; ++seed) {
    const BunchStructure bs = compute_bunches(g, 0.25, seed);
    for (vertex_t u = 0; u < 4; ++u) {
      if (bs.pivot[u] != kNoVertex) continue;
      saw_unpivoted = true;
      CHECK(bs.pivot_dist[u] == kInfDist);
      CHECK(bs.in_bunch(u, u));
    }
  }
  CHECK(saw_unpivoted);
}

TEST_CASE("zero-weight edges follow the strict membership rule") {
  // d(u, S) can be 0 for an unsampled vertex; its strict bunch is then empty
  // and only the pivot remains.
  const Graph g(4, {{0, 1, 0}, {1, 2, 3}, {2, 3, 0}, {0, 3, 9}});
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const BunchStructure bs = compute_bunches(g, 0.3, seed);
    check_against_definition(g, bs);
  }
}

TEST_CASE("pathological cluster loads exhaust the retry budget") {
  // A star at p = 0.5: whichever way sampling goes, some vertex collects a
  // cluster of about n/2 > 4 ln(n) / p, so every resample fails.
  std::vector<Edge> edges;
  for (vertex_t i = 1; i < 200; ++i) edges.push_back({0, i, 1});
  const Graph star(200, std::move(edges));
  CHECK_THROWS_WITH_AS(compute_bunches(star, 0.5, 1), doctest::Contains("size bounds"),
                       std::runtime_error);
}

TEST_CASE("serialization round trip and version check") {
  const Graph g = gen_gnp(40, 0.2, 15, 9);
  const BunchStructure bs = compute_bunches(g, 0.3, 9);
  const auto blob = serialize_bunches(bs);
  const BunchStructure rt = deserialize_bunches(blob.data(), blob.size());
  CHECK(rt.pivot_set == bs.pivot_set);
  CHECK(rt.pivot == bs.pivot);
  CHECK(rt.pivot_dist == bs.pivot_dist);
  REQUIRE(rt.bunches.size() == bs.bunches.size());
  for (vertex_t u = 0; u < 40; ++u) {
    REQUIRE(rt.bunches[u].size() == bs.bunches[u].size());
    for (std::size_t i = 0; i < bs.bunches[u].size(); ++i) {
      CHECK(rt.bunches[u][i].vertex == bs.bunches[u][i].vertex);
      CHECK(rt.bunches[u][i].dist == bs.bunches[u][i].dist);
    }
  }
  auto bad = blob;
  bad[8] ^= 0xff;  // bump the version field
  CHECK_THROWS_WITH_AS(deserialize_bunches(bad.data(), bad.size()),
                       doctest::Contains("version"), std::runtime_error);
}
