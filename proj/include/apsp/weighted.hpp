#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "apsp/bunches.hpp"
#include "apsp/estimate.hpp"
#include "apsp/graph.hpp"

namespace apsp {

// Sparse table over unordered vertex pairs; absent keys read as infinity.
class PairTable {
 public:
  static std::uint64_t key(vertex_t u, vertex_t v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | v;
  }
  void relax(vertex_t u, vertex_t v, dist_t value) {
    auto [it, inserted] = map_.try_emplace(key(u, v), value);
    if (!inserted && value < it->second) it->second = value;
  }
  dist_t get(vertex_t u, vertex_t v) const {
    auto it = map_.find(key(u, v));
    return it == map_.end() ? kInfDist : it->second;
  }
  std::size_t size() const { return map_.size(); }
  // Key-sorted snapshot for serialization and deterministic iteration.
  std::vector<std::pair<std::uint64_t, dist_t>> sorted_entries() const;
  void reserve(std::size_t n) { map_.reserve(n); }

 private:
  std::unordered_map<std::uint64_t, dist_t> map_;
};

// Multi-source shortest paths from S, one row per source. Interface admits a
// (1+eps)-approximate implementation; the shipped one runs Dijkstra per
// source and returns exact rows for every eps.
std::vector<std::vector<dist_t>> mssp(const Graph& g, const std::vector<vertex_t>& sources,
                                      double eps);

// delta_adjacent(u,v) = min{ d(u,u') + w(u',v') + d(v',v) : {u',v'} in E,
// u' in B(u), v' in B(v) }, computed edge-by-edge over cluster pairs.
// Diagonal pairs are skipped.
PairTable adjacent_via_edges(const Graph& g, const BunchStructure& bs);

// Same quantity as a full n-by-n matrix (kInfDist where no qualifying edge
// exists, zero diagonal), via the two-phase bunch-relaxation: phase a seeds
// every edge into the clusters of its endpoints, phase b stitches through
// B(v). Agrees with adjacent_via_edges entrywise.
EstimateMatrix adjacent_via_bunch_dijkstra(const Graph& g, const BunchStructure& bs);

struct QueryBreakdown {
  dist_t via_pivot_u = kInfDist;
  dist_t via_pivot_v = kInfDist;
  dist_t via_table = kInfDist;
  unsigned lookups = 0;
};

// Constant-query-time 2-approximate oracle: exact pivot distance table plus
// the adjacent-pair table.
struct DistanceOracle2 {
  BunchStructure bunches;
  std::vector<std::vector<dist_t>> pivot_rows;  // one row per pivot_set entry
  std::vector<vertex_t> pivot_row_of;           // vertex -> row index (kNoVertex if not a pivot)
  PairTable adjacent;

  std::size_t space_bytes() const;
};

// (2, W_uv)-approximate oracle: pivot rows plus the overlap table
// delta_overlap(u,v) = min{ d(u,w) + d(w,v) : w in B(u), v in C(w) }.
struct DistanceOracle2W {
  BunchStructure bunches;
  std::vector<std::vector<dist_t>> pivot_rows;
  std::vector<vertex_t> pivot_row_of;
  PairTable overlap;

  std::size_t space_bytes() const;
};

// Shipped default p = n^(-1/3) (clamped to [1/n, 1]) when p <= 0.
DistanceOracle2 build_oracle_2(const Graph& g, double p, std::uint64_t seed);
dist_t query_oracle_2(const DistanceOracle2& o, vertex_t u, vertex_t v,
                      QueryBreakdown* breakdown = nullptr);

// Default p (when p <= 0) follows the preprocessing-time balancing:
// m^(-1/3) for m <= n^(3/2), else n^(-1/2); pass space_opt to select the
// space-optimizing n^(-1/3) branch instead.
DistanceOracle2W build_oracle_2w(const Graph& g, double p, std::uint64_t seed,
                                 bool space_opt = false);
dist_t query_oracle_2w(const DistanceOracle2W& o, vertex_t u, vertex_t v,
                       QueryBreakdown* breakdown = nullptr);

// Full (2+eps)-approximate table: entrywise min of the pivot routes (MSSP
// from S with parameter eps) and the adjacent matrix.
EstimateMatrix dense_apsp(const Graph& g, double p, double eps, std::uint64_t seed);

// Oracle persistence (versioned binary blob, little endian).
void save_oracle_2(const DistanceOracle2& o, const std::string& path);
DistanceOracle2 load_oracle_2(const std::string& path);
void save_oracle_2w(const DistanceOracle2W& o, const std::string& path);
DistanceOracle2W load_oracle_2w(const std::string& path);
// Peeks the kind tag: 1 = two, 2 = two-w.
int oracle_kind(const std::string& path);

}  // namespace apsp
