#include "apsp/weighted.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "apsp/parallel.hpp"

namespace apsp {

std::vector<std::pair<std::uint64_t, dist_t>> PairTable::sorted_entries() const {
  std::vector<std::pair<std::uint64_t, dist_t>> out(map_.begin(), map_.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<dist_t>> mssp(const Graph& g, const std::vector<vertex_t>& sources,
                                      double eps) {
  if (eps < 0) throw std::invalid_argument("mssp: eps must be >= 0");
  // Exact rows are a valid (1+eps)-approximation for every eps; a
  // matrix-multiplication MSSP can be slotted in behind this signature.
  return multi_source_rows(g, sources);
}

PairTable adjacent_via_edges(const Graph& g, const BunchStructure& bs) {
  PairTable table;
  for (const Edge& e : g.edges()) {
    const auto& cu = bs.clusters[e.u];
    const auto& cv = bs.clusters[e.v];
    for (const BunchMember& a : cu) {
      const dist_t base = sat_add(a.dist, e.w);
      for (const BunchMember& b : cv) {
        if (a.vertex == b.vertex) continue;
        table.relax(a.vertex, b.vertex, sat_add(base, b.dist));
      }
    }
  }
  return table;
}

EstimateMatrix adjacent_via_bunch_dijkstra(const Graph& g, const BunchStructure& bs) {
  const vertex_t n = g.num_vertices();
  // Phase a: seed[vp][u] = min over u' in B(u) with {u',vp} in E of
  // d(u,u') + w(u',vp). One pass over edges and endpoint clusters.
  EstimateMatrix seed(n, kInfDist);
  for (vertex_t u = 0; u < n; ++u) seed.at(u, u) = kInfDist;
  for (const Edge& e : g.edges()) {
    for (const BunchMember& a : bs.clusters[e.u])
      seed.min_assign(e.v, a.vertex, sat_add(a.dist, e.w));
    for (const BunchMember& b : bs.clusters[e.v])
      seed.min_assign(e.u, b.vertex, sat_add(b.dist, e.w));
  }
  // Phase b: stitch through B(v).
  EstimateMatrix out(n, kInfDist);
  parallel_for(0, n, [&](std::size_t vi) {
    const vertex_t v = static_cast<vertex_t>(vi);
    for (const BunchMember& m : bs.bunches[v]) {
      const dist_t* arow = seed.row(m.vertex);
      for (vertex_t u = 0; u < n; ++u) {
        const dist_t cand = sat_add(arow[u], m.dist);
        if (cand < out.at(u, v)) out.at(u, v) = cand;
      }
    }
  });
  for (vertex_t u = 0; u < n; ++u) out.at(u, u) = 0;
  return out;
}

namespace {

std::vector<vertex_t> row_index(const Graph& g, const std::vector<vertex_t>& pivot_set) {
  std::vector<vertex_t> of(g.num_vertices(), kNoVertex);
  for (std::size_t i = 0; i < pivot_set.size(); ++i)
    of[pivot_set[i]] = static_cast<vertex_t>(i);
  return of;
}

double clamp_rate(double p, vertex_t n) {
  return std::min(1.0, std::max(1.0 / std::max<vertex_t>(n, 1), p));
}

std::size_t rows_bytes(const std::vector<std::vector<dist_t>>& rows) {
  std::size_t b = 0;
  for (const auto& r : rows) b += r.size() * sizeof(dist_t);
  return b;
}

}  // namespace

std::size_t DistanceOracle2::space_bytes() const {
  return rows_bytes(pivot_rows) + adjacent.size() * 16;
}

std::size_t DistanceOracle2W::space_bytes() const {
  return rows_bytes(pivot_rows) + overlap.size() * 16;
}

DistanceOracle2 build_oracle_2(const Graph& g, double p, std::uint64_t seed) {
  const vertex_t n = g.num_vertices();
  if (p <= 0) p = std::pow(static_cast<double>(std::max<vertex_t>(n, 2)), -1.0 / 3.0);
  p = clamp_rate(p, n);
  DistanceOracle2 o;
  o.bunches = compute_bunches(g, p, seed);
  o.pivot_rows = mssp(g, o.bunches.pivot_set, 0.0);
  o.pivot_row_of = row_index(g, o.bunches.pivot_set);
  o.adjacent = adjacent_via_edges(g, o.bunches);
  return o;
}

namespace {

template <typename Oracle>
dist_t oracle_query(const Oracle& o, const PairTable& table, vertex_t u, vertex_t v,
                    QueryBreakdown* breakdown) {
  const vertex_t n = static_cast<vertex_t>(o.bunches.pivot.size());
  if (u >= n || v >= n) throw std::invalid_argument("oracle query: vertex out of range");
  if (u == v) {
    if (breakdown) *breakdown = {0, 0, 0, 0};
    return 0;
  }
  // Exactly three candidate evaluations per query, independent of n.
  QueryBreakdown b;
  const vertex_t pu = o.bunches.pivot[u];
  if (pu != kNoVertex)
    b.via_pivot_u = sat_add(o.bunches.pivot_dist[u], o.pivot_rows[o.pivot_row_of[pu]][v]);
  ++b.lookups;
  const vertex_t pv = o.bunches.pivot[v];
  if (pv != kNoVertex)
    b.via_pivot_v = sat_add(o.bunches.pivot_dist[v], o.pivot_rows[o.pivot_row_of[pv]][u]);
  ++b.lookups;
  b.via_table = table.get(u, v);
  ++b.lookups;
  if (breakdown) *breakdown = b;
  return std::min({b.via_pivot_u, b.via_pivot_v, b.via_table});
}

}  // namespace

dist_t query_oracle_2(const DistanceOracle2& o, vertex_t u, vertex_t v,
                      QueryBreakdown* breakdown) {
  return oracle_query(o, o.adjacent, u, v, breakdown);
}

DistanceOracle2W build_oracle_2w(const Graph& g, double p, std::uint64_t seed, bool space_opt) {
  const vertex_t n = g.num_vertices();
  if (p <= 0) {
    const double nn = static_cast<double>(std::max<vertex_t>(n, 2));
    const double mm = static_cast<double>(std::max<std::size_t>(g.num_edges(), 2));
    if (space_opt)
      p = std::pow(nn, -1.0 / 3.0);
    else if (mm <= std::pow(nn, 1.5))
      p = std::pow(mm, -1.0 / 3.0);
    else
      p = std::pow(nn, -0.5);
  }
  p = clamp_rate(p, n);
  DistanceOracle2W o;
  o.bunches = compute_bunches(g, p, seed);
  o.pivot_rows = mssp(g, o.bunches.pivot_set, 0.0);
  o.pivot_row_of = row_index(g, o.bunches.pivot_set);
  for (vertex_t u = 0; u < n; ++u) {
    for (const BunchMember& w : o.bunches.bunches[u]) {
      for (const BunchMember& m : o.bunches.clusters[w.vertex]) {
        if (m.vertex == u) continue;
        o.overlap.relax(u, m.vertex, sat_add(w.dist, m.dist));
      }
    }
  }
  return o;
}

dist_t query_oracle_2w(const DistanceOracle2W& o, vertex_t u, vertex_t v,
                       QueryBreakdown* breakdown) {
  return oracle_query(o, o.overlap, u, v, breakdown);
}

EstimateMatrix dense_apsp(const Graph& g, double p, double eps, std::uint64_t seed) {
  if (eps < 0) throw std::invalid_argument("dense_apsp: eps must be >= 0");
  const vertex_t n = g.num_vertices();
  p = clamp_rate(p <= 0 ? std::pow(static_cast<double>(std::max<vertex_t>(n, 2)), -0.5) : p, n);
  const BunchStructure bs = compute_bunches(g, p, seed);
  const auto rows = mssp(g, bs.pivot_set, eps);
  const auto row_of = row_index(g, bs.pivot_set);

  EstimateMatrix out = adjacent_via_bunch_dijkstra(g, bs);
  parallel_for(0, n, [&](std::size_t ui) {
    const vertex_t u = static_cast<vertex_t>(ui);
    const vertex_t pu = bs.pivot[u];
    const dist_t du = bs.pivot_dist[u];
    const dist_t* prow = pu == kNoVertex ? nullptr : rows[row_of[pu]].data();
    dist_t* orow = out.row(u);
    for (vertex_t v = 0; v < n; ++v) {
      if (prow) {
        const dist_t cand = sat_add(du, prow[v]);
        if (cand < orow[v]) orow[v] = cand;
      }
    }
  });
  // Mirror the pivot-of-v route: out is kept symmetric by taking the
  // entrywise min with its transpose.
  for (vertex_t u = 0; u < n; ++u) {
    for (vertex_t v = u + 1; v < n; ++v) {
      const dist_t m = std::min(out.at(u, v), out.at(v, u));
      out.at(u, v) = m;
      out.at(v, u) = m;
    }
  }
  for (vertex_t u = 0; u < n; ++u) out.at(u, u) = 0;
  out.set_contract({Rational{2, 1} + Rational::from_double_floor(eps), 0});
  return out;
}

namespace {

constexpr char kOracleMagic[8] = {'A', 'P', 'S', 'P', 'O', 'R', 'C', 'L'};
constexpr std::uint64_t kOracleVersion = 1;

void append_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t read_u64(const std::vector<std::uint8_t>& data, std::size_t& pos) {
  if (pos + 8 > data.size()) throw std::runtime_error("oracle blob truncated");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(data[pos + i]) << (8 * i);
  pos += 8;
  return v;
}

template <typename Oracle>
void save_oracle(const Oracle& o, int kind, const std::string& path, const PairTable& table) {
  std::vector<std::uint8_t> blob;
  blob.insert(blob.end(), kOracleMagic, kOracleMagic + 8);
  append_u64(blob, kOracleVersion);
  append_u64(blob, static_cast<std::uint64_t>(kind));
  const auto bunches = serialize_bunches(o.bunches);
  append_u64(blob, bunches.size());
  blob.insert(blob.end(), bunches.begin(), bunches.end());
  append_u64(blob, o.pivot_rows.size());
  for (const auto& row : o.pivot_rows) {
    append_u64(blob, row.size());
    for (dist_t d : row) append_u64(blob, d);
  }
  const auto entries = table.sorted_entries();
  append_u64(blob, entries.size());
  for (const auto& [k, v] : entries) {
    append_u64(blob, k);
    append_u64(blob, v);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write oracle file: " + path);
  out.write(reinterpret_cast<const char*>(blob.data()),
            static_cast<std::streamsize>(blob.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open oracle file: " + path);
  return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in),
                                   std::istreambuf_iterator<char>());
}

template <typename Oracle>
Oracle load_oracle(const std::string& path, int expected_kind, PairTable Oracle::* table) {
  const auto blob = read_file(path);
  std::size_t pos = 0;
  if (blob.size() < 8 || std::memcmp(blob.data(), kOracleMagic, 8) != 0)
    throw std::runtime_error("not an oracle file: " + path);
  pos = 8;
  if (read_u64(blob, pos) != kOracleVersion)
    throw std::runtime_error("oracle version mismatch: " + path);
  if (read_u64(blob, pos) != static_cast<std::uint64_t>(expected_kind))
    throw std::runtime_error("oracle kind mismatch: " + path);
  Oracle o;
  const std::uint64_t bunch_size = read_u64(blob, pos);
  if (pos + bunch_size > blob.size()) throw std::runtime_error("oracle blob truncated");
  std::size_t used = 0;
  o.bunches = deserialize_bunches(blob.data() + pos, bunch_size, &used);
  pos += bunch_size;
  o.pivot_rows.resize(read_u64(blob, pos));
  for (auto& row : o.pivot_rows) {
    row.resize(read_u64(blob, pos));
    for (auto& d : row) d = read_u64(blob, pos);
  }
  const std::uint64_t entries = read_u64(blob, pos);
  (o.*table).reserve(entries);
  for (std::uint64_t i = 0; i < entries; ++i) {
    const std::uint64_t k = read_u64(blob, pos);
    const dist_t v = read_u64(blob, pos);
    (o.*table).relax(static_cast<vertex_t>(k >> 32), static_cast<vertex_t>(k & 0xffffffffu), v);
  }
  o.pivot_row_of.assign(o.bunches.pivot.size(), kNoVertex);
  for (std::size_t i = 0; i < o.bunches.pivot_set.size(); ++i)
    o.pivot_row_of[o.bunches.pivot_set[i]] = static_cast<vertex_t>(i);
  return o;
}

}  // namespace

void save_oracle_2(const DistanceOracle2& o, const std::string& path) {
  save_oracle(o, 1, path, o.adjacent);
}

DistanceOracle2 load_oracle_2(const std::string& path) {
  return load_oracle<DistanceOracle2>(path, 1, &DistanceOracle2::adjacent);
}

void save_oracle_2w(const DistanceOracle2W& o, const std::string& path) {
  save_oracle(o, 2, path, o.overlap);
}

DistanceOracle2W load_oracle_2w(const std::string& path) {
  return load_oracle<DistanceOracle2W>(path, 2, &DistanceOracle2W::overlap);
}

int oracle_kind(const std::string& path) {
  const auto blob = read_file(path);
  std::size_t pos = 0;
  if (blob.size() < 8 || std::memcmp(blob.data(), kOracleMagic, 8) != 0)
    throw std::runtime_error("not an oracle file: " + path);
  pos = 8;
  if (read_u64(blob, pos) != kOracleVersion)
    throw std::runtime_error("oracle version mismatch: " + path);
  return static_cast<int>(read_u64(blob, pos));
}

}  // namespace apsp
