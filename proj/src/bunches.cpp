#include "apsp/bunches.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <queue>
#include <stdexcept>

#include "apsp/parallel.hpp"

namespace apsp {

namespace {

const BunchMember* find_member(const std::vector<BunchMember>& list, vertex_t v) {
  auto it = std::partition_point(list.begin(), list.end(),
                                 [v](const BunchMember& m) { return m.vertex < v; });
  return (it != list.end() && it->vertex == v) ? &*it : nullptr;
}

}  // namespace

bool BunchStructure::in_bunch(vertex_t u, vertex_t v) const {
  return find_member(bunches[u], v) != nullptr;
}

dist_t BunchStructure::bunch_dist(vertex_t u, vertex_t v) const {
  const BunchMember* m = find_member(bunches[u], v);
  return m ? m->dist : kInfDist;
}

std::size_t BunchStructure::max_bunch() const {
  std::size_t m = 0;
  for (const auto& b : bunches) m = std::max(m, b.size());
  return m;
}

std::size_t BunchStructure::max_cluster() const {
  std::size_t m = 0;
  for (const auto& c : clusters) m = std::max(m, c.size());
  return m;
}

void nearest_pivots(const Graph& g, const std::vector<vertex_t>& pivot_set,
                    std::vector<vertex_t>& pivot, std::vector<dist_t>& pivot_dist) {
  const vertex_t n = g.num_vertices();
  pivot.assign(n, kNoVertex);
  pivot_dist.assign(n, kInfDist);
  // Labels (dist, pivot id) ordered lexicographically; Dijkstra stays valid
  // because edge relaxation is monotone in that order.
  using Item = std::pair<dist_t, std::pair<vertex_t, vertex_t>>;  // (d, (src, u))
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  for (vertex_t s : pivot_set) {
    pivot[s] = s;
    pivot_dist[s] = 0;
  }
  for (vertex_t s : pivot_set) pq.push({0, {s, s}});
  while (!pq.empty()) {
    auto [d, sp] = pq.top();
    auto [src, u] = sp;
    pq.pop();
    if (d != pivot_dist[u] || src != pivot[u]) continue;
    auto nb = g.neighbors(u);
    auto ws = g.weights(u);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      const vertex_t v = nb[i];
      const dist_t nd = sat_add(d, ws[i]);
      if (nd < pivot_dist[v] || (nd == pivot_dist[v] && src < pivot[v])) {
        pivot_dist[v] = nd;
        pivot[v] = src;
        pq.push({nd, {src, v}});
      }
    }
  }
}

void grow_bunches(const Graph& g, const std::vector<vertex_t>& pivot,
                  const std::vector<dist_t>& pivot_dist,
                  std::vector<std::vector<BunchMember>>& bunches,
                  std::vector<std::vector<BunchMember>>& clusters) {
  const vertex_t n = g.num_vertices();
  clusters.assign(n, {});
  bunches.assign(n, {});

  // Strict cluster of w: {u : d(w,u) < d(u,S)}, grown by Dijkstra that only
  // relaxes out of accepted vertices. Any shortest path witnessing
  // membership has all its inner vertices accepted, so distances are exact.
  parallel_for(0, n, [&](std::size_t wi) {
    const vertex_t w = static_cast<vertex_t>(wi);
    std::vector<std::pair<vertex_t, dist_t>> reached;
    using Item = std::pair<dist_t, vertex_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    std::vector<std::pair<vertex_t, dist_t>> local;  // (vertex, tentative)
    // Sparse tentative-distance map to keep per-source work near the cluster
    // size: vertices touched are tracked and reset via the map itself.
    static thread_local std::vector<dist_t> tent;
    static thread_local std::vector<std::uint32_t> stamp;
    static thread_local std::uint32_t round = 0;
    if (tent.size() < n || round == ~std::uint32_t{0}) {
      tent.assign(std::max<std::size_t>(n, tent.size()), kInfDist);
      stamp.assign(tent.size(), 0);
      round = 0;
    }
    ++round;
    auto get = [&](vertex_t x) { return stamp[x] == round ? tent[x] : kInfDist; };
    auto set = [&](vertex_t x, dist_t d) {
      stamp[x] = round;
      tent[x] = d;
    };
    set(w, 0);
    pq.push({0, w});
    while (!pq.empty()) {
      auto [d, u] = pq.top();
      pq.pop();
      if (d != get(u)) continue;
      if (d >= pivot_dist[u]) continue;  // not in the strict cluster; stop here
      reached.push_back({u, d});
      auto nb = g.neighbors(u);
      auto ws = g.weights(u);
      for (std::size_t i = 0; i < nb.size(); ++i) {
        const dist_t nd = sat_add(d, ws[i]);
        if (nd < get(nb[i])) {
          set(nb[i], nd);
          pq.push({nd, nb[i]});
        }
      }
    }
    auto& cluster = clusters[wi];
    cluster.reserve(reached.size() + 1);
    for (auto [u, d] : reached) cluster.push_back({u, d});
  });

  // Pivot members: p(u) joins B(u) at distance d(u,S), i.e. u joins C(p(u)).
  // Strict growth never reaches them (the inequality is strict), so no
  // duplicates arise.
  for (vertex_t u = 0; u < n; ++u)
    if (pivot[u] != kNoVertex) clusters[pivot[u]].push_back({u, pivot_dist[u]});

  for (auto& c : clusters)
    std::sort(c.begin(), c.end(),
              [](const BunchMember& a, const BunchMember& b) { return a.vertex < b.vertex; });

  std::vector<std::size_t> bunch_size(n, 0);
  for (vertex_t w = 0; w < n; ++w)
    for (const BunchMember& m : clusters[w]) ++bunch_size[m.vertex];
  for (vertex_t u = 0; u < n; ++u) bunches[u].reserve(bunch_size[u]);
  for (vertex_t w = 0; w < n; ++w)
    for (const BunchMember& m : clusters[w]) bunches[m.vertex].push_back({w, m.dist});
  for (auto& b : bunches)
    std::sort(b.begin(), b.end(),
              [](const BunchMember& a, const BunchMember& b) { return a.vertex < b.vertex; });
}

BunchStructure compute_bunches(const Graph& g, double p, std::uint64_t seed,
                               double size_factor, double pivot_factor) {
  const vertex_t n = g.num_vertices();
  if (n == 0) throw std::invalid_argument("compute_bunches: empty graph");
  if (p < 1.0 / n || p > 1.0) throw std::invalid_argument("compute_bunches: p outside [1/n, 1]");

  const double logn = std::max(1.0, std::log(static_cast<double>(n)));
  const double size_cap = size_factor * logn / p;
  const double pivots_cap = pivot_factor * p * n * logn;

  for (int attempt = 0; attempt < kBunchMaxRetries; ++attempt) {
    BunchStructure bs;
    bs.p = p;
    bs.seed = seed;
    SplitMix64 rng(SplitMix64::split(seed, 0x62756e63 + attempt));
    for (vertex_t v = 0; v < n; ++v)
      if (rng.next_unit() < p) bs.pivot_set.push_back(v);
    if (bs.pivot_set.empty()) continue;
    if (static_cast<double>(bs.pivot_set.size()) > pivots_cap) continue;

    nearest_pivots(g, bs.pivot_set, bs.pivot, bs.pivot_dist);
    grow_bunches(g, bs.pivot, bs.pivot_dist, bs.bunches, bs.clusters);
    if (static_cast<double>(bs.max_bunch()) > size_cap) continue;
    if (static_cast<double>(bs.max_cluster()) > size_cap) continue;
    return bs;
  }
  throw std::runtime_error("compute_bunches: size bounds failed after " +
                           std::to_string(kBunchMaxRetries) + " samples");
}

namespace {

constexpr char kBunchMagic[8] = {'A', 'P', 'S', 'P', 'B', 'N', 'C', 'H'};
constexpr std::uint32_t kBunchVersion = 1;

void append_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t read_u64(const std::uint8_t* data, std::size_t size, std::size_t& pos) {
  if (pos + 8 > size) throw std::runtime_error("bunch blob truncated");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(data[pos + i]) << (8 * i);
  pos += 8;
  return v;
}

void append_members(std::vector<std::uint8_t>& out,
                    const std::vector<std::vector<BunchMember>>& lists) {
  append_u64(out, lists.size());
  std::uint64_t offset = 0;
  for (const auto& l : lists) {
    append_u64(out, offset);
    offset += l.size();
  }
  append_u64(out, offset);
  for (const auto& l : lists)
    for (const BunchMember& m : l) {
      append_u64(out, m.vertex);
      append_u64(out, m.dist);
    }
}

std::vector<std::vector<BunchMember>> read_members(const std::uint8_t* data, std::size_t size,
                                                   std::size_t& pos) {
  const std::uint64_t count = read_u64(data, size, pos);
  std::vector<std::uint64_t> offsets(count + 1);
  for (auto& o : offsets) o = read_u64(data, size, pos);
  std::vector<std::vector<BunchMember>> lists(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    if (offsets[i + 1] < offsets[i]) throw std::runtime_error("bunch blob corrupt");
    lists[i].resize(offsets[i + 1] - offsets[i]);
    for (auto& m : lists[i]) {
      m.vertex = static_cast<vertex_t>(read_u64(data, size, pos));
      m.dist = read_u64(data, size, pos);
    }
  }
  return lists;
}

}  // namespace

std::vector<std::uint8_t> serialize_bunches(const BunchStructure& bs) {
  std::vector<std::uint8_t> out;
  out.insert(out.end(), kBunchMagic, kBunchMagic + 8);
  append_u64(out, kBunchVersion);
  append_u64(out, bs.pivot.size());
  std::uint64_t p_bits;
  static_assert(sizeof(p_bits) == sizeof(bs.p));
  std::memcpy(&p_bits, &bs.p, 8);
  append_u64(out, p_bits);
  append_u64(out, bs.seed);
  append_u64(out, bs.pivot_set.size());
  for (vertex_t s : bs.pivot_set) append_u64(out, s);
  for (vertex_t v : bs.pivot) append_u64(out, v == kNoVertex ? ~std::uint64_t{0} : v);
  for (dist_t d : bs.pivot_dist) append_u64(out, d);
  append_members(out, bs.bunches);
  append_members(out, bs.clusters);
  return out;
}

BunchStructure deserialize_bunches(const std::uint8_t* data, std::size_t size,
                                   std::size_t* consumed) {
  std::size_t pos = 0;
  if (size < 8 || std::memcmp(data, kBunchMagic, 8) != 0)
    throw std::runtime_error("not a bunch blob");
  pos = 8;
  if (read_u64(data, size, pos) != kBunchVersion)
    throw std::runtime_error("bunch blob version mismatch");
  BunchStructure bs;
  const std::uint64_t n = read_u64(data, size, pos);
  std::uint64_t p_bits = read_u64(data, size, pos);
  std::memcpy(&bs.p, &p_bits, 8);
  bs.seed = read_u64(data, size, pos);
  bs.pivot_set.resize(read_u64(data, size, pos));
  for (auto& s : bs.pivot_set) s = static_cast<vertex_t>(read_u64(data, size, pos));
  bs.pivot.resize(n);
  for (auto& v : bs.pivot) {
    std::uint64_t raw = read_u64(data, size, pos);
    v = raw == ~std::uint64_t{0} ? kNoVertex : static_cast<vertex_t>(raw);
  }
  bs.pivot_dist.resize(n);
  for (auto& d : bs.pivot_dist) d = read_u64(data, size, pos);
  bs.bunches = read_members(data, size, pos);
  bs.clusters = read_members(data, size, pos);
  if (bs.bunches.size() != n || bs.clusters.size() != n)
    throw std::runtime_error("bunch blob corrupt");
  if (consumed) *consumed = pos;
  return bs;
}

}  // namespace apsp
