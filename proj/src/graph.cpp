#include "apsp/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "apsp/parallel.hpp"

namespace apsp {

Graph::Graph(vertex_t n, std::vector<Edge> edges) : n_(n) {
  for (auto& e : edges) {
    if (e.u >= n || e.v >= n) throw std::runtime_error("edge endpoint out of range");
    if (e.w > kMaxWeight) throw std::runtime_error("edge weight exceeds 2^40");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::erase_if(edges, [](const Edge& e) { return e.u == e.v; });
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : (a.v != b.v ? a.v < b.v : a.w < b.w);
  });
  // Parallel edges collapse to the minimum weight; the sort puts it first.
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [](const Edge& a, const Edge& b) {
                            return a.u == b.u && a.v == b.v;
                          }),
              edges.end());
  edges_ = std::move(edges);

  std::vector<std::size_t> deg(n_, 0);
  for (const Edge& e : edges_) {
    ++deg[e.u];
    ++deg[e.v];
    max_weight_ = std::max(max_weight_, e.w);
    if (e.w != 1) unweighted_ = false;
  }
  offsets_.assign(n_ + 1, 0);
  for (vertex_t u = 0; u < n_; ++u) offsets_[u + 1] = offsets_[u] + deg[u];
  adj_.resize(offsets_[n_]);
  adj_w_.resize(offsets_[n_]);
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const Edge& e : edges_) {
    adj_[cursor[e.u]] = e.v;
    adj_w_[cursor[e.u]++] = e.w;
    adj_[cursor[e.v]] = e.u;
    adj_w_[cursor[e.v]++] = e.w;
  }
  // Neighbor lists are sorted because the edge list is.
}

namespace {

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& why) {
  throw std::runtime_error("parse error at line " + std::to_string(line_no) +
                           ": " + why);
}

bool parse_u64(const std::string& tok, std::uint64_t& out) {
  if (tok.empty()) return false;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc{} && p == tok.data() + tok.size();
}

}  // namespace

Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file: " + path);
  std::string line;
  std::size_t line_no = 0;

  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r\n") != std::string::npos) return true;
    }
    return false;
  };

  if (!next_line()) throw std::runtime_error("empty graph file: " + path);
  std::istringstream header(line);
  std::uint64_t n = 0, m = 0;
  std::string a, b, extra;
  if (!(header >> a >> b) || (header >> extra)) parse_fail(line_no, "expected \"n m\"");
  if (!parse_u64(a, n) || !parse_u64(b, m)) parse_fail(line_no, "expected \"n m\"");
  if (n > static_cast<std::uint64_t>(kNoVertex)) parse_fail(line_no, "vertex count too large");

  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::uint64_t i = 0; i < m; ++i) {
    if (!next_line()) parse_fail(line_no + 1, "missing edge line");
    std::istringstream es(line);
    std::string su, sv, sw;
    es >> su >> sv;
    bool has_w = static_cast<bool>(es >> sw);
    if (es >> extra) parse_fail(line_no, "malformed edge line");
    if (su.empty() || sv.empty()) parse_fail(line_no, "malformed edge line");
    if ((has_w && !sw.empty() && sw[0] == '-') || su[0] == '-' || sv[0] == '-') {
      if (has_w && sw[0] == '-') parse_fail(line_no, "negative weight");
      parse_fail(line_no, "negative vertex id");
    }
    std::uint64_t u, v, w = 1;
    if (!parse_u64(su, u) || !parse_u64(sv, v)) parse_fail(line_no, "malformed edge line");
    if (has_w && !parse_u64(sw, w)) parse_fail(line_no, "malformed edge line");
    if (u >= n || v >= n) parse_fail(line_no, "vertex id out of range");
    if (w > kMaxWeight) parse_fail(line_no, "weight exceeds 2^40");
    edges.push_back({static_cast<vertex_t>(u), static_cast<vertex_t>(v), w});
  }
  return Graph(static_cast<vertex_t>(n), std::move(edges));
}

void save_graph(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write graph file: " + path);
  out << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << ' ' << e.w << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

Graph gen_gnp(vertex_t n, double p_edge, dist_t w_max, std::uint64_t seed) {
  if (p_edge < 0.0 || p_edge > 1.0) throw std::invalid_argument("p_edge outside [0,1]");
  if (w_max < 1 || w_max > kMaxWeight) throw std::invalid_argument("w_max outside [1, 2^40]");
  SplitMix64 rng(SplitMix64::split(seed, 0x676e70 /* "gnp" */));
  std::vector<Edge> edges;
  for (vertex_t u = 0; u + 1 < n; ++u) {
    for (vertex_t v = u + 1; v < n; ++v) {
      if (rng.next_unit() < p_edge) {
        dist_t w = w_max == 1 ? 1 : rng.next_below(w_max) + 1;
        edges.push_back({u, v, w});
      }
    }
  }
  return Graph(n, std::move(edges));
}

DistanceVector dijkstra(const Graph& g, vertex_t src) {
  if (src >= g.num_vertices()) throw std::invalid_argument("dijkstra: source out of range");
  DistanceVector out{src, std::vector<dist_t>(g.num_vertices(), kInfDist)};
  auto& dist = out.dist;
  dist[src] = 0;
  using Item = std::pair<dist_t, vertex_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  pq.push({0, src});
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d != dist[u]) continue;
    auto nb = g.neighbors(u);
    auto ws = g.weights(u);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      dist_t nd = sat_add(d, ws[i]);
      if (nd < dist[nb[i]]) {
        dist[nb[i]] = nd;
        pq.push({nd, nb[i]});
      }
    }
  }
  return out;
}

DistanceVector bfs(const Graph& g, vertex_t src) {
  if (src >= g.num_vertices()) throw std::invalid_argument("bfs: source out of range");
  if (!g.unweighted()) throw std::invalid_argument("bfs requires unit weights");
  DistanceVector out{src, std::vector<dist_t>(g.num_vertices(), kInfDist)};
  auto& dist = out.dist;
  dist[src] = 0;
  std::vector<vertex_t> frontier{src}, next;
  dist_t level = 0;
  while (!frontier.empty()) {
    ++level;
    next.clear();
    for (vertex_t u : frontier) {
      for (vertex_t v : g.neighbors(u)) {
        if (dist[v] == kInfDist) {
          dist[v] = level;
          next.push_back(v);
        }
      }
    }
    frontier.swap(next);
  }
  return out;
}

std::vector<std::vector<dist_t>> multi_source_rows(
    const Graph& g, const std::vector<vertex_t>& sources) {
  std::vector<std::vector<dist_t>> rows(sources.size());
  const bool hops = g.unweighted();
  parallel_for(0, sources.size(), [&](std::size_t i) {
    rows[i] = hops ? bfs(g, sources[i]).dist : dijkstra(g, sources[i]).dist;
  });
  return rows;
}

Graph degree_filtered_subgraph(const Graph& g, vertex_t threshold) {
  std::vector<Edge> kept;
  for (const Edge& e : g.edges()) {
    if (g.degree(e.u) <= threshold || g.degree(e.v) <= threshold) kept.push_back(e);
  }
  return Graph(g.num_vertices(), std::move(kept));
}

}  // namespace apsp
