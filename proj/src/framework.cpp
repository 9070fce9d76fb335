#include "apsp/framework.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "apsp/additive.hpp"
#include "apsp/bk.hpp"
#include "apsp/hitting.hpp"
#include "apsp/minplus.hpp"
#include "apsp/parallel.hpp"

namespace apsp {

namespace {

EstimateMatrix star_exact(const std::vector<std::vector<dist_t>>& rows, vertex_t n) {
  EstimateMatrix out(n, kInfDist);
  parallel_for(0, n, [&](std::size_t ui) {
    const vertex_t u = static_cast<vertex_t>(ui);
    dist_t* orow = out.row(u);
    for (const auto& row : rows) {
      const dist_t du = row[u];
      if (du >= kInfDist) continue;
      for (vertex_t v = 0; v < n; ++v) {
        const dist_t cand = sat_add(du, row[v]);
        if (cand < orow[v]) orow[v] = cand;
      }
    }
  });
  for (vertex_t u = 0; u < n; ++u) out.at(u, u) = 0;
  return out;
}

EstimateMatrix minplus_through(const std::vector<std::vector<dist_t>>& rows, vertex_t n,
                               double eps) {
  MinPlusMatrix dist_s(n, rows.size(), kInfDist);
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (vertex_t v = 0; v < n; ++v) dist_s.at(v, a) = rows[a][v];
  return paths_through_set(dist_s, eps);
}

int sparse_level_floor(vertex_t n, double r) {
  const double log2n = std::log2(std::max<double>(n, 2));
  return static_cast<int>(std::lround((1.0 - r) * log2n));
}

void seed_direct_edges(EstimateMatrix& m, const Graph& g) {
  for (const Edge& e : g.edges()) {
    m.min_assign(e.u, e.v, e.w);
    m.min_assign(e.v, e.u, e.w);
  }
}

// Largest 9-digit decimal not exceeding x, so a stretch parameter given as a
// double can be carried as an exact rational without loosening the bound.
std::string decimal_floor(double x) {
  auto scaled = static_cast<std::uint64_t>(std::floor(x * 1e9));
  std::string digits = std::to_string(scaled % 1000000000ull);
  digits.insert(digits.begin(), 9 - digits.size(), '0');
  return std::to_string(scaled / 1000000000ull) + "." + digits;
}

}  // namespace

AlgoA make_algo_a(const std::string& id) {
  if (id == "bk-half") {
    return {id,
            {{2, 1}, 0},
            [](const Graph& g, std::uint64_t seed) { return bk_apsp(g, 0.5, 0.0, seed); }};
  }
  if (id.rfind("additive+", 0) == 0) {
    const int k = std::stoi(id.substr(9));
    return {id,
            {{1, 1}, static_cast<dist_t>(k)},
            [k](const Graph& g, std::uint64_t) { return additive_apsp_k(g, k); }};
  }
  throw std::invalid_argument("unknown Algorithm A id: " + id);
}

AlgoB make_algo_b(const std::string& id) {
  if (id == "star-dijkstra") {
    return {id, {{1, 1}, 0}, star_exact};
  }
  if (id.rfind("minplus:", 0) == 0) {
    const Rational eps_q = Rational::from_decimal(id.substr(8));
    const double eps = eps_q.value();
    if (eps <= 0) throw std::invalid_argument("minplus B needs eps > 0: " + id);
    return {id,
            {Rational{1, 1} + eps_q, 0},
            [eps](const std::vector<std::vector<dist_t>>& rows, vertex_t n) {
              return minplus_through(rows, n, eps);
            }};
  }
  throw std::invalid_argument("unknown Algorithm B id: " + id);
}

EstimateMatrix framework_apsp(const Graph& g, const FrameworkConfig& cfg,
                              std::vector<LevelEstimate>* levels_out) {
  if (!g.unweighted()) throw std::invalid_argument("framework_apsp: weighted input");
  if (cfg.r < 0.0 || cfg.r > 1.0) throw std::invalid_argument("framework_apsp: r outside [0,1]");
  const vertex_t n = g.num_vertices();
  const int i_lo = sparse_level_floor(n, cfg.r);
  const int i_hi = static_cast<int>(std::ceil(std::log2(std::max<double>(n, 2))));

  const vertex_t sparse_threshold =
      static_cast<vertex_t>(std::min<double>(std::exp2(i_lo), n));
  const Graph sparse = degree_filtered_subgraph(g, sparse_threshold);
  EstimateMatrix result = cfg.algo_a.run(sparse, cfg.seed);

  for (int i = i_lo; i <= i_hi; ++i) {
    const vertex_t hit_threshold =
        static_cast<vertex_t>(std::min<double>(std::exp2(i), n));
    const HittingSet hs = hit(g, hit_threshold);
    if (hs.members.empty()) continue;
    const vertex_t band_threshold =
        static_cast<vertex_t>(std::min<double>(std::exp2(i + 1), n));
    const Graph band = degree_filtered_subgraph(g, band_threshold);
    const auto rows = multi_source_rows(band, hs.members);
    EstimateMatrix level = cfg.algo_b.run(rows, n);
    result.min_with(level);
    if (levels_out) levels_out->push_back({i, hs.members.size(), std::move(level)});
  }
  for (vertex_t u = 0; u < n; ++u) result.at(u, u) = 0;
  return result;
}

EstimateMatrix two_approx_unweighted(const Graph& g, double r, double eps, std::uint64_t seed) {
  if (eps <= 0) throw std::invalid_argument("two_approx_unweighted: eps must be > 0");
  FrameworkConfig cfg;
  cfg.r = r;
  cfg.seed = seed;
  cfg.algo_a = make_algo_a("bk-half");
  cfg.algo_b = make_algo_b("minplus:" + decimal_floor(eps / 2));
  const Rational half = Rational::from_decimal(decimal_floor(eps / 2));
  EstimateMatrix out = framework_apsp(g, cfg);
  seed_direct_edges(out, g);
  out.set_contract({Rational{2, 1} + half + half, 0});
  return out;
}

EstimateMatrix two_approx_combinatorial(const Graph& g, std::uint64_t seed) {
  FrameworkConfig cfg;
  cfg.r = 0.25;
  cfg.seed = seed;
  cfg.algo_a = make_algo_a("bk-half");
  cfg.algo_b = make_algo_b("star-dijkstra");
  EstimateMatrix out = framework_apsp(g, cfg);
  seed_direct_edges(out, g);
  out.set_contract({{2, 1}, 0});
  return out;
}

EstimateMatrix near_additive_apsp(const Graph& g, int k, double eps, double r) {
  if (k < 2 || k % 2 != 0) throw std::invalid_argument("near_additive_apsp: k must be even >= 2");
  if (eps <= 0) throw std::invalid_argument("near_additive_apsp: eps must be > 0");
  FrameworkConfig cfg;
  cfg.r = r;
  cfg.algo_a = make_algo_a("additive+" + std::to_string(k));
  cfg.algo_b = make_algo_b("minplus:" + decimal_floor(eps / 2));
  const Rational half = Rational::from_decimal(decimal_floor(eps / 2));
  EstimateMatrix out = framework_apsp(g, cfg);
  seed_direct_edges(out, g);
  out.set_contract({Rational{1, 1} + half + half, static_cast<dist_t>(k)});
  return out;
}

EstimateMatrix reduce_2eps_to_2(const Graph& g, const EstimateMatrix& delta_2eps,
                                const EstimateMatrix& delta_add) {
  if (!g.unweighted()) throw std::invalid_argument("reduce_2eps_to_2: weighted input");
  const vertex_t n = g.num_vertices();
  if (delta_2eps.size() != n || delta_add.size() != n)
    throw std::invalid_argument("reduce_2eps_to_2: size mismatch");
  const dist_t cutoff = delta_add.contract().add;
  if (cutoff == 0) throw std::invalid_argument("reduce_2eps_to_2: additive input lacks contract");
  // Multiplicative input must be (2 + eps, 0) with eps <= 1 / K.
  const Rational limit = Rational{2, 1} + Rational{1, static_cast<std::int64_t>(cutoff)};
  if (!(delta_2eps.contract().mult <= limit) || delta_2eps.contract().add != 0)
    throw std::invalid_argument("reduce_2eps_to_2: multiplicative input exceeds 2 + 1/K");

  EstimateMatrix out = delta_2eps;  // integral entries: floor is the identity
  out.min_with(delta_add);
  out.set_contract({{2, 1}, 0});
  return out;
}

EstimateMatrix two_approx_exact_stretch(const Graph& g, double r, std::uint64_t seed) {
  const vertex_t n = g.num_vertices();
  const int big_k =
      2 * std::max(1, static_cast<int>(std::ceil(std::log2(std::max<double>(n, 2)))));
  FrameworkConfig cfg;
  cfg.r = r;
  cfg.seed = seed;
  cfg.algo_a = make_algo_a("bk-half");
  cfg.algo_b = make_algo_b("minplus:1/" + std::to_string(2 * big_k));
  EstimateMatrix wide = framework_apsp(g, cfg);
  seed_direct_edges(wide, g);
  wide.set_contract({Rational{2, 1} + Rational{1, big_k}, 0});
  EstimateMatrix add = additive_apsp_k(g, big_k);
  return reduce_2eps_to_2(g, wide, add);
}

}  // namespace apsp
