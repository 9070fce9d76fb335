// Command-line harness: graph generation, approximate APSP runs, oracle
// build/query, stretch verification, and preprocessing benchmarks. Reports
// are flat key=value lines; exit codes are 0 (pass), 1 (contract
// violation), 2 (usage or input error).

#include <chrono>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "apsp/bk.hpp"
#include "apsp/estimate.hpp"
#include "apsp/framework.hpp"
#include "apsp/graph.hpp"
#include "apsp/weighted.hpp"

namespace {

using namespace apsp;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

constexpr vertex_t kTextLimit = 4096;  // text matrices above this are refused

void write_matrix(const EstimateMatrix& m, const std::string& path, const std::string& format) {
  if (format == "text") {
    if (m.size() > kTextLimit)
      throw CLI::ValidationError("--format",
                                 "text mode refused for n > " + std::to_string(kTextLimit));
    save_estimate_text(m, path);
  } else {
    save_estimate_binary(m, path);
  }
}

int run_gen(vertex_t n, double p_edge, dist_t w_max, std::uint64_t seed,
            const std::string& out) {
  const auto t0 = Clock::now();
  Graph g = gen_gnp(n, p_edge, w_max, seed);
  save_graph(g, out);
  std::printf("cmd=gen n=%u m=%zu p_edge=%g wmax=%llu seed=%llu output=%s time_ms=%.1f\n",
              g.num_vertices(), g.num_edges(), p_edge,
              static_cast<unsigned long long>(w_max), static_cast<unsigned long long>(seed),
              out.c_str(), ms_since(t0));
  return 0;
}

int run_apsp(const std::string& algo, const std::string& graph_path, const std::string& out,
             const std::string& format, double r, double eps, int k, double p,
             std::uint64_t seed, bool audit) {
  const auto t_load = Clock::now();
  const Graph g = load_graph(graph_path);
  const double load_ms = ms_since(t_load);
  const auto t0 = Clock::now();
  EstimateMatrix est;
  if (algo == "exact")
    est = exact_apsp(g);
  else if (algo == "two-approx")
    est = two_approx_exact_stretch(g, r, seed);
  else if (algo == "two-approx-comb")
    est = two_approx_combinatorial(g, seed);
  else if (algo == "near-additive")
    est = near_additive_apsp(g, k, eps, r);
  else if (algo == "dense-weighted")
    est = dense_apsp(g, p, eps, seed);
  else if (algo == "bk")
    est = bk_apsp(g, r, eps, seed);
  else
    throw CLI::ValidationError("--algo", "unknown algorithm: " + algo);
  const double algo_ms = ms_since(t0);

  const auto t_write = Clock::now();
  if (!out.empty()) write_matrix(est, out, format);
  const double write_ms = ms_since(t_write);
  const StretchContract contract = est.contract();
  const std::size_t bytes = static_cast<std::size_t>(est.size()) * est.size() * sizeof(dist_t);
  std::printf("cmd=apsp algo=%s n=%u m=%zu r=%g eps=%g k=%d p=%g seed=%llu "
              "contract_mult=%s contract_add=%llu matrix_bytes=%zu "
              "time_load_ms=%.1f time_algo_ms=%.1f time_write_ms=%.1f output=%s\n",
              algo.c_str(), g.num_vertices(), g.num_edges(), r, eps, k, p,
              static_cast<unsigned long long>(seed), contract.mult.str().c_str(),
              static_cast<unsigned long long>(contract.add), bytes, load_ms, algo_ms, write_ms,
              out.empty() ? "-" : out.c_str());
  if (!audit) return 0;

  const auto t1 = Clock::now();
  const EstimateMatrix exact = exact_apsp(g);
  const StretchReport rep = verify_stretch(exact, est, contract.mult, contract.add);
  std::printf("audit_mult=%s audit_add=%llu max_ratio=%.6f max_surplus=%llu violations=%llu "
              "time_audit_ms=%.1f\n",
              contract.mult.str().c_str(), static_cast<unsigned long long>(contract.add),
              rep.max_ratio, static_cast<unsigned long long>(rep.max_surplus),
              static_cast<unsigned long long>(rep.violations), ms_since(t1));
  return rep.violations == 0 ? 0 : 1;
}

int run_oracle_build(const std::string& kind, const std::string& graph_path,
                     const std::string& out, double p, std::uint64_t seed, bool space_opt) {
  const Graph g = load_graph(graph_path);
  const auto t0 = Clock::now();
  std::size_t pivots = 0, entries = 0, bytes = 0;
  if (kind == "two") {
    DistanceOracle2 o = build_oracle_2(g, p, seed);
    save_oracle_2(o, out);
    pivots = o.bunches.pivot_set.size();
    entries = o.adjacent.size();
    bytes = o.space_bytes();
  } else if (kind == "two-w") {
    DistanceOracle2W o = build_oracle_2w(g, p, seed, space_opt);
    save_oracle_2w(o, out);
    pivots = o.bunches.pivot_set.size();
    entries = o.overlap.size();
    bytes = o.space_bytes();
  } else {
    throw CLI::ValidationError("--kind", "unknown oracle kind: " + kind);
  }
  std::printf("cmd=oracle-build kind=%s n=%u m=%zu p=%g seed=%llu pivots=%zu table_entries=%zu "
              "space_bytes=%zu output=%s time_ms=%.1f\n",
              kind.c_str(), g.num_vertices(), g.num_edges(), p,
              static_cast<unsigned long long>(seed), pivots, entries, bytes, out.c_str(),
              ms_since(t0));
  return 0;
}

int run_oracle_query(const std::string& blob, vertex_t u, vertex_t v) {
  QueryBreakdown b;
  dist_t answer;
  const int kind = oracle_kind(blob);
  if (kind == 1) {
    const DistanceOracle2 o = load_oracle_2(blob);
    answer = query_oracle_2(o, u, v, &b);
  } else {
    const DistanceOracle2W o = load_oracle_2w(blob);
    answer = query_oracle_2w(o, u, v, &b);
  }
  auto show = [](dist_t d) {
    return d >= kInfDist ? std::string("inf") : std::to_string(d);
  };
  std::printf("%s\n", show(answer).c_str());
  std::printf("cmd=oracle-query kind=%s u=%u v=%u answer=%s via_pivot_u=%s via_pivot_v=%s "
              "via_table=%s lookups=%u\n",
              kind == 1 ? "two" : "two-w", u, v, show(answer).c_str(),
              show(b.via_pivot_u).c_str(), show(b.via_pivot_v).c_str(),
              show(b.via_table).c_str(), b.lookups);
  return 0;
}

int run_verify(const std::string& exact_path, const std::string& estimate_path,
               const std::string& mult_text, dist_t add) {
  const EstimateMatrix exact = load_estimate(exact_path);
  const EstimateMatrix estimate = load_estimate(estimate_path);
  const Rational mult = Rational::from_decimal(mult_text);
  const StretchReport rep = verify_stretch(exact, estimate, mult, add);
  std::printf("cmd=verify n=%u mult=%s add=%llu max_ratio=%.6f max_surplus=%llu "
              "violations=%llu",
              exact.size(), mult.str().c_str(), static_cast<unsigned long long>(add),
              rep.max_ratio, static_cast<unsigned long long>(rep.max_surplus),
              static_cast<unsigned long long>(rep.violations));
  if (rep.violations > 0) std::printf(" first_pair=%u,%u", rep.first_u, rep.first_v);
  std::printf("\n");
  return rep.violations == 0 ? 0 : 1;
}

int run_bench(const std::vector<vertex_t>& sizes, const std::string& kind, std::uint64_t seed) {
  for (vertex_t n : sizes) {
    const double p_edge = std::min(1.0, 6.0 / std::max<vertex_t>(n - 1, 1));
    const Graph g = gen_gnp(n, p_edge, 100, seed + n);
    const auto t0 = Clock::now();
    std::size_t pivots = 0, entries = 0, bytes = 0;
    if (kind == "two") {
      const DistanceOracle2 o = build_oracle_2(g, 0.0, seed);
      pivots = o.bunches.pivot_set.size();
      entries = o.adjacent.size();
      bytes = o.space_bytes();
    } else if (kind == "two-w") {
      const DistanceOracle2W o = build_oracle_2w(g, 0.0, seed, false);
      pivots = o.bunches.pivot_set.size();
      entries = o.overlap.size();
      bytes = o.space_bytes();
    } else {
      throw CLI::ValidationError("--kind", "unknown oracle kind: " + kind);
    }
    std::printf("cmd=bench kind=%s n=%u m=%zu pivots=%zu table_entries=%zu space_bytes=%zu "
                "preprocess_ms=%.1f\n",
                kind.c_str(), n, g.num_edges(), pivots, entries, bytes, ms_since(t0));
    std::fflush(stdout);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"approximate all-pairs shortest paths toolkit"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a seeded G(n,p) graph file");
  vertex_t gen_n = 100;
  double gen_p = 0.1;
  dist_t gen_w = 1;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  gen->add_option("-n", gen_n, "vertex count")->required();
  gen->add_option("-p", gen_p, "edge probability")->check(CLI::Range(0.0, 1.0));
  gen->add_option("-w,--wmax", gen_w, "max weight (1 = unweighted)");
  gen->add_option("-s,--seed", gen_seed, "seed");
  gen->add_option("-o", gen_out, "output path")->required();

  // apsp
  auto* apsp_cmd = app.add_subcommand("apsp", "run an APSP algorithm on a graph file");
  std::string apsp_algo, apsp_graph, apsp_out, apsp_format = "bin";
  double apsp_r = 0.468, apsp_eps = 0.1, apsp_p = 0.0;
  int apsp_k = 2;
  std::uint64_t apsp_seed = 1;
  bool apsp_audit = false;
  apsp_cmd->add_option("--algo", apsp_algo, "exact|two-approx|two-approx-comb|near-additive|dense-weighted|bk")
      ->required();
  apsp_cmd->add_option("graph", apsp_graph, "graph file")->required();
  apsp_cmd->add_option("-o", apsp_out, "matrix output path");
  apsp_cmd->add_option("--format", apsp_format, "bin|text")
      ->check(CLI::IsMember({"bin", "text"}));
  apsp_cmd->add_option("--r", apsp_r, "density split parameter in [0,1]");
  apsp_cmd->add_option("--eps", apsp_eps, "stretch slack");
  apsp_cmd->add_option("--k", apsp_k, "additive budget (even)");
  apsp_cmd->add_option("--p", apsp_p, "cluster sampling rate (0 = default)");
  apsp_cmd->add_option("--seed", apsp_seed, "seed");
  apsp_cmd->add_flag("--audit", apsp_audit, "verify against exact APSP; exit 1 on violations");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "build or query a distance oracle");
  oracle->require_subcommand(1);
  auto* ob = oracle->add_subcommand("build", "preprocess a graph into an oracle blob");
  std::string ob_kind = "two", ob_graph, ob_out;
  double ob_p = 0.0;
  std::uint64_t ob_seed = 1;
  bool ob_space_opt = false;
  ob->add_option("--kind", ob_kind, "two|two-w")->check(CLI::IsMember({"two", "two-w"}));
  ob->add_option("graph", ob_graph, "graph file")->required();
  ob->add_option("-o", ob_out, "oracle blob path")->required();
  ob->add_option("--p", ob_p, "cluster sampling rate (0 = balanced default)");
  ob->add_option("--seed", ob_seed, "seed");
  ob->add_flag("--space-opt", ob_space_opt, "use the space-optimizing rate n^(-1/3) (two-w)");
  auto* oq = oracle->add_subcommand("query", "query a distance oracle blob");
  std::string oq_blob;
  vertex_t oq_u = 0, oq_v = 0;
  oq->add_option("blob", oq_blob, "oracle blob path")->required();
  oq->add_option("u", oq_u, "first vertex")->required();
  oq->add_option("v", oq_v, "second vertex")->required();

  // verify
  auto* verify = app.add_subcommand("verify", "audit an estimate matrix against an exact one");
  std::string v_exact, v_estimate, v_mult = "1";
  dist_t v_add = 0;
  verify->add_option("exact", v_exact, "exact matrix file")->required();
  verify->add_option("estimate", v_estimate, "estimate matrix file")->required();
  verify->add_option("--mult", v_mult, "multiplicative stretch (decimal or a/b)");
  verify->add_option("--add", v_add, "additive stretch");

  // bench
  auto* bench = app.add_subcommand("bench", "oracle preprocessing timings on m ~ 3n graphs");
  std::vector<vertex_t> bench_sizes{500, 1000, 2000};
  std::string bench_kind = "two";
  std::uint64_t bench_seed = 1;
  bench->add_option("--sizes", bench_sizes, "vertex counts")->delimiter(',');
  bench->add_option("--kind", bench_kind, "two|two-w");
  bench->add_option("--seed", bench_seed, "seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) return run_gen(gen_n, gen_p, gen_w, gen_seed, gen_out);
    if (apsp_cmd->parsed())
      return run_apsp(apsp_algo, apsp_graph, apsp_out, apsp_format, apsp_r, apsp_eps, apsp_k,
                      apsp_p, apsp_seed, apsp_audit);
    if (oracle->parsed()) {
      if (ob->parsed()) return run_oracle_build(ob_kind, ob_graph, ob_out, ob_p, ob_seed, ob_space_opt);
      return run_oracle_query(oq_blob, oq_u, oq_v);
    }
    if (verify->parsed()) return run_verify(v_exact, v_estimate, v_mult, v_add);
    if (bench->parsed()) return run_bench(bench_sizes, bench_kind, bench_seed);
  } catch (const CLI::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
