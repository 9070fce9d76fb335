#include "apsp/estimate.hpp"

#include <array>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "apsp/parallel.hpp"

namespace apsp {

Rational Rational::from_decimal(const std::string& text) {
  if (std::size_t slash = text.find('/'); slash != std::string::npos) {
    const std::string ns = text.substr(0, slash), ds = text.substr(slash + 1);
    if (ns.empty() || ds.empty() ||
        ns.find_first_not_of("0123456789") != std::string::npos ||
        ds.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("not a non-negative fraction: " + text);
    Rational r{std::stoll(ns), std::stoll(ds)};
    if (r.den == 0) throw std::invalid_argument("zero denominator: " + text);
    std::int64_t g = std::gcd(r.num, r.den);
    if (g > 1) {
      r.num /= g;
      r.den /= g;
    }
    return r;
  }
  std::size_t dot = text.find('.');
  std::string digits = dot == std::string::npos
                           ? text
                           : text.substr(0, dot) + text.substr(dot + 1);
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("not a non-negative decimal: " + text);
  std::int64_t num = std::stoll(digits);
  std::int64_t den = 1;
  if (dot != std::string::npos)
    for (std::size_t i = dot + 1; i < text.size(); ++i) den *= 10;
  std::int64_t g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return {num, den};
}

Rational Rational::from_double_floor(double x) {
  if (x < 0) throw std::invalid_argument("negative stretch parameter");
  Rational r{static_cast<std::int64_t>(std::floor(x * 1e9)), 1000000000};
  std::int64_t g = std::gcd(r.num, r.den);
  if (g > 1) {
    r.num /= g;
    r.den /= g;
  }
  return r;
}

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

Rational operator+(Rational a, Rational b) {
  Rational r{a.num * b.den + b.num * a.den, a.den * b.den};
  std::int64_t g = std::gcd(r.num, r.den);
  if (g > 1) {
    r.num /= g;
    r.den /= g;
  }
  return r;
}

bool operator<=(Rational a, Rational b) {
  return static_cast<__int128>(a.num) * b.den <= static_cast<__int128>(b.num) * a.den;
}

bool operator==(Rational a, Rational b) {
  return static_cast<__int128>(a.num) * b.den == static_cast<__int128>(b.num) * a.den;
}

void EstimateMatrix::min_with(const EstimateMatrix& other) {
  if (other.n_ != n_) throw std::invalid_argument("min_with: size mismatch");
  for (std::size_t i = 0; i < cells_.size(); ++i)
    cells_[i] = std::min(cells_[i], other.cells_[i]);
}

EstimateMatrix exact_apsp(const Graph& g) {
  const vertex_t n = g.num_vertices();
  EstimateMatrix out(n);
  const bool hops = g.unweighted();
  parallel_for(0, n, [&](std::size_t u) {
    auto dv = hops ? bfs(g, static_cast<vertex_t>(u)) : dijkstra(g, static_cast<vertex_t>(u));
    std::memcpy(out.row(static_cast<vertex_t>(u)), dv.dist.data(), sizeof(dist_t) * n);
  });
  out.set_contract({{1, 1}, 0});
  return out;
}

StretchReport verify_stretch(const EstimateMatrix& exact, const EstimateMatrix& estimate,
                             Rational mult, dist_t add) {
  if (exact.size() != estimate.size())
    throw std::invalid_argument("verify_stretch: size mismatch");
  if (mult.num < 0 || mult.den <= 0) throw std::invalid_argument("bad stretch factor");
  StretchReport rep;
  const vertex_t n = exact.size();
  for (vertex_t u = 0; u < n; ++u) {
    for (vertex_t v = 0; v < n; ++v) {
      dist_t d = exact.at(u, v);
      dist_t e = estimate.at(u, v);
      bool bad = false;
      if (d >= kInfDist) {
        bad = e < kInfDist;  // a finite estimate for an unreachable pair
      } else if (e < d) {
        bad = true;  // underestimate (covers e finite below d and nothing else)
      } else if (e >= kInfDist) {
        bad = true;  // lost a reachable pair
      } else {
        // e <= mult * d + add, checked as e * den <= num * d + den * add.
        unsigned __int128 lhs = static_cast<unsigned __int128>(e) * mult.den;
        unsigned __int128 rhs = static_cast<unsigned __int128>(mult.num) * d +
                                static_cast<unsigned __int128>(mult.den) * add;
        bad = lhs > rhs;
        if (d > 0) rep.max_ratio = std::max(rep.max_ratio, static_cast<double>(e) / d);
        rep.max_surplus = std::max(rep.max_surplus, e - d);
      }
      if (bad) {
        if (rep.violations == 0) {
          rep.first_u = u;
          rep.first_v = v;
        }
        ++rep.violations;
      }
    }
  }
  return rep;
}

namespace {

constexpr std::array<char, 8> kMagic = {'A', 'P', 'S', 'P', 'E', 'S', 'T', 'M'};

void put_u64(std::ofstream& out, std::uint64_t v) {
  std::array<unsigned char, 8> b;
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b.data()), 8);
}

std::uint64_t get_u64(std::ifstream& in) {
  std::array<unsigned char, 8> b;
  in.read(reinterpret_cast<char*>(b.data()), 8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

}  // namespace

void save_estimate_binary(const EstimateMatrix& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write matrix file: " + path);
  out.write(kMagic.data(), kMagic.size());
  put_u64(out, m.size());
  const vertex_t n = m.size();
  for (vertex_t u = 0; u < n; ++u)
    for (vertex_t v = 0; v < n; ++v) put_u64(out, m.at(u, v));
  if (!out) throw std::runtime_error("write failed: " + path);
}

void save_estimate_text(const EstimateMatrix& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write matrix file: " + path);
  const vertex_t n = m.size();
  out << n << '\n';
  for (vertex_t u = 0; u < n; ++u) {
    for (vertex_t v = u; v < n; ++v) {
      out << u << ' ' << v << ' ';
      if (m.at(u, v) >= kInfDist)
        out << "inf\n";
      else
        out << m.at(u, v) << '\n';
    }
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

EstimateMatrix load_estimate(const std::string& path) {
  {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open matrix file: " + path);
    std::array<char, 8> magic{};
    in.read(magic.data(), magic.size());
    if (in && magic == kMagic) {
      std::uint64_t n = get_u64(in);
      if (!in || n > kNoVertex) throw std::runtime_error("corrupt matrix header: " + path);
      EstimateMatrix m(static_cast<vertex_t>(n));
      for (vertex_t u = 0; u < n; ++u)
        for (vertex_t v = 0; v < n; ++v) m.at(u, v) = get_u64(in);
      if (!in) throw std::runtime_error("truncated matrix file: " + path);
      return m;
    }
  }
  std::ifstream in(path);
  std::uint64_t n = 0;
  if (!(in >> n) || n > kNoVertex) throw std::runtime_error("corrupt matrix file: " + path);
  EstimateMatrix m(static_cast<vertex_t>(n));
  std::uint64_t u, v;
  std::string val;
  while (in >> u >> v >> val) {
    if (u >= n || v >= n) throw std::runtime_error("matrix entry out of range: " + path);
    dist_t d = val == "inf" ? kInfDist : std::stoull(val);
    m.at(static_cast<vertex_t>(u), static_cast<vertex_t>(v)) = d;
    m.at(static_cast<vertex_t>(v), static_cast<vertex_t>(u)) = d;
  }
  return m;
}

}  // namespace apsp
