#pragma once

#include <cassert>
#include <cstdint>
#include <string>
#include <vector>

#include "apsp/graph.hpp"

namespace apsp {

// Exact non-negative rational, used for multiplicative stretch factors so
// contract checks never go through floating point.
struct Rational {
  std::int64_t num = 1;
  std::int64_t den = 1;

  // Parses "2", "0.25", or "1/12".
  static Rational from_decimal(const std::string& text);
  // Largest multiple of 1e-9 not exceeding x; lets a double parameter be
  // carried as an exact bound without loosening it.
  static Rational from_double_floor(double x);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;
};

Rational operator+(Rational a, Rational b);
bool operator<=(Rational a, Rational b);
bool operator==(Rational a, Rational b);

// Declared stretch of an estimate table: d <= value <= mult * d + add.
struct StretchContract {
  Rational mult{1, 1};
  dist_t add = 0;
};

// Dense n-by-n table of distance estimates with a declared stretch contract.
// Entries are path lengths (or kInfDist), so a sound table never drops below
// the true distance.
class EstimateMatrix {
 public:
  EstimateMatrix() = default;
  explicit EstimateMatrix(vertex_t n, dist_t fill = kInfDist)
      : n_(n), cells_(static_cast<std::size_t>(n) * n, fill) {
    for (vertex_t u = 0; u < n_; ++u) at(u, u) = 0;
  }

  vertex_t size() const { return n_; }
  dist_t& at(vertex_t u, vertex_t v) { return cells_[static_cast<std::size_t>(u) * n_ + v]; }
  dist_t at(vertex_t u, vertex_t v) const {
    return cells_[static_cast<std::size_t>(u) * n_ + v];
  }
  dist_t* row(vertex_t u) { return cells_.data() + static_cast<std::size_t>(u) * n_; }
  const dist_t* row(vertex_t u) const {
    return cells_.data() + static_cast<std::size_t>(u) * n_;
  }

  void min_assign(vertex_t u, vertex_t v, dist_t value) {
    dist_t& c = at(u, v);
    if (value < c) c = value;
  }
  // Entrywise minimum with another table of the same size.
  void min_with(const EstimateMatrix& other);

  StretchContract contract() const { return contract_; }
  void set_contract(StretchContract c) { contract_ = c; }

 private:
  vertex_t n_ = 0;
  std::vector<dist_t> cells_;
  StretchContract contract_;
};

// Exact distances, contract (1, 0); one Dijkstra (or BFS) per source.
EstimateMatrix exact_apsp(const Graph& g);

struct StretchReport {
  std::uint64_t violations = 0;
  double max_ratio = 1.0;     // max over finite pairs with d > 0 of value / d
  dist_t max_surplus = 0;     // max over finite pairs of value - d
  vertex_t first_u = kNoVertex;
  vertex_t first_v = kNoVertex;
};

// Counts pairs violating d <= value <= mult * d + add. Infinite estimates
// for infinite distances satisfy every contract; a finite/infinite mismatch
// in either direction is a violation. All comparisons are exact integer
// arithmetic.
StretchReport verify_stretch(const EstimateMatrix& exact, const EstimateMatrix& estimate,
                             Rational mult, dist_t add);

// Binary format: 16-byte header (magic "APSPESTM", n as 64-bit LE), then
// n*n row-major 64-bit LE values. Text format: first line "n", then one
// "u v value" triple per pair with u <= v, value decimal or "inf".
void save_estimate_binary(const EstimateMatrix& m, const std::string& path);
void save_estimate_text(const EstimateMatrix& m, const std::string& path);
EstimateMatrix load_estimate(const std::string& path);

}  // namespace apsp
