#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "apsp/estimate.hpp"
#include "apsp/graph.hpp"

namespace apsp {

// Rectangular matrix over {0, ..., W} united with infinity, the carrier of
// the distance (min-plus) product.
class MinPlusMatrix {
 public:
  MinPlusMatrix() = default;
  MinPlusMatrix(std::size_t rows, std::size_t cols, dist_t fill = kInfDist)
      : rows_(rows), cols_(cols), cells_(rows * cols, fill) {}

  static MinPlusMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  dist_t& at(std::size_t i, std::size_t j) { return cells_[i * cols_ + j]; }
  dist_t at(std::size_t i, std::size_t j) const { return cells_[i * cols_ + j]; }
  const dist_t* row(std::size_t i) const { return cells_.data() + i * cols_; }
  dist_t* row(std::size_t i) { return cells_.data() + i * cols_; }

  MinPlusMatrix transposed() const;
  // Largest finite entry (0 when none).
  dist_t max_finite() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<dist_t> cells_;
};

// Inner kernel of the scaling reduction. Implementations must return the
// exact min-plus product of their (level-encoded, small-integer) inputs;
// only the speed is backend-specific.
class MulBackend {
 public:
  virtual ~MulBackend() = default;
  virtual std::string name() const = 0;
  virtual MinPlusMatrix multiply(const MinPlusMatrix& a, const MinPlusMatrix& b) const = 0;
};

// Shipped backend: cubic loop over the level encoding.
const MulBackend& naive_backend();

// C[i][j] = min_k A[i][k] + B[k][j] with saturating addition.
MinPlusMatrix exact_minplus(const MinPlusMatrix& a, const MinPlusMatrix& b);

// One-sided (1+eps)-approximate distance product via the scaling reduction:
// exact <= result <= (1+eps) * exact entrywise, infinite exactly where the
// exact product is. eps = 0 routes to exact_minplus.
//
// Reduction shape: level l covers witness entries up to 2^l. The bottom
// level keeps entries up to the window width R = ceil(8/eps) exact; higher
// levels round entries up to ceil(a * R / 2^l), multiply small integers
// through the backend, and rescale with ceilings, so error stays one-sided
// and bounded by 2^(l+1)/R + 1 <= eps * exact at the witness level. Zero
// entries get an exact level of their own, so zero rows and columns (the
// min-plus identity) propagate the other factor unchanged.
MinPlusMatrix approx_minplus(const MinPlusMatrix& a, const MinPlusMatrix& b, double eps,
                             const MulBackend& backend = naive_backend());

// Shortest paths through a set: given estimates dist_s(i, a) of d(v_i, s_a)
// as an n-by-|S| matrix, returns the n-by-n table min_a dist_s(u, a) +
// dist_s(v, a), (1+eps)-approximate via approx_minplus (exact when eps = 0).
EstimateMatrix paths_through_set(const MinPlusMatrix& dist_s, double eps,
                                 const MulBackend& backend = naive_backend());

struct MinPlusStats {
  std::uint64_t exact_calls = 0;
  std::uint64_t approx_calls = 0;
  std::uint64_t backend_mults = 0;
};

// Cumulative call counters, used to assert that combinatorial code paths
// never touch this module.
MinPlusStats minplus_stats();

}  // namespace apsp
