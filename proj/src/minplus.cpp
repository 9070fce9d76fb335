#include "apsp/minplus.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "apsp/parallel.hpp"

namespace apsp {

namespace {

std::atomic<std::uint64_t> g_exact_calls{0};
std::atomic<std::uint64_t> g_approx_calls{0};
std::atomic<std::uint64_t> g_backend_mults{0};

MinPlusMatrix cubic_kernel(const MinPlusMatrix& a, const MinPlusMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("min-plus: dimension mismatch");
  MinPlusMatrix c(a.rows(), b.cols(), kInfDist);
  parallel_for(0, a.rows(), [&](std::size_t i) {
    dist_t* crow = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const dist_t av = a.at(i, k);
      if (av >= kInfDist) continue;
      const dist_t* brow = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (brow[j] >= kInfDist) continue;
        const dist_t cand = av + brow[j];
        if (cand < crow[j]) crow[j] = cand;
      }
    }
  });
  return c;
}

class NaiveBackend final : public MulBackend {
 public:
  std::string name() const override { return "naive-cubic"; }
  MinPlusMatrix multiply(const MinPlusMatrix& a, const MinPlusMatrix& b) const override {
    g_backend_mults.fetch_add(1, std::memory_order_relaxed);
    return cubic_kernel(a, b);
  }
};

unsigned ceil_log2(dist_t x) {
  return x <= 1 ? 0 : static_cast<unsigned>(std::bit_width(x - 1));
}

}  // namespace

MinPlusMatrix MinPlusMatrix::identity(std::size_t n) {
  MinPlusMatrix m(n, n, kInfDist);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 0;
  return m;
}

MinPlusMatrix MinPlusMatrix::transposed() const {
  MinPlusMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

dist_t MinPlusMatrix::max_finite() const {
  dist_t w = 0;
  for (dist_t v : cells_)
    if (v < kInfDist) w = std::max(w, v);
  return w;
}

const MulBackend& naive_backend() {
  static const NaiveBackend backend;
  return backend;
}

MinPlusMatrix exact_minplus(const MinPlusMatrix& a, const MinPlusMatrix& b) {
  g_exact_calls.fetch_add(1, std::memory_order_relaxed);
  return cubic_kernel(a, b);
}

MinPlusMatrix approx_minplus(const MinPlusMatrix& a, const MinPlusMatrix& b, double eps,
                             const MulBackend& backend) {
  if (eps < 0) throw std::invalid_argument("approx_minplus: eps must be >= 0");
  if (a.cols() != b.rows()) throw std::invalid_argument("min-plus: dimension mismatch");
  if (eps == 0) return exact_minplus(a, b);
  g_approx_calls.fetch_add(1, std::memory_order_relaxed);

  const dist_t w_bound = std::max(a.max_finite(), b.max_finite());
  // When the exact window already spans every entry, one exact product is
  // both the bottom level and the answer.
  if (w_bound == 0 || 8.0 / eps >= static_cast<double>(w_bound))
    return backend.multiply(a, b);

  const dist_t window = static_cast<dist_t>(std::ceil(8.0 / eps));
  const unsigned bottom = ceil_log2(window);
  const unsigned top = ceil_log2(w_bound);

  auto clipped = [&](const MinPlusMatrix& m, dist_t cap) {
    MinPlusMatrix out(m.rows(), m.cols(), kInfDist);
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (m.at(i, j) <= cap) out.at(i, j) = m.at(i, j);
    return out;
  };
  auto encoded = [&](const MinPlusMatrix& m, unsigned level) {
    MinPlusMatrix out(m.rows(), m.cols(), kInfDist);
    const dist_t cap = dist_t{1} << level;
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) {
        const dist_t v = m.at(i, j);
        if (v <= cap) {
          unsigned __int128 scaled = static_cast<unsigned __int128>(v) * window;
          out.at(i, j) = static_cast<dist_t>((scaled + cap - 1) >> level);
        }
      }
    return out;
  };

  auto zero_mask = [](const MinPlusMatrix& m) {
    MinPlusMatrix out(m.rows(), m.cols(), kInfDist);
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (m.at(i, j) == 0) out.at(i, j) = 0;
    return out;
  };
  auto min_into = [](MinPlusMatrix& into, const MinPlusMatrix& from) {
    for (std::size_t i = 0; i < into.rows(); ++i)
      for (std::size_t j = 0; j < into.cols(); ++j)
        if (from.at(i, j) < into.at(i, j)) into.at(i, j) = from.at(i, j);
  };

  MinPlusMatrix result = backend.multiply(clipped(a, dist_t{1} << bottom),
                                          clipped(b, dist_t{1} << bottom));
  // Zero entries are exact at every scale; give them an exact level of their
  // own so zero rows and columns propagate the other factor unrounded.
  min_into(result, backend.multiply(zero_mask(a), b));
  min_into(result, backend.multiply(a, zero_mask(b)));
  for (unsigned level = bottom + 1; level <= top; ++level) {
    MinPlusMatrix prod = backend.multiply(encoded(a, level), encoded(b, level));
    for (std::size_t i = 0; i < prod.rows(); ++i) {
      for (std::size_t j = 0; j < prod.cols(); ++j) {
        const dist_t v = prod.at(i, j);
        if (v >= kInfDist) continue;
        unsigned __int128 back = (static_cast<unsigned __int128>(v) << level) + window - 1;
        const dist_t cand = static_cast<dist_t>(back / window);
        if (cand < result.at(i, j)) result.at(i, j) = cand;
      }
    }
  }
  return result;
}

EstimateMatrix paths_through_set(const MinPlusMatrix& dist_s, double eps,
                                 const MulBackend& backend) {
  const std::size_t n = dist_s.rows();
  MinPlusMatrix product = eps == 0 ? exact_minplus(dist_s, dist_s.transposed())
                                   : approx_minplus(dist_s, dist_s.transposed(), eps, backend);
  EstimateMatrix out(static_cast<vertex_t>(n));
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      out.at(static_cast<vertex_t>(u), static_cast<vertex_t>(v)) = product.at(u, v);
  return out;
}

MinPlusStats minplus_stats() {
  return {g_exact_calls.load(), g_approx_calls.load(), g_backend_mults.load()};
}

}  // namespace apsp
