#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "apsp/minplus.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace apsp;

namespace {

MinPlusMatrix random_matrix(std::size_t rows, std::size_t cols, dist_t max_entry,
                            double inf_share, SplitMix64& rng) {
  MinPlusMatrix m(rows, cols, kInfDist);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (rng.next_unit() >= inf_share) m.at(i, j) = rng.next_below(max_entry + 1);
  return m;
}

void check_equal(const MinPlusMatrix& a, const MinPlusMatrix& b) {
  REQUIRE(a.rows() == b.rows());
  REQUIRE(a.cols() == b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) CHECK(a.at(i, j) == b.at(i, j));
}

}  // namespace

TEST_CASE("identity is neutral for the exact product") {
  SplitMix64 rng(5);
  const MinPlusMatrix b = random_matrix(4, 4, 50, 0.2, rng);
  check_equal(exact_minplus(MinPlusMatrix::identity(4), b), b);
}

TEST_CASE("diagonal case") {
  MinPlusMatrix a(2, 2, kInfDist), b(2, 2, kInfDist);
  a.at(0, 0) = 1;
  a.at(1, 1) = 2;
  b.at(0, 0) = 3;
  b.at(1, 1) = 4;
  const auto c = exact_minplus(a, b);
  CHECK(c.at(0, 0) == 4);
  CHECK(c.at(0, 1) == kInfDist);
  CHECK(c.at(1, 0) == kInfDist);
  CHECK(c.at(1, 1) == 6);
}

TEST_CASE("exact product equals the brute-force oracle on rectangles") {
  SplitMix64 rng(7);
  const MinPlusMatrix a = random_matrix(5, 3, 20, 0.1, rng);
  const MinPlusMatrix b = random_matrix(3, 5, 20, 0.1, rng);
  check_equal(exact_minplus(a, b), testoracle::brute_minplus(a, b));
  CHECK_THROWS_AS(exact_minplus(a, a), std::invalid_argument);
}

TEST_CASE("exact product is associative") {
  SplitMix64 rng(11);
  for (int it = 0; it < 20; ++it) {
    const MinPlusMatrix a = random_matrix(3, 4, 30, 0.25, rng);
    const MinPlusMatrix b = random_matrix(4, 2, 30, 0.25, rng);
    const MinPlusMatrix c = random_matrix(2, 5, 30, 0.25, rng);
    check_equal(exact_minplus(exact_minplus(a, b), c), exact_minplus(a, exact_minplus(b, c)));
  }
}

TEST_CASE("binary entries survive the approximation exactly") {
  SplitMix64 rng(13);
  MinPlusMatrix a = random_matrix(6, 6, 1, 0.3, rng);
  MinPlusMatrix b = random_matrix(6, 6, 1, 0.3, rng);
  check_equal(approx_minplus(a, b, 0.5), exact_minplus(a, b));
}

TEST_CASE("identity rows force exact propagation under approximation") {
  SplitMix64 rng(17);
  const MinPlusMatrix b = random_matrix(5, 5, 1000, 0.2, rng);
  check_equal(approx_minplus(MinPlusMatrix::identity(5), b, 0.1), b);
}

TEST_CASE("scaled instances stay within one-sided (1+eps)") {
  SplitMix64 rng(19);
  const MinPlusMatrix a = random_matrix(8, 4, 1000, 0.1, rng);
  const MinPlusMatrix b = random_matrix(4, 8, 1000, 0.1, rng);
  const auto exact = exact_minplus(a, b);
  const auto approx = approx_minplus(a, b, 0.25);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) {
      const dist_t e = exact.at(i, j);
      const dist_t r = approx.at(i, j);
      if (e >= kInfDist) {
        CHECK(r == kInfDist);
      } else {
        CHECK(r >= e);
        CHECK(static_cast<double>(r) <= 1.25 * static_cast<double>(e));
      }
    }
}

TEST_CASE("eps below 1/(2W) reproduces the exact product") {
  SplitMix64 rng(23);
  const MinPlusMatrix a = random_matrix(6, 5, 64, 0.15, rng);
  const MinPlusMatrix b = random_matrix(5, 6, 64, 0.15, rng);
  check_equal(approx_minplus(a, b, 1.0 / 128.0), exact_minplus(a, b));
}

TEST_CASE("one-sided error property over random instances") {
  SplitMix64 rng(29);
  for (int it = 0; it < 60; ++it) {
    const std::size_t r = 1 + rng.next_below(7);
    const std::size_t k = 1 + rng.next_below(7);
    const std::size_t c = 1 + rng.next_below(7);
    const dist_t w = 1 + rng.next_below(10000);
    const double eps = std::vector<double>{0.1, 0.25, 1.0}[rng.next_below(3)];
    const MinPlusMatrix a = random_matrix(r, k, w, 0.2, rng);
    const MinPlusMatrix b = random_matrix(k, c, w, 0.2, rng);
    const auto exact = testoracle::brute_minplus(a, b);
    const auto approx = approx_minplus(a, b, eps);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) {
        const dist_t e = exact.at(i, j);
        const dist_t got = approx.at(i, j);
        CAPTURE(it);
        if (e >= kInfDist) {
          CHECK(got == kInfDist);
        } else {
          CHECK(got >= e);
          // exact integer check: got * 1 <= (1 + eps) * e with dyadic eps
          CHECK(static_cast<double>(got) <= (1.0 + eps) * static_cast<double>(e) + 1e-9);
        }
      }
  }
}

TEST_CASE("approx rejects negative eps, zero routes to exact") {
  SplitMix64 rng(31);
  const MinPlusMatrix a = random_matrix(3, 3, 10, 0.0, rng);
  CHECK_THROWS_AS(approx_minplus(a, a, -0.5), std::invalid_argument);
  const auto before = minplus_stats().exact_calls;
  check_equal(approx_minplus(a, a, 0.0), exact_minplus(a, a));
  CHECK(minplus_stats().exact_calls >= before + 2);
}

TEST_CASE("paths_through_set single pivot and empty pivot behavior") {
  MinPlusMatrix dist_s(3, 1, kInfDist);
  dist_s.at(0, 0) = 0;
  dist_s.at(1, 0) = 2;
  dist_s.at(2, 0) = 5;
  const auto c = paths_through_set(dist_s, 0.0);
  CHECK(c.at(1, 2) == 7);
  CHECK(c.at(0, 2) == 5);
  CHECK(c.at(1, 1) == 4);

  MinPlusMatrix all_inf(3, 1, kInfDist);
  const auto inf = paths_through_set(all_inf, 0.0);
  for (vertex_t u = 0; u < 3; ++u)
    for (vertex_t v = 0; v < 3; ++v) CHECK(inf.at(u, v) == kInfDist);
}

TEST_CASE("paths_through_set equals a double loop oracle") {
  SplitMix64 rng(37);
  const MinPlusMatrix dist_s = random_matrix(6, 2, 40, 0.2, rng);
  const auto c = paths_through_set(dist_s, 0.0);
  for (std::size_t u = 0; u < 6; ++u)
    for (std::size_t v = 0; v < 6; ++v) {
      dist_t best = kInfDist;
      for (std::size_t a = 0; a < 2; ++a)
        best = std::min(best, sat_add(dist_s.at(u, a), dist_s.at(v, a)));
      CHECK(c.at(u, v) == best);
    }
}
