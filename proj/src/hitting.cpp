#include "apsp/hitting.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace apsp {

HittingSet hit(const Graph& g, vertex_t s) {
  const vertex_t n = g.num_vertices();
  if (s < 1 || s > n) throw std::invalid_argument("hit: threshold outside [1, n]");

  std::vector<bool> uncovered(n, false);
  std::size_t remaining = 0;
  for (vertex_t v = 0; v < n; ++v) {
    if (g.degree(v) >= s) {
      uncovered[v] = true;
      ++remaining;
    }
  }

  HittingSet out{s, {}};
  if (remaining == 0) return out;

  // Lazy greedy set cover. gain[c] caches how many uncovered high-degree
  // vertices neighbor c; stale heap entries are re-scored on pop. Ordering
  // (gain desc, id asc) reproduces the exact greedy choice.
  std::vector<std::size_t> gain(n, 0);
  using Item = std::pair<std::size_t, vertex_t>;
  auto better = [](const Item& a, const Item& b) {
    return a.first != b.first ? a.first < b.first : a.second > b.second;
  };
  std::priority_queue<Item, std::vector<Item>, decltype(better)> heap(better);
  for (vertex_t c = 0; c < n; ++c) {
    for (vertex_t u : g.neighbors(c))
      if (uncovered[u]) ++gain[c];
    if (gain[c] > 0) heap.push({gain[c], c});
  }

  while (remaining > 0) {
    auto [cached, c] = heap.top();
    heap.pop();
    std::size_t fresh = 0;
    for (vertex_t u : g.neighbors(c))
      if (uncovered[u]) ++fresh;
    if (fresh != cached) {
      gain[c] = fresh;
      if (fresh > 0) heap.push({fresh, c});
      continue;
    }
    out.members.push_back(c);
    for (vertex_t u : g.neighbors(c)) {
      if (uncovered[u]) {
        uncovered[u] = false;
        --remaining;
      }
    }
  }
  std::sort(out.members.begin(), out.members.end());
  return out;
}

}  // namespace apsp
