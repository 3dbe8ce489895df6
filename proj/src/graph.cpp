#include "sfpd/graph.hpp"

#include <algorithm>
#include <string>

#include "sfpd/errors.hpp"

namespace sfpd {

Graph::Graph(std::uint32_t node_count, std::vector<Edge> edges)
    : node_count_(node_count), edges_(std::move(edges)) {
  for (Edge& e : edges_) {
    if (e.a == e.b)
      throw ParameterError("graph: self-loop at node " + std::to_string(e.a));
    if (e.a > e.b) std::swap(e.a, e.b);
    if (e.b >= node_count_)
      throw ParameterError("graph: node id " + std::to_string(e.b) +
                           " out of range for n=" + std::to_string(node_count_));
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
    throw ParameterError("graph: duplicate edge");

  offsets_.assign(node_count_ + 1, 0);
  for (const Edge& e : edges_) {
    ++offsets_[e.a + 1];
    ++offsets_[e.b + 1];
  }
  for (std::size_t v = 0; v < node_count_; ++v) offsets_[v + 1] += offsets_[v];

  adjacency_.resize(2 * edges_.size());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const Edge& e : edges_) {
    adjacency_[cursor[e.a]++] = e.b;
    adjacency_[cursor[e.b]++] = e.a;
  }
  // Canonical edge order already emits each neighbour list ascending for the
  // smaller endpoint; the larger endpoint's list needs a sort.
  for (std::uint32_t v = 0; v < node_count_; ++v) {
    auto begin = adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]);
    auto end = adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]);
    std::sort(begin, end);
    max_degree_ = std::max(max_degree_, degree(v));
  }
}

bool Graph::has_edge(std::uint32_t u, std::uint32_t v) const {
  if (u >= node_count_ || v >= node_count_) return false;
  const auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

bool is_connected(const Graph& g) {
  const std::uint32_t n = g.node_count();
  if (n <= 1) return true;
  std::vector<bool> seen(n, false);
  std::vector<std::uint32_t> stack{0};
  seen[0] = true;
  std::uint32_t visited = 1;
  while (!stack.empty()) {
    const std::uint32_t v = stack.back();
    stack.pop_back();
    for (std::uint32_t w : g.neighbors(v)) {
      if (!seen[w]) {
        seen[w] = true;
        ++visited;
        stack.push_back(w);
      }
    }
  }
  return visited == n;
}

}  // namespace sfpd
