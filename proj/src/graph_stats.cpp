#include "sfpd/graph_stats.hpp"

#include <algorithm>

namespace sfpd {

std::vector<std::uint64_t> triangles_per_node(const Graph& g) {
  std::vector<std::uint64_t> count(g.node_count(), 0);
  // For each edge (a,b), every common neighbour w closes one triangle;
  // crediting only w counts each triangle exactly once per member node.
  for (const Edge& e : g.edges()) {
    const auto na = g.neighbors(e.a);
    const auto nb = g.neighbors(e.b);
    auto ia = na.begin();
    auto ib = nb.begin();
    while (ia != na.end() && ib != nb.end()) {
      if (*ia < *ib) {
        ++ia;
      } else if (*ib < *ia) {
        ++ib;
      } else {
        ++count[*ia];
        ++ia;
        ++ib;
      }
    }
  }
  return count;
}

std::uint64_t count_triangles(const Graph& g) {
  const auto per_node = triangles_per_node(g);
  std::uint64_t total = 0;
  for (std::uint64_t c : per_node) total += c;
  return total / 3;
}

GraphStats compute_stats(const Graph& g) {
  GraphStats stats;
  const std::uint32_t n = g.node_count();
  if (n == 0) return stats;

  stats.mean_degree =
      2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(n);

  const auto per_node = triangles_per_node(g);
  std::uint64_t triangle_ends = 0;  // 3 * triangles
  std::uint64_t triples = 0;        // paths of length two, open or closed
  double local_sum = 0.0;
  for (std::uint32_t v = 0; v < n; ++v) {
    const std::uint64_t d = g.degree(v);
    const std::uint64_t pairs = d * (d - 1) / 2;
    triples += pairs;
    triangle_ends += per_node[v];
    if (pairs > 0)
      local_sum += static_cast<double>(per_node[v]) / static_cast<double>(pairs);
    ++stats.degree_histogram[g.degree(v)];
  }
  stats.global_clustering =
      triples == 0 ? 0.0
                   : static_cast<double>(triangle_ends) /
                         static_cast<double>(triples);
  stats.mean_local_clustering = local_sum / static_cast<double>(n);
  return stats;
}

}  // namespace sfpd
