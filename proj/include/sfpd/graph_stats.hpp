#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "sfpd/graph.hpp"

namespace sfpd {

struct GraphStats {
  double mean_degree = 0.0;
  // Transitivity: 3 * triangles / connected triples. 0 when no triples.
  double global_clustering = 0.0;
  // Mean over all nodes of the local clustering coefficient; nodes of
  // degree < 2 contribute 0.
  double mean_local_clustering = 0.0;
  std::map<std::uint32_t, std::uint32_t> degree_histogram;
};

// Triangles containing each node, computed by sorted-intersection over the
// canonical edge list. triangles_per_node(g)[v] = number of triangles at v;
// the graph's triangle count is the sum divided by 3.
std::vector<std::uint64_t> triangles_per_node(const Graph& g);

std::uint64_t count_triangles(const Graph& g);

GraphStats compute_stats(const Graph& g);

}  // namespace sfpd
