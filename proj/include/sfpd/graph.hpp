#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace sfpd {

// Undirected edge stored with a <= b after normalization.
struct Edge {
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Immutable simple undirected graph in CSR form. Neighbour lists are sorted
// ascending and edges are kept in canonical (a < b, lexicographic) order, so
// two graphs compare equal iff they are structurally identical. Safe to
// share read-only across threads.
class Graph {
 public:
  // Takes edges in any order/orientation, normalizes and validates them.
  // Throws ParameterError on self-loops, duplicate edges, or ids >= n.
  Graph(std::uint32_t node_count, std::vector<Edge> edges);

  std::uint32_t node_count() const { return node_count_; }
  std::size_t edge_count() const { return edges_.size(); }

  std::span<const std::uint32_t> neighbors(std::uint32_t v) const {
    return {adjacency_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  std::uint32_t degree(std::uint32_t v) const {
    return static_cast<std::uint32_t>(offsets_[v + 1] - offsets_[v]);
  }
  std::uint32_t max_degree() const { return max_degree_; }

  // Canonical edge list (a < b, sorted lexicographically).
  const std::vector<Edge>& edges() const { return edges_; }

  bool has_edge(std::uint32_t u, std::uint32_t v) const;

  friend bool operator==(const Graph& lhs, const Graph& rhs) {
    return lhs.node_count_ == rhs.node_count_ && lhs.edges_ == rhs.edges_;
  }

 private:
  std::uint32_t node_count_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;       // node_count_ + 1 entries
  std::vector<std::uint32_t> adjacency_;   // 2 * edge_count entries
  std::uint32_t max_degree_ = 0;
};

// Single connected component (true for the empty and one-node graphs).
bool is_connected(const Graph& g);

}  // namespace sfpd
