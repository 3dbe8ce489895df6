#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "sfpd/graph.hpp"
#include "sfpd/rng.hpp"

namespace sfpd {

enum class NetModel { Ba, Dms };

std::string to_string(NetModel model);
std::optional<NetModel> parse_net_model(const std::string& name);

// Growth parameters. For BA, each new node attaches m edges and the seed is
// a complete graph on m0 nodes (default m + 1, the smallest seed that leaves
// the preferential choice nontrivial). For DMS the seed is the triangle and
// m is fixed at 2, giving the same average degree z = 2m = 4.
struct GenParams {
  NetModel model = NetModel::Ba;
  std::uint32_t n = 0;
  std::uint32_t m = 2;
  std::optional<std::uint32_t> m0;  // BA only; defaults to m + 1
  std::uint64_t seed = 0;

  std::uint32_t seed_clique_size() const { return m0 ? *m0 : m + 1; }
  // Throws ParameterError; requires m >= 1, m <= m0, n >= m0 (BA)
  // and m == 2, n >= 3 (DMS).
  void validate() const;
};

// Degree-proportional draw of `count` distinct node ids from a slot table in
// which every node id appears once per incident edge endpoint. Draws are
// sequential; a draw that hits an already-chosen node is rejected and
// retried, so all draws of one step see the same degree snapshot.
std::vector<std::uint32_t> sample_distinct_preferential(
    std::span<const std::uint32_t> degree_slots, std::uint32_t count, Rng& rng);

Graph generate_ba(const GenParams& params);
Graph generate_dms(const GenParams& params);
Graph generate(const GenParams& params);  // dispatch on params.model

}  // namespace sfpd
