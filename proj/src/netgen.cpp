#include "sfpd/netgen.hpp"

#include <algorithm>
#include <vector>

#include "sfpd/errors.hpp"

namespace sfpd {

std::string to_string(NetModel model) {
  return model == NetModel::Ba ? "ba" : "dms";
}

std::optional<NetModel> parse_net_model(const std::string& name) {
  if (name == "ba") return NetModel::Ba;
  if (name == "dms") return NetModel::Dms;
  return std::nullopt;
}

void GenParams::validate() const {
  if (model == NetModel::Ba) {
    if (m < 1) throw ParameterError("ba: m must be >= 1");
    const std::uint32_t clique = seed_clique_size();
    if (m > clique)
      throw ParameterError("ba: m <= m0 violated (m=" + std::to_string(m) +
                           ", m0=" + std::to_string(clique) + ")");
    if (n < clique)
      throw ParameterError("ba: n >= m0 violated (n=" + std::to_string(n) +
                           ", m0=" + std::to_string(clique) + ")");
  } else {
    if (m != 2) throw ParameterError("dms: m is fixed at 2");
    if (n < 3) throw ParameterError("dms: n >= 3 violated (n=" +
                                    std::to_string(n) + ")");
  }
}

std::vector<std::uint32_t> sample_distinct_preferential(
    std::span<const std::uint32_t> degree_slots, std::uint32_t count,
    Rng& rng) {
  std::vector<std::uint32_t> chosen;
  chosen.reserve(count);
  while (chosen.size() < count) {
    const std::uint32_t id =
        degree_slots[rng.below(degree_slots.size())];
    if (std::find(chosen.begin(), chosen.end(), id) == chosen.end())
      chosen.push_back(id);
  }
  return chosen;
}

Graph generate_ba(const GenParams& params) {
  if (params.model != NetModel::Ba)
    throw ParameterError("generate_ba called with non-BA params");
  params.validate();
  const std::uint32_t m0 = params.seed_clique_size();
  Rng rng(params.seed);

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m0) * (m0 - 1) / 2 +
                static_cast<std::size_t>(params.m) * (params.n - m0));
  // Slot table: one entry per edge endpoint, so picking a uniform slot picks
  // a node with probability proportional to its degree.
  std::vector<std::uint32_t> slots;
  slots.reserve(2 * edges.capacity());

  for (std::uint32_t i = 0; i < m0; ++i) {
    for (std::uint32_t j = i + 1; j < m0; ++j) {
      edges.push_back({i, j});
      slots.push_back(i);
      slots.push_back(j);
    }
  }

  for (std::uint32_t v = m0; v < params.n; ++v) {
    const auto targets = sample_distinct_preferential(slots, params.m, rng);
    // Degrees update only after the whole step: append slots afterwards.
    for (std::uint32_t t : targets) {
      edges.push_back({t, v});
    }
    for (std::uint32_t t : targets) {
      slots.push_back(t);
      slots.push_back(v);
    }
  }
  return Graph(params.n, std::move(edges));
}

Graph generate_dms(const GenParams& params) {
  if (params.model != NetModel::Dms)
    throw ParameterError("generate_dms called with non-DMS params");
  params.validate();
  Rng rng(params.seed);

  std::vector<Edge> edges{{0, 1}, {0, 2}, {1, 2}};
  edges.reserve(3 + 2 * static_cast<std::size_t>(params.n - 3));
  for (std::uint32_t v = 3; v < params.n; ++v) {
    // New node closes a triangle over one uniformly chosen existing edge.
    const Edge e = edges[rng.below(edges.size())];
    edges.push_back({e.a, v});
    edges.push_back({e.b, v});
  }
  return Graph(params.n, std::move(edges));
}

Graph generate(const GenParams& params) {
  return params.model == NetModel::Ba ? generate_ba(params)
                                      : generate_dms(params);
}

}  // namespace sfpd
