#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "sfpd/engine.hpp"
#include "sfpd/graph.hpp"
#include "sfpd/mechanisms.hpp"

namespace sfpd {

struct SimConfig {
  PayoffParams payoff;
  MechanismSpec mechanism;
  std::uint32_t generations = 75;
  std::uint32_t tail_window = 25;
  std::uint64_t strategy_seed = 0;

  void validate() const;  // generations >= 1, tail_window <= generations
};

// One full realisation. coop_trajectory[t] is the cooperation fraction of
// the state at generation t (entry 0 = initial state, generations + 1
// entries). per_generation_cost[t] is the cost of the interference decided
// on the state at generation t (generations entries; a homogeneous state
// triggers no interference, so entries are zero from absorption onward).
struct RunResult {
  std::vector<double> coop_trajectory;
  std::vector<double> per_generation_cost;
  std::uint64_t invested_node_generations = 0;
  double tail_coop = 0.0;
  double total_cost = 0.0;  // theta * invested_node_generations
  std::optional<std::pair<std::uint32_t, Strategy>> absorbed_at;
};

// Independent fair coin per node; deterministic given the seed (one raw
// 64-bit draw per node in node order, strategy from the top bit).
PopulationState init_strategies(std::uint32_t n, std::uint64_t seed);

// Per generation: accumulate scores, decide interference on the current
// state, add investments to the scores, then update synchronously. Once the
// state is homogeneous it is frozen and the trajectory padded to the full
// horizon with zero further cost.
RunResult run(const Graph& g, const SimConfig& cfg);

// Same loop from an explicit initial state (used for forced starts).
RunResult run_from_state(const Graph& g, const SimConfig& cfg,
                         PopulationState state);

}  // namespace sfpd
