#include "sfpd/sim.hpp"

#include <string>

#include "sfpd/errors.hpp"
#include "sfpd/rng.hpp"

namespace sfpd {

void SimConfig::validate() const {
  payoff.validate();
  mechanism.validate();
  if (generations < 1) throw ParameterError("sim: generations must be >= 1");
  if (tail_window < 1 || tail_window > generations)
    throw ParameterError("sim: tail_window must be in [1, generations]");
}

PopulationState init_strategies(std::uint32_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Strategy> strategies(n);
  for (std::uint32_t v = 0; v < n; ++v)
    strategies[v] = rng.coin() ? Strategy::Cooperate : Strategy::Defect;
  return PopulationState(std::move(strategies));
}

RunResult run_from_state(const Graph& g, const SimConfig& cfg,
                         PopulationState state) {
  cfg.validate();
  if (state.size() != g.node_count())
    throw ContractError("run: state size != node count");

  const std::uint32_t gens = cfg.generations;
  RunResult result;
  result.coop_trajectory.reserve(gens + 1);
  result.coop_trajectory.push_back(state.cooperation_fraction());
  result.per_generation_cost.assign(gens, 0.0);

  for (std::uint32_t t = 0; t < gens; ++t) {
    if (const auto common = is_homogeneous(state)) {
      result.absorbed_at = {t, *common};
      // Frozen from here: constant trajectory, no further interference.
      result.coop_trajectory.resize(gens + 1, result.coop_trajectory.back());
      break;
    }
    ScoreVector scores = accumulate_scores(g, state, cfg.payoff);
    const InvestmentDecision decision = decide(g, state, cfg.mechanism);
    result.per_generation_cost[t] = decision.generation_cost;
    result.invested_node_generations += decision.invested.size();
    if (!decision.invested.empty())
      apply_investments(scores, decision.invested, cfg.mechanism.theta);
    state = imitation_update(g, state, scores);
    result.coop_trajectory.push_back(state.cooperation_fraction());
  }

  if (!result.absorbed_at) {
    if (const auto common = is_homogeneous(state))
      result.absorbed_at = {gens, *common};
  }

  result.total_cost = cfg.mechanism.theta *
                      static_cast<double>(result.invested_node_generations);
  double tail_sum = 0.0;
  for (std::uint32_t t = gens + 1 - cfg.tail_window; t <= gens; ++t)
    tail_sum += result.coop_trajectory[t];
  result.tail_coop = tail_sum / static_cast<double>(cfg.tail_window);
  return result;
}

RunResult run(const Graph& g, const SimConfig& cfg) {
  return run_from_state(g, cfg, init_strategies(g.node_count(),
                                                cfg.strategy_seed));
}

}  // namespace sfpd
