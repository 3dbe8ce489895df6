#include "sfpd/engine.hpp"

#include <string>

#include "sfpd/errors.hpp"

namespace sfpd {

void PayoffParams::validate() const {
  if (!(temptation > 1.0 && temptation <= 2.0))
    throw ParameterError("payoff: temptation b must satisfy 1 < b <= 2, got " +
                         std::to_string(temptation));
}

double payoff_against(Strategy mine, Strategy theirs, const PayoffParams& p) {
  if (theirs == Strategy::Defect) return 0.0;  // P = S = 0
  return mine == Strategy::Cooperate ? 1.0 : p.temptation;
}

PairPayoff pairwise_payoff(Strategy s1, Strategy s2, const PayoffParams& p) {
  return {payoff_against(s1, s2, p), payoff_against(s2, s1, p)};
}

PopulationState::PopulationState(std::vector<Strategy> strategies)
    : strategies_(std::move(strategies)) {
  for (Strategy s : strategies_)
    if (s == Strategy::Cooperate) ++cooperator_count_;
}

double PopulationState::cooperation_fraction() const {
  if (strategies_.empty()) return 0.0;
  return static_cast<double>(cooperator_count_) /
         static_cast<double>(strategies_.size());
}

ScoreVector accumulate_scores(const Graph& g, const PopulationState& state,
                              const PayoffParams& p) {
  if (state.size() != g.node_count())
    throw ContractError("accumulate_scores: state size " +
                        std::to_string(state.size()) + " != node count " +
                        std::to_string(g.node_count()));
  ScoreVector scores(g.node_count(), 0.0);
  for (std::uint32_t v = 0; v < g.node_count(); ++v) {
    const Strategy sv = state.at(v);
    // Nowak-May convention: the self-encounter gives cooperators R and
    // defectors P. It is load-bearing for the b = 1.8 dynamics: cooperator
    // pairs must beat single exploiters (R + R > b) or cooperation collapses.
    double total = payoff_against(sv, sv, p);
    for (std::uint32_t w : g.neighbors(v))
      total += payoff_against(sv, state.at(w), p);
    scores[v] = total;
  }
  return scores;
}

void apply_investments(ScoreVector& scores,
                       std::span<const std::uint32_t> invested, double theta) {
  if (theta <= 0.0)
    throw ParameterError("apply_investments: theta must be > 0");
  for (std::uint32_t v : invested) scores[v] += theta;
}

PopulationState imitation_update(const Graph& g, const PopulationState& state,
                                 const ScoreVector& scores) {
  if (state.size() != g.node_count() || scores.size() != g.node_count())
    throw ContractError("imitation_update: size mismatch");
  std::vector<Strategy> next(g.node_count());
  for (std::uint32_t v = 0; v < g.node_count(); ++v) {
    // Self starts as the incumbent and only a strictly higher score displaces
    // it; scanning neighbours ascending makes the smallest id win ties.
    std::uint32_t best = v;
    double best_score = scores[v];
    for (std::uint32_t w : g.neighbors(v)) {
      if (scores[w] > best_score) {
        best = w;
        best_score = scores[w];
      }
    }
    next[v] = state.at(best);
  }
  return PopulationState(std::move(next));
}

std::optional<Strategy> is_homogeneous(const PopulationState& state) {
  if (state.size() == 0) return std::nullopt;
  if (state.cooperator_count() == state.size()) return Strategy::Cooperate;
  if (state.cooperator_count() == 0) return Strategy::Defect;
  return std::nullopt;
}

}  // namespace sfpd
