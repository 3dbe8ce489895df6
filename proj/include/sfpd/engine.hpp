#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sfpd/graph.hpp"

namespace sfpd {

enum class Strategy : std::uint8_t { Defect = 0, Cooperate = 1 };

inline char to_char(Strategy s) {
  return s == Strategy::Cooperate ? 'C' : 'D';
}

// Scaled one-shot Prisoner's Dilemma: T = b, R = 1, P = S = 0.
struct PayoffParams {
  double temptation = 1.8;  // b, with 1 < b <= 2
  void validate() const;    // throws ParameterError
};

// Payoff to `mine` from one encounter against `theirs`.
double payoff_against(Strategy mine, Strategy theirs, const PayoffParams& p);

struct PairPayoff {
  double first = 0.0;
  double second = 0.0;
};
PairPayoff pairwise_payoff(Strategy s1, Strategy s2, const PayoffParams& p);

// Per-node strategy vector with a cooperator-count cache.
class PopulationState {
 public:
  explicit PopulationState(std::vector<Strategy> strategies);

  std::uint32_t size() const {
    return static_cast<std::uint32_t>(strategies_.size());
  }
  Strategy at(std::uint32_t v) const { return strategies_[v]; }
  std::span<const Strategy> strategies() const { return strategies_; }
  std::uint32_t cooperator_count() const { return cooperator_count_; }
  double cooperation_fraction() const;

  friend bool operator==(const PopulationState&, const PopulationState&) =
      default;

 private:
  std::vector<Strategy> strategies_;
  std::uint32_t cooperator_count_ = 0;
};

using ScoreVector = std::vector<double>;

// score(v) = self-encounter payoff (Nowak-May convention: R for cooperators,
// P for defectors) plus the sum of v's payoffs against each neighbour,
// accumulated in ascending neighbour order. Throws ContractError on size
// mismatch.
ScoreVector accumulate_scores(const Graph& g, const PopulationState& state,
                              const PayoffParams& p);

// Adds theta to each invested node's score, in place. theta must be > 0.
void apply_investments(ScoreVector& scores,
                       std::span<const std::uint32_t> invested, double theta);

// Synchronous imitate-the-best update: every node copies the strategy of the
// highest-scoring member of {self} + neighbours, evaluated on the pre-update
// state. Ties: self wins if it attains the maximum, otherwise the
// smallest-id neighbour among those attaining it.
PopulationState imitation_update(const Graph& g, const PopulationState& state,
                                 const ScoreVector& scores);

// The common strategy when all nodes share one, otherwise nullopt.
std::optional<Strategy> is_homogeneous(const PopulationState& state);

}  // namespace sfpd
