#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sfpd/engine.hpp"
#include "sfpd/graph.hpp"

namespace sfpd {

enum class MechanismKind { None, Pop, Ni, Lc, NiAndLc };

std::string to_string(MechanismKind kind);
std::optional<MechanismKind> parse_mechanism_kind(const std::string& name);

// Which interference condition applies, its thresholds, and the
// per-investment amount theta. Thresholds must be present exactly for the
// kinds that use them:
//   Pop     -> pop_threshold_percent (p_C in [0,100]); invest in all
//              cooperators while 100 * x_C / n <= p_C
//   Ni      -> influence_threshold (c_I in [0,1]); invest in cooperators
//              with degree / max_degree >= c_I
//   Lc      -> local_coop_threshold (n_C); invest in cooperators whose
//              cooperative-neighbour fraction is strictly below n_C
//   NiAndLc -> influence_threshold and local_coop_threshold; invest only
//              when both conditions hold
// local_coop_absolute switches the LC threshold from a fraction of the
// neighbourhood to an absolute cooperative-neighbour count.
struct MechanismSpec {
  MechanismKind kind = MechanismKind::None;
  std::optional<double> pop_threshold_percent;
  std::optional<double> influence_threshold;
  std::optional<double> local_coop_threshold;
  bool local_coop_absolute = false;
  double theta = 0.0;

  void validate() const;  // throws ParameterError

  static MechanismSpec none();
  static MechanismSpec pop(double percent, double theta);
  static MechanismSpec ni(double c_i, double theta);
  static MechanismSpec lc(double n_c, double theta, bool absolute = false);
  static MechanismSpec ni_and_lc(double c_i, double n_c, double theta,
                                 bool absolute = false);
};

// Selectors return the invested node ids in ascending order; every selection
// is a subset of the current cooperators.
std::vector<std::uint32_t> select_pop(const PopulationState& state,
                                      const MechanismSpec& spec);
std::vector<std::uint32_t> select_ni(const Graph& g,
                                     const PopulationState& state,
                                     const MechanismSpec& spec);
std::vector<std::uint32_t> select_lc(const Graph& g,
                                     const PopulationState& state,
                                     const MechanismSpec& spec);
std::vector<std::uint32_t> select_combo(const Graph& g,
                                        const PopulationState& state,
                                        const MechanismSpec& spec);

struct InvestmentDecision {
  std::vector<std::uint32_t> invested;
  double generation_cost = 0.0;
};

// Dispatches to the spec's selector. A homogeneous population is absorbing,
// so no interference is made and cost is zero regardless of kind.
InvestmentDecision decide(const Graph& g, const PopulationState& state,
                          const MechanismSpec& spec);

// Per-run cost record; cumulative is the running sum of recorded entries.
class CostLedger {
 public:
  void record(double generation_cost) {
    per_generation_.push_back(generation_cost);
    cumulative_ += generation_cost;
  }
  const std::vector<double>& per_generation() const { return per_generation_; }
  double cumulative() const { return cumulative_; }

 private:
  std::vector<double> per_generation_;
  double cumulative_ = 0.0;
};

}  // namespace sfpd
