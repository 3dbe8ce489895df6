#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sfpd/engine.hpp"
#include "sfpd/mechanisms.hpp"
#include "sfpd/netgen.hpp"
#include "sfpd/sim.hpp"

namespace sfpd {

// One experimental grid: (theta x threshold) cells for one mechanism on one
// network model, each cell evaluated on graph_count graphs times
// realisations_per_graph initial strategy assignments. Graph seeds and
// strategy seeds are derived from master_seed only (see graph_seed /
// strategy_seed), so every cell reuses the same graphs and the same initial
// assignments: cells differ only by mechanism parameters.
struct SweepSpec {
  GenParams gen_params;  // gen_params.seed is ignored; seeds are derived
  std::uint32_t graph_count = 10;
  std::uint32_t realisations_per_graph = 30;
  MechanismKind mechanism_kind = MechanismKind::None;
  std::vector<double> theta_grid;      // theta = 0 means no interference
  std::vector<double> threshold_grid;  // units depend on mechanism_kind
  // Fixed influence threshold for NiAndLc grids (threshold_grid then holds
  // the local-cooperation values).
  std::optional<double> combo_influence_threshold;
  bool local_coop_absolute = false;
  PayoffParams payoff;
  std::uint32_t generations = 75;
  std::uint32_t tail_window = 25;
  std::uint64_t master_seed = 0;

  void validate() const;  // throws ParameterError
};

struct CellStats {
  double theta = 0.0;
  double threshold = 0.0;
  double mean_coop = 0.0;
  double std_coop = 0.0;
  double mean_total_cost = 0.0;
  double std_total_cost = 0.0;
  std::vector<double> per_graph_mean_coop;
  std::vector<double> per_graph_mean_cost;
  std::uint32_t samples = 0;
};

struct SweepGrid {
  MechanismKind mechanism_kind = MechanismKind::None;
  std::vector<double> theta_grid;
  std::vector<double> threshold_grid;
  std::uint32_t graph_count = 0;
  std::uint32_t realisations_per_graph = 0;
  // Theta-major cell order: cells[ti * threshold_grid.size() + hi].
  std::vector<CellStats> cells;
};

// Documented seed-splitting chain (see rng.hpp): one stream for graphs, one
// for strategy assignments, indexed so that growing a grid or adding
// realisations never changes existing seeds.
std::uint64_t graph_seed(std::uint64_t master_seed, std::uint32_t graph_index);
std::uint64_t strategy_seed(std::uint64_t master_seed,
                            std::uint32_t graph_index,
                            std::uint32_t realisation);

// The graph set shared by all cells of a sweep.
std::vector<Graph> build_graph_set(const SweepSpec& spec);

// Mechanism spec for one cell. theta = 0 degenerates to no interference.
MechanismSpec cell_mechanism(const SweepSpec& spec, double theta,
                             double threshold);

// The threshold axis actually swept: the grid itself, or the single
// placeholder 0 for the no-interference mechanism.
std::vector<double> effective_thresholds(const SweepSpec& spec);

struct RunSummary {
  double tail_coop = 0.0;
  double total_cost = 0.0;
};

struct CellAggregate {
  double mean_coop = 0.0;
  double std_coop = 0.0;
  double mean_total_cost = 0.0;
  double std_total_cost = 0.0;
  std::vector<double> per_graph_mean_coop;
  std::vector<double> per_graph_mean_cost;
  std::uint32_t samples = 0;
};

// Mean and sample standard deviation in run-index order (bit-stable).
// Summaries are grouped into consecutive blocks of realisations_per_graph
// per graph for the per-graph means. Throws ContractError when empty.
CellAggregate aggregate(std::span<const RunSummary> summaries,
                        std::uint32_t realisations_per_graph);
CellAggregate aggregate(std::span<const RunResult> results,
                        std::uint32_t realisations_per_graph);

// Executes the whole grid. `workers` caps the thread count (0 = hardware
// concurrency); results are reduced in run-index order, so the grid is a
// pure function of the spec regardless of worker count.
SweepGrid run_sweep(const SweepSpec& spec, unsigned workers = 0);

}  // namespace sfpd
