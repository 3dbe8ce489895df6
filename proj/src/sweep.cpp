#include "sfpd/sweep.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <string>
#include <thread>

#include "sfpd/errors.hpp"
#include "sfpd/rng.hpp"

namespace sfpd {

namespace {

bool needs_threshold(MechanismKind kind) {
  return kind != MechanismKind::None;
}

// Runs fn(0..task_count) across `workers` threads, any assignment order.
// Callers must write results into per-task slots to stay deterministic.
void parallel_for(std::size_t task_count, unsigned workers,
                  const std::function<void(std::size_t)>& fn) {
  if (workers == 0) workers = std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  if (workers == 1 || task_count <= 1) {
    for (std::size_t i = 0; i < task_count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto body = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= task_count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned spawn = static_cast<unsigned>(
      std::min<std::size_t>(workers, task_count));
  pool.reserve(spawn);
  for (unsigned w = 0; w < spawn; ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

void SweepSpec::validate() const {
  GenParams gp = gen_params;
  gp.validate();
  payoff.validate();
  if (graph_count < 1) throw ParameterError("sweep: graph_count must be >= 1");
  if (realisations_per_graph < 1)
    throw ParameterError("sweep: realisations_per_graph must be >= 1");
  if (generations < 1) throw ParameterError("sweep: generations must be >= 1");
  if (tail_window < 1 || tail_window > generations)
    throw ParameterError("sweep: tail_window must be in [1, generations]");
  if (theta_grid.empty()) throw ParameterError("sweep: theta_grid is empty");
  for (double theta : theta_grid)
    if (theta < 0.0) throw ParameterError("sweep: theta must be >= 0");
  if (needs_threshold(mechanism_kind) && threshold_grid.empty())
    throw ParameterError("sweep: threshold_grid is empty");
  if (mechanism_kind == MechanismKind::NiAndLc &&
      !combo_influence_threshold.has_value())
    throw ParameterError(
        "sweep: mechanism ni_and_lc requires combo_influence_threshold");
  if (combo_influence_threshold && mechanism_kind != MechanismKind::NiAndLc)
    throw ParameterError(
        "sweep: combo_influence_threshold is only used by ni_and_lc");
  // Validate every cell up front so a bad grid point fails before any run.
  for (double theta : theta_grid)
    for (double threshold : effective_thresholds(*this))
      cell_mechanism(*this, theta, threshold);
}

std::uint64_t graph_seed(std::uint64_t master_seed,
                         std::uint32_t graph_index) {
  return derive_seed(master_seed, seed_stream::kGraph, graph_index);
}

std::uint64_t strategy_seed(std::uint64_t master_seed,
                            std::uint32_t graph_index,
                            std::uint32_t realisation) {
  return derive_seed(master_seed, seed_stream::kStrategies,
                     (static_cast<std::uint64_t>(graph_index) << 32) |
                         realisation);
}

std::vector<Graph> build_graph_set(const SweepSpec& spec) {
  std::vector<Graph> graphs;
  graphs.reserve(spec.graph_count);
  for (std::uint32_t gi = 0; gi < spec.graph_count; ++gi) {
    GenParams params = spec.gen_params;
    params.seed = graph_seed(spec.master_seed, gi);
    graphs.push_back(generate(params));
  }
  return graphs;
}

MechanismSpec cell_mechanism(const SweepSpec& spec, double theta,
                             double threshold) {
  try {
    if (spec.mechanism_kind == MechanismKind::None || theta == 0.0)
      return MechanismSpec::none();
    switch (spec.mechanism_kind) {
      case MechanismKind::Pop: return MechanismSpec::pop(threshold, theta);
      case MechanismKind::Ni: return MechanismSpec::ni(threshold, theta);
      case MechanismKind::Lc:
        return MechanismSpec::lc(threshold, theta, spec.local_coop_absolute);
      case MechanismKind::NiAndLc:
        return MechanismSpec::ni_and_lc(*spec.combo_influence_threshold,
                                        threshold, theta,
                                        spec.local_coop_absolute);
      default: return MechanismSpec::none();
    }
  } catch (const ParameterError& e) {
    throw ParameterError("sweep cell (theta=" + std::to_string(theta) +
                         ", threshold=" + std::to_string(threshold) +
                         "): " + e.what());
  }
}

std::vector<double> effective_thresholds(const SweepSpec& spec) {
  if (needs_threshold(spec.mechanism_kind)) return spec.threshold_grid;
  return {0.0};
}

CellAggregate aggregate(std::span<const RunSummary> summaries,
                        std::uint32_t realisations_per_graph) {
  if (summaries.empty())
    throw ContractError("aggregate: empty result list");
  if (realisations_per_graph == 0 ||
      summaries.size() % realisations_per_graph != 0)
    throw ContractError("aggregate: summaries do not group into graphs");

  CellAggregate agg;
  agg.samples = static_cast<std::uint32_t>(summaries.size());
  const double count = static_cast<double>(summaries.size());

  double coop_sum = 0.0;
  double cost_sum = 0.0;
  for (const RunSummary& s : summaries) {
    coop_sum += s.tail_coop;
    cost_sum += s.total_cost;
  }
  agg.mean_coop = coop_sum / count;
  agg.mean_total_cost = cost_sum / count;

  if (summaries.size() > 1) {
    double coop_sq = 0.0;
    double cost_sq = 0.0;
    for (const RunSummary& s : summaries) {
      coop_sq += (s.tail_coop - agg.mean_coop) * (s.tail_coop - agg.mean_coop);
      cost_sq +=
          (s.total_cost - agg.mean_total_cost) * (s.total_cost - agg.mean_total_cost);
    }
    agg.std_coop = std::sqrt(coop_sq / (count - 1.0));
    agg.std_total_cost = std::sqrt(cost_sq / (count - 1.0));
  }

  const std::uint32_t graphs =
      static_cast<std::uint32_t>(summaries.size() / realisations_per_graph);
  agg.per_graph_mean_coop.reserve(graphs);
  agg.per_graph_mean_cost.reserve(graphs);
  for (std::uint32_t gi = 0; gi < graphs; ++gi) {
    double coop = 0.0;
    double cost = 0.0;
    for (std::uint32_t r = 0; r < realisations_per_graph; ++r) {
      const RunSummary& s = summaries[gi * realisations_per_graph + r];
      coop += s.tail_coop;
      cost += s.total_cost;
    }
    agg.per_graph_mean_coop.push_back(
        coop / static_cast<double>(realisations_per_graph));
    agg.per_graph_mean_cost.push_back(
        cost / static_cast<double>(realisations_per_graph));
  }
  return agg;
}

CellAggregate aggregate(std::span<const RunResult> results,
                        std::uint32_t realisations_per_graph) {
  std::vector<RunSummary> summaries;
  summaries.reserve(results.size());
  for (const RunResult& r : results)
    summaries.push_back({r.tail_coop, r.total_cost});
  return aggregate(std::span<const RunSummary>(summaries),
                   realisations_per_graph);
}

SweepGrid run_sweep(const SweepSpec& spec, unsigned workers) {
  spec.validate();
  const std::vector<double> thresholds = effective_thresholds(spec);
  const std::size_t cell_count = spec.theta_grid.size() * thresholds.size();
  const std::size_t runs_per_cell =
      static_cast<std::size_t>(spec.graph_count) * spec.realisations_per_graph;

  // All cell mechanisms are pre-built (validation already proved them).
  std::vector<MechanismSpec> cell_specs;
  cell_specs.reserve(cell_count);
  for (double theta : spec.theta_grid)
    for (double threshold : thresholds)
      cell_specs.push_back(cell_mechanism(spec, theta, threshold));

  const std::vector<Graph> graphs = build_graph_set(spec);

  // One slot per (cell, graph, realisation); workers may fill slots in any
  // order, the reduction below reads them in index order.
  std::vector<RunSummary> summaries(cell_count * runs_per_cell);
  parallel_for(summaries.size(), workers, [&](std::size_t task) {
    const std::size_t cell = task / runs_per_cell;
    const std::size_t within = task % runs_per_cell;
    const std::uint32_t gi =
        static_cast<std::uint32_t>(within / spec.realisations_per_graph);
    const std::uint32_t r =
        static_cast<std::uint32_t>(within % spec.realisations_per_graph);
    SimConfig cfg;
    cfg.payoff = spec.payoff;
    cfg.mechanism = cell_specs[cell];
    cfg.generations = spec.generations;
    cfg.tail_window = spec.tail_window;
    cfg.strategy_seed = strategy_seed(spec.master_seed, gi, r);
    const RunResult result = run(graphs[gi], cfg);
    summaries[task] = {result.tail_coop, result.total_cost};
  });

  SweepGrid grid;
  grid.mechanism_kind = spec.mechanism_kind;
  grid.theta_grid = spec.theta_grid;
  grid.threshold_grid = thresholds;
  grid.graph_count = spec.graph_count;
  grid.realisations_per_graph = spec.realisations_per_graph;
  grid.cells.reserve(cell_count);
  for (std::size_t ci = 0; ci < cell_count; ++ci) {
    const std::span<const RunSummary> block(summaries.data() + ci * runs_per_cell,
                                            runs_per_cell);
    const CellAggregate agg = aggregate(block, spec.realisations_per_graph);
    CellStats cell;
    cell.theta = spec.theta_grid[ci / thresholds.size()];
    cell.threshold = thresholds[ci % thresholds.size()];
    cell.mean_coop = agg.mean_coop;
    cell.std_coop = agg.std_coop;
    cell.mean_total_cost = agg.mean_total_cost;
    cell.std_total_cost = agg.std_total_cost;
    cell.per_graph_mean_coop = agg.per_graph_mean_coop;
    cell.per_graph_mean_cost = agg.per_graph_mean_cost;
    cell.samples = agg.samples;
    grid.cells.push_back(std::move(cell));
  }
  return grid;
}

}  // namespace sfpd
