#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "sfpd/graph.hpp"
#include "sfpd/graph_stats.hpp"
#include "sfpd/sim.hpp"
#include "sfpd/sweep.hpp"

namespace sfpd {

// Shortest round-trip decimal form (dot separator, locale independent).
std::string format_double(double value);

// Grid CSV schema, fixed column order, '\n' line ends:
//   mechanism,theta,threshold,mean_coop,std_coop,mean_cost,std_cost,samples
std::string grid_to_csv(const SweepGrid& grid);

struct GridCsvRow {
  std::string mechanism;
  double theta = 0.0;
  double threshold = 0.0;
  double mean_coop = 0.0;
  double std_coop = 0.0;
  double mean_cost = 0.0;
  double std_cost = 0.0;
  std::uint32_t samples = 0;

  friend bool operator==(const GridCsvRow&, const GridCsvRow&) = default;
};

std::vector<GridCsvRow> rows_of_grid(const SweepGrid& grid);
// Parses a grid CSV back into rows; throws FormatError on schema violations.
std::vector<GridCsvRow> parse_grid_csv(const std::string& text);

// Trajectory CSV: generation,coop_fraction,generation_cost,cumulative_cost
std::string run_trajectory_csv(const RunResult& result);

nlohmann::json run_summary_json(const RunResult& result);
nlohmann::json stats_json(const Graph& g, const GraphStats& stats);
nlohmann::json sweep_manifest(const SweepSpec& spec, const SweepGrid& grid,
                              double wall_seconds);

// Writes via a temporary file in the same directory and renames into place,
// so a failed write never leaves a partial output file.
void write_text_atomic(const std::filesystem::path& path,
                       const std::string& text);

}  // namespace sfpd
