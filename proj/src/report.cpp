#include "sfpd/report.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sfpd/errors.hpp"
#include "sfpd/version.hpp"

namespace sfpd {

std::string format_double(double value) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

namespace {

double parse_double_field(const std::string& field, std::size_t line) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last)
    throw FormatError("bad numeric field '" + field + "'", line);
  return value;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  fields.push_back(current);
  return fields;
}

constexpr const char* kGridHeader =
    "mechanism,theta,threshold,mean_coop,std_coop,mean_cost,std_cost,samples";

}  // namespace

std::vector<GridCsvRow> rows_of_grid(const SweepGrid& grid) {
  std::vector<GridCsvRow> rows;
  rows.reserve(grid.cells.size());
  for (const CellStats& cell : grid.cells) {
    rows.push_back({to_string(grid.mechanism_kind), cell.theta, cell.threshold,
                    cell.mean_coop, cell.std_coop, cell.mean_total_cost,
                    cell.std_total_cost, cell.samples});
  }
  return rows;
}

std::string grid_to_csv(const SweepGrid& grid) {
  std::string out = kGridHeader;
  out.push_back('\n');
  for (const GridCsvRow& row : rows_of_grid(grid)) {
    out += row.mechanism;
    out.push_back(',');
    out += format_double(row.theta);
    out.push_back(',');
    out += format_double(row.threshold);
    out.push_back(',');
    out += format_double(row.mean_coop);
    out.push_back(',');
    out += format_double(row.std_coop);
    out.push_back(',');
    out += format_double(row.mean_cost);
    out.push_back(',');
    out += format_double(row.std_cost);
    out.push_back(',');
    out += std::to_string(row.samples);
    out.push_back('\n');
  }
  return out;
}

std::vector<GridCsvRow> parse_grid_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || line != kGridHeader)
    throw FormatError("bad grid CSV header", line_no);
  std::vector<GridCsvRow> rows;
  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = split_csv_line(line);
    if (fields.size() != 8)
      throw FormatError("expected 8 fields, got " +
                            std::to_string(fields.size()),
                        line_no);
    GridCsvRow row;
    row.mechanism = fields[0];
    if (!parse_mechanism_kind(row.mechanism))
      throw FormatError("unknown mechanism '" + row.mechanism + "'", line_no);
    row.theta = parse_double_field(fields[1], line_no);
    row.threshold = parse_double_field(fields[2], line_no);
    row.mean_coop = parse_double_field(fields[3], line_no);
    row.std_coop = parse_double_field(fields[4], line_no);
    row.mean_cost = parse_double_field(fields[5], line_no);
    row.std_cost = parse_double_field(fields[6], line_no);
    row.samples =
        static_cast<std::uint32_t>(parse_double_field(fields[7], line_no));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string run_trajectory_csv(const RunResult& result) {
  std::string out = "generation,coop_fraction,generation_cost,cumulative_cost\n";
  double cumulative = 0.0;
  for (std::size_t t = 0; t < result.coop_trajectory.size(); ++t) {
    const double cost =
        t < result.per_generation_cost.size() ? result.per_generation_cost[t]
                                              : 0.0;
    cumulative += cost;
    out += std::to_string(t);
    out.push_back(',');
    out += format_double(result.coop_trajectory[t]);
    out.push_back(',');
    out += format_double(cost);
    out.push_back(',');
    out += format_double(cumulative);
    out.push_back('\n');
  }
  return out;
}

nlohmann::json run_summary_json(const RunResult& result) {
  nlohmann::json j;
  j["tail_coop"] = result.tail_coop;
  j["total_cost"] = result.total_cost;
  j["invested_node_generations"] = result.invested_node_generations;
  j["generations"] =
      static_cast<std::uint32_t>(result.coop_trajectory.size()) - 1;
  j["initial_coop"] = result.coop_trajectory.front();
  j["final_coop"] = result.coop_trajectory.back();
  if (result.absorbed_at) {
    j["absorbed_at"] = {{"generation", result.absorbed_at->first},
                        {"strategy", std::string(1, to_char(result.absorbed_at->second))}};
  } else {
    j["absorbed_at"] = nullptr;
  }
  return j;
}

nlohmann::json stats_json(const Graph& g, const GraphStats& stats) {
  nlohmann::json histogram = nlohmann::json::object();
  for (const auto& [degree, count] : stats.degree_histogram)
    histogram[std::to_string(degree)] = count;
  return nlohmann::json{{"n", g.node_count()},
                        {"edges", g.edge_count()},
                        {"mean_degree", stats.mean_degree},
                        {"max_degree", g.max_degree()},
                        {"global_clustering", stats.global_clustering},
                        {"mean_local_clustering", stats.mean_local_clustering},
                        {"degree_histogram", histogram}};
}

nlohmann::json sweep_manifest(const SweepSpec& spec, const SweepGrid& grid,
                              double wall_seconds) {
  nlohmann::json j;
  j["tool"] = "sfpd";
  j["version"] = kVersion;
  j["master_seed"] = spec.master_seed;
  j["network"] = {{"model", to_string(spec.gen_params.model)},
                  {"n", spec.gen_params.n},
                  {"m", spec.gen_params.m},
                  {"m0", spec.gen_params.seed_clique_size()}};
  j["graph_count"] = spec.graph_count;
  j["realisations_per_graph"] = spec.realisations_per_graph;
  j["mechanism"] = to_string(spec.mechanism_kind);
  j["theta_grid"] = spec.theta_grid;
  j["threshold_grid"] = grid.threshold_grid;
  if (spec.combo_influence_threshold)
    j["combo_influence_threshold"] = *spec.combo_influence_threshold;
  j["local_coop_absolute"] = spec.local_coop_absolute;
  j["temptation"] = spec.payoff.temptation;
  j["generations"] = spec.generations;
  j["tail_window"] = spec.tail_window;
  j["cells"] = grid.cells.size();
  j["samples_per_cell"] = spec.graph_count * spec.realisations_per_graph;
  j["wall_seconds"] = wall_seconds;
  return j;
}

void write_text_atomic(const std::filesystem::path& path,
                       const std::string& text) {
  namespace fs = std::filesystem;
  const fs::path dir = path.has_parent_path() ? path.parent_path() : ".";
  const fs::path tmp = dir / (path.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.close();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw IoError("write to '" + tmp.string() + "' failed");
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("rename to '" + path.string() + "' failed");
  }
}

}  // namespace sfpd
