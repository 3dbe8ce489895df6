// sfpd: scale-free network Prisoner's Dilemma simulator with external
// investment mechanisms. Subcommands: gen-net, stats, run, sweep.

#include <cctype>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sfpd/errors.hpp"
#include "sfpd/graph_io.hpp"
#include "sfpd/graph_stats.hpp"
#include "sfpd/netgen.hpp"
#include "sfpd/report.hpp"
#include "sfpd/sim.hpp"
#include "sfpd/sweep.hpp"
#include "sfpd/version.hpp"

namespace {

namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitValidation = 2;

// Relative output paths land under $SFPD_OUT_DIR when it is set.
fs::path resolve_output(const std::string& path) {
  fs::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("SFPD_OUT_DIR"); dir && *dir)
      return fs::path(dir) / p;
  }
  return p;
}

// Flat key=value config files for run/sweep. CLI11 only processes config
// files registered on the root command, so subcommand configs are merged by
// hand: every key mirrors a flag name, values from the file apply only where
// the flag was not given (flags override config, config overrides defaults).
std::string trim_copy(std::string s) {
  const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!s.empty() && is_space(s.back())) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && is_space(static_cast<unsigned char>(s[i]))) ++i;
  return s.substr(i);
}

double config_double(const std::string& v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw sfpd::ParameterError("not a number: '" + v + "'");
  return out;
}

std::uint64_t config_u64(const std::string& v) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw sfpd::ParameterError("not a non-negative integer: '" + v + "'");
  return out;
}

std::uint32_t config_u32(const std::string& v) {
  return static_cast<std::uint32_t>(config_u64(v));
}

std::vector<double> config_grid(const std::string& v) {
  std::vector<double> out;
  std::string token;
  const auto flush = [&] {
    if (!token.empty()) {
      out.push_back(config_double(token));
      token.clear();
    }
  };
  for (char c : v) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c)))
      flush();
    else
      token.push_back(c);
  }
  flush();
  if (out.empty()) throw sfpd::ParameterError("empty grid");
  return out;
}

bool config_bool(const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw sfpd::ParameterError("not a boolean: '" + v + "'");
}

class ConfigMerge {
 public:
  explicit ConfigMerge(const CLI::App* cmd) : cmd_(cmd) {}

  void bind(const std::string& key,
            std::function<void(const std::string&)> set) {
    setters_[key] = std::move(set);
  }

  bool applied(const std::string& key) const {
    return applied_.count(key) > 0;
  }

  void apply(const fs::path& path) {
    std::ifstream in(path);
    if (!in)
      throw sfpd::IoError("cannot open config '" + path.string() + "'");
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      const std::string text = trim_copy(line);
      if (text.empty() || text[0] == '#') continue;
      const std::size_t eq = text.find('=');
      if (eq == std::string::npos)
        throw sfpd::FormatError("expected key=value, got '" + text + "'",
                                line_no);
      const std::string key = trim_copy(text.substr(0, eq));
      const std::string value = trim_copy(text.substr(eq + 1));
      const auto it = setters_.find(key);
      if (it == setters_.end())
        throw sfpd::ParameterError("config: unknown key '" + key + "' (line " +
                                   std::to_string(line_no) + ")");
      if (cmd_->count("--" + key) > 0) continue;  // the explicit flag wins
      try {
        it->second(value);
      } catch (const sfpd::ParameterError& e) {
        throw sfpd::ParameterError("config: key '" + key + "' (line " +
                                   std::to_string(line_no) + "): " + e.what());
      }
      applied_.insert(key);
    }
  }

 private:
  const CLI::App* cmd_;
  std::map<std::string, std::function<void(const std::string&)>> setters_;
  std::set<std::string> applied_;
};

struct NetOptions {
  std::string model = "ba";
  std::uint32_t n = 0;
  std::uint32_t m = 2;
  std::optional<std::uint32_t> m0;
  std::uint64_t seed = 0;

  sfpd::GenParams to_params() const {
    const auto parsed = sfpd::parse_net_model(model);
    if (!parsed)
      throw sfpd::ParameterError("unknown model '" + model +
                                 "' (expected ba or dms)");
    return {*parsed, n, m, m0, seed};
  }
};

void add_net_options(CLI::App* cmd, NetOptions& opts, bool require_n = true) {
  cmd->add_option("--model", opts.model, "Network model: ba or dms")
      ->check(CLI::IsMember({"ba", "dms"}));
  auto* n = cmd->add_option("--n", opts.n, "Number of nodes");
  if (require_n) n->required();
  cmd->add_option("--m", opts.m, "Edges per new node (ba; dms is fixed at 2)");
  cmd->add_option("--m0", opts.m0, "Seed clique size (ba only, default m+1)");
  cmd->add_option("--seed", opts.seed, "Graph growth seed");
}

struct MechanismOptions {
  std::string mechanism = "none";
  double theta = 0.0;
  std::optional<double> pop_threshold_percent;
  std::optional<double> influence_threshold;
  std::optional<double> local_coop_fraction;
  std::optional<double> local_coop_count;

  sfpd::MechanismSpec to_spec() const {
    const auto kind = sfpd::parse_mechanism_kind(mechanism);
    if (!kind)
      throw sfpd::ParameterError("unknown mechanism '" + mechanism + "'");
    if (local_coop_fraction && local_coop_count)
      throw sfpd::ParameterError(
          "choose one of --local_coop_fraction / --local_coop_count");
    sfpd::MechanismSpec spec;
    spec.kind = *kind;
    spec.theta = theta;
    spec.pop_threshold_percent = pop_threshold_percent;
    spec.influence_threshold = influence_threshold;
    if (local_coop_count) {
      spec.local_coop_threshold = local_coop_count;
      spec.local_coop_absolute = true;
    } else {
      spec.local_coop_threshold = local_coop_fraction;
    }
    spec.validate();
    return spec;
  }
};

void add_mechanism_options(CLI::App* cmd, MechanismOptions& opts) {
  cmd->add_option("--mechanism", opts.mechanism,
                  "Interference mechanism: none, pop, ni, lc, ni_and_lc")
      ->check(CLI::IsMember({"none", "pop", "ni", "lc", "ni_and_lc"}));
  cmd->add_option("--theta", opts.theta, "Per-investment amount (> 0)");
  cmd->add_option("--pop_threshold_percent", opts.pop_threshold_percent,
                  "POP: invest while cooperation percentage <= this [0,100]");
  cmd->add_option("--influence_threshold", opts.influence_threshold,
                  "NI: invest in cooperators with degree/max_degree >= this");
  cmd->add_option("--local_coop_fraction", opts.local_coop_fraction,
                  "LC: invest while cooperative-neighbour fraction < this");
  cmd->add_option("--local_coop_count", opts.local_coop_count,
                  "LC variant: threshold as an absolute neighbour count");
}

int cmd_gen_net(const NetOptions& net, const std::string& out) {
  const sfpd::Graph g = sfpd::generate(net.to_params());
  const sfpd::GraphStats stats = sfpd::compute_stats(g);
  if (!out.empty()) {
    sfpd::save_edgelist_file(g, resolve_output(out));
    std::cout << sfpd::stats_json(g, stats).dump(2) << "\n";
  } else {
    sfpd::save_edgelist(g, std::cout);
    std::cerr << sfpd::stats_json(g, stats).dump(2) << "\n";
  }
  return kExitOk;
}

int cmd_stats(const std::string& graph_path) {
  const sfpd::Graph g = sfpd::load_edgelist_file(graph_path);
  std::cout << sfpd::stats_json(g, sfpd::compute_stats(g)).dump(2) << "\n";
  return kExitOk;
}

struct RunOptions {
  NetOptions net;
  std::string graph_path;
  MechanismOptions mech;
  double temptation = 1.8;
  std::uint32_t generations = 75;
  std::uint32_t tail_window = 25;
  std::uint64_t strategy_seed = 0;
  std::string trajectory_csv;
};

void bind_net_keys(ConfigMerge& merge, NetOptions& net) {
  merge.bind("model", [&net](const std::string& v) { net.model = v; });
  merge.bind("n", [&net](const std::string& v) { net.n = config_u32(v); });
  merge.bind("m", [&net](const std::string& v) { net.m = config_u32(v); });
  merge.bind("m0", [&net](const std::string& v) { net.m0 = config_u32(v); });
  merge.bind("seed",
             [&net](const std::string& v) { net.seed = config_u64(v); });
}

ConfigMerge run_config_merge(const CLI::App* cmd, RunOptions& opts) {
  ConfigMerge merge(cmd);
  bind_net_keys(merge, opts.net);
  merge.bind("graph",
             [&opts](const std::string& v) { opts.graph_path = v; });
  merge.bind("mechanism",
             [&opts](const std::string& v) { opts.mech.mechanism = v; });
  merge.bind("theta", [&opts](const std::string& v) {
    opts.mech.theta = config_double(v);
  });
  merge.bind("pop_threshold_percent", [&opts](const std::string& v) {
    opts.mech.pop_threshold_percent = config_double(v);
  });
  merge.bind("influence_threshold", [&opts](const std::string& v) {
    opts.mech.influence_threshold = config_double(v);
  });
  merge.bind("local_coop_fraction", [&opts](const std::string& v) {
    opts.mech.local_coop_fraction = config_double(v);
  });
  merge.bind("local_coop_count", [&opts](const std::string& v) {
    opts.mech.local_coop_count = config_double(v);
  });
  merge.bind("temptation", [&opts](const std::string& v) {
    opts.temptation = config_double(v);
  });
  merge.bind("generations", [&opts](const std::string& v) {
    opts.generations = config_u32(v);
  });
  merge.bind("tail_window", [&opts](const std::string& v) {
    opts.tail_window = config_u32(v);
  });
  merge.bind("strategy_seed", [&opts](const std::string& v) {
    opts.strategy_seed = config_u64(v);
  });
  merge.bind("trajectory_csv",
             [&opts](const std::string& v) { opts.trajectory_csv = v; });
  return merge;
}

int cmd_run(const RunOptions& opts, bool net_given) {
  if (!opts.graph_path.empty() && net_given)
    throw sfpd::ParameterError(
        "choose one graph source: --graph or --model/--n");
  if (opts.graph_path.empty() && !net_given)
    throw sfpd::ParameterError("need a graph: --graph FILE or --model/--n");

  const sfpd::Graph g = opts.graph_path.empty()
                            ? sfpd::generate(opts.net.to_params())
                            : sfpd::load_edgelist_file(opts.graph_path);

  sfpd::SimConfig cfg;
  cfg.payoff.temptation = opts.temptation;
  cfg.mechanism = opts.mech.to_spec();
  cfg.generations = opts.generations;
  cfg.tail_window = opts.tail_window;
  cfg.strategy_seed = opts.strategy_seed;

  const sfpd::RunResult result = sfpd::run(g, cfg);
  if (!opts.trajectory_csv.empty())
    sfpd::write_text_atomic(resolve_output(opts.trajectory_csv),
                            sfpd::run_trajectory_csv(result));
  std::cout << sfpd::run_summary_json(result).dump(2) << "\n";
  return kExitOk;
}

struct SweepOptions {
  NetOptions net;
  std::uint32_t graph_count = 10;
  std::uint32_t realisations_per_graph = 30;
  std::string mechanism = "none";
  double temptation = 1.8;
  std::uint32_t generations = 75;
  std::uint32_t tail_window = 25;
  std::uint64_t master_seed = 0;
  std::vector<double> theta_grid;
  std::vector<double> pop_threshold_percent_grid;
  std::vector<double> influence_threshold_grid;
  std::vector<double> local_coop_fraction_grid;
  std::vector<double> local_coop_count_grid;
  std::optional<double> influence_threshold;  // fixed c_I for ni_and_lc
  unsigned workers = 0;
  std::string out;
  std::string manifest;
  bool verbose = false;

  sfpd::SweepSpec to_spec() const {
    const auto kind = sfpd::parse_mechanism_kind(mechanism);
    if (!kind)
      throw sfpd::ParameterError("unknown mechanism '" + mechanism + "'");

    sfpd::SweepSpec spec;
    spec.gen_params = net.to_params();
    spec.graph_count = graph_count;
    spec.realisations_per_graph = realisations_per_graph;
    spec.mechanism_kind = *kind;
    spec.theta_grid = theta_grid.empty() && *kind == sfpd::MechanismKind::None
                          ? std::vector<double>{0.0}
                          : theta_grid;
    spec.payoff.temptation = temptation;
    spec.generations = generations;
    spec.tail_window = tail_window;
    spec.master_seed = master_seed;
    spec.combo_influence_threshold = influence_threshold;

    // Exactly the grid matching the mechanism may be present; the key name
    // carries the unit.
    struct NamedGrid {
      const char* key;
      const std::vector<double>* grid;
      bool expected;
      bool absolute = false;
    };
    const bool wants_lc = *kind == sfpd::MechanismKind::Lc ||
                          *kind == sfpd::MechanismKind::NiAndLc;
    const NamedGrid grids[] = {
        {"pop_threshold_percent_grid", &pop_threshold_percent_grid,
         *kind == sfpd::MechanismKind::Pop},
        {"influence_threshold_grid", &influence_threshold_grid,
         *kind == sfpd::MechanismKind::Ni},
        {"local_coop_fraction_grid", &local_coop_fraction_grid, wants_lc},
        {"local_coop_count_grid", &local_coop_count_grid, wants_lc, true},
    };
    bool lc_filled = false;
    for (const NamedGrid& ng : grids) {
      if (ng.grid->empty()) continue;
      if (!ng.expected)
        throw sfpd::ParameterError(std::string(ng.key) +
                                   " is not used by mechanism " + mechanism);
      if (!spec.threshold_grid.empty() && (!wants_lc || lc_filled))
        throw sfpd::ParameterError("multiple threshold grids given");
      if (wants_lc && ng.absolute) spec.local_coop_absolute = true;
      if (wants_lc) lc_filled = true;
      spec.threshold_grid = *ng.grid;
    }
    spec.validate();
    return spec;
  }
};

ConfigMerge sweep_config_merge(const CLI::App* cmd, SweepOptions& opts) {
  ConfigMerge merge(cmd);
  bind_net_keys(merge, opts.net);
  merge.bind("graph_count", [&opts](const std::string& v) {
    opts.graph_count = config_u32(v);
  });
  merge.bind("realisations_per_graph", [&opts](const std::string& v) {
    opts.realisations_per_graph = config_u32(v);
  });
  merge.bind("mechanism",
             [&opts](const std::string& v) { opts.mechanism = v; });
  merge.bind("temptation", [&opts](const std::string& v) {
    opts.temptation = config_double(v);
  });
  merge.bind("generations", [&opts](const std::string& v) {
    opts.generations = config_u32(v);
  });
  merge.bind("tail_window", [&opts](const std::string& v) {
    opts.tail_window = config_u32(v);
  });
  merge.bind("master_seed", [&opts](const std::string& v) {
    opts.master_seed = config_u64(v);
  });
  merge.bind("theta_grid", [&opts](const std::string& v) {
    opts.theta_grid = config_grid(v);
  });
  merge.bind("pop_threshold_percent_grid", [&opts](const std::string& v) {
    opts.pop_threshold_percent_grid = config_grid(v);
  });
  merge.bind("influence_threshold_grid", [&opts](const std::string& v) {
    opts.influence_threshold_grid = config_grid(v);
  });
  merge.bind("local_coop_fraction_grid", [&opts](const std::string& v) {
    opts.local_coop_fraction_grid = config_grid(v);
  });
  merge.bind("local_coop_count_grid", [&opts](const std::string& v) {
    opts.local_coop_count_grid = config_grid(v);
  });
  merge.bind("influence_threshold", [&opts](const std::string& v) {
    opts.influence_threshold = config_double(v);
  });
  merge.bind("workers", [&opts](const std::string& v) {
    opts.workers = static_cast<unsigned>(config_u64(v));
  });
  merge.bind("out", [&opts](const std::string& v) { opts.out = v; });
  merge.bind("manifest",
             [&opts](const std::string& v) { opts.manifest = v; });
  merge.bind("verbose",
             [&opts](const std::string& v) { opts.verbose = config_bool(v); });
  return merge;
}

int cmd_sweep(const SweepOptions& opts) {
  const sfpd::SweepSpec spec = opts.to_spec();
  const auto t0 = std::chrono::steady_clock::now();
  const sfpd::SweepGrid grid = sfpd::run_sweep(spec, opts.workers);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  const fs::path csv_path = resolve_output(opts.out);
  sfpd::write_text_atomic(csv_path, sfpd::grid_to_csv(grid));
  const fs::path manifest_path =
      opts.manifest.empty() ? fs::path(csv_path.string() + ".manifest.json")
                            : resolve_output(opts.manifest);
  sfpd::write_text_atomic(manifest_path,
                          sfpd::sweep_manifest(spec, grid, wall).dump(2) + "\n");
  if (opts.verbose)
    std::cerr << "sweep: " << grid.cells.size() << " cells, "
              << grid.graph_count * grid.realisations_per_graph
              << " runs/cell, " << wall << "s -> " << csv_path.string() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Prisoner's Dilemma on scale-free networks with external "
               "investment mechanisms"};
  app.set_version_flag("--version", sfpd::kVersion);
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen-net", "Generate a network edge list");
  NetOptions gen_net;
  std::string gen_out;
  add_net_options(gen, gen_net);
  gen->add_option("--out", gen_out,
                  "Edge-list output file (default: standard output)");

  auto* stats = app.add_subcommand("stats", "Structural statistics of a graph");
  std::string stats_graph;
  stats->add_option("--graph", stats_graph, "Edge-list file")->required();

  auto* run = app.add_subcommand("run", "Run a single realisation");
  RunOptions run_opts;
  std::string run_config;
  run->add_option("--config", run_config,
                  "Key=value config file (flags override)");
  add_net_options(run, run_opts.net, /*require_n=*/false);
  run->add_option("--graph", run_opts.graph_path,
                  "Edge-list file (alternative to --model/--n)");
  add_mechanism_options(run, run_opts.mech);
  run->add_option("--temptation", run_opts.temptation,
                  "Defector payoff b against a cooperator (1 < b <= 2)");
  run->add_option("--generations", run_opts.generations, "Generations to run");
  run->add_option("--tail_window", run_opts.tail_window,
                  "Generations averaged for the tail statistic");
  run->add_option("--strategy_seed", run_opts.strategy_seed,
                  "Seed for the initial strategy assignment");
  run->add_option("--trajectory_csv", run_opts.trajectory_csv,
                  "Write the per-generation trajectory CSV here");

  auto* sweep = app.add_subcommand("sweep", "Run a (theta x threshold) grid");
  SweepOptions sw;
  std::string sweep_config;
  sweep->add_option("--config", sweep_config,
                    "Key=value config file (flags override)");
  add_net_options(sweep, sw.net, /*require_n=*/false);
  sweep->add_option("--graph_count", sw.graph_count, "Graphs per cell");
  sweep->add_option("--realisations_per_graph", sw.realisations_per_graph,
                    "Strategy assignments per graph");
  sweep->add_option("--mechanism", sw.mechanism,
                    "none, pop, ni, lc, ni_and_lc")
      ->check(CLI::IsMember({"none", "pop", "ni", "lc", "ni_and_lc"}));
  sweep->add_option("--temptation", sw.temptation, "Payoff b (1 < b <= 2)");
  sweep->add_option("--generations", sw.generations, "Generations per run");
  sweep->add_option("--tail_window", sw.tail_window, "Tail averaging window");
  sweep->add_option("--master_seed", sw.master_seed,
                    "Master seed; graph and strategy seeds derive from it");
  sweep->add_option("--theta_grid", sw.theta_grid,
                    "Per-investment amounts (0 = no interference)");
  sweep->add_option("--pop_threshold_percent_grid",
                    sw.pop_threshold_percent_grid, "POP thresholds [0,100]");
  sweep->add_option("--influence_threshold_grid", sw.influence_threshold_grid,
                    "NI thresholds [0,1]");
  sweep->add_option("--local_coop_fraction_grid", sw.local_coop_fraction_grid,
                    "LC thresholds as neighbourhood fractions [0,1]");
  sweep->add_option("--local_coop_count_grid", sw.local_coop_count_grid,
                    "LC thresholds as absolute neighbour counts");
  sweep->add_option("--influence_threshold", sw.influence_threshold,
                    "Fixed c_I for ni_and_lc grids");
  sweep->add_option("--workers", sw.workers,
                    "Worker threads (0 = all cores); results do not depend "
                    "on this");
  sweep->add_option("--out", sw.out, "Grid CSV output path");
  sweep->add_option("--manifest", sw.manifest,
                    "Manifest JSON path (default: <out>.manifest.json)");
  sweep->add_flag("--verbose", sw.verbose, "Progress to standard error");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "sfpd: " << e.what() << "\n";
    return kExitValidation;
  }

  try {
    if (app.got_subcommand(gen)) return cmd_gen_net(gen_net, gen_out);
    if (app.got_subcommand(stats)) return cmd_stats(stats_graph);
    if (app.got_subcommand(run)) {
      bool net_given = run->count("--n") > 0;
      if (!run_config.empty()) {
        ConfigMerge merge = run_config_merge(run, run_opts);
        merge.apply(run_config);
        net_given = net_given || merge.applied("n");
      }
      return cmd_run(run_opts, net_given);
    }
    if (app.got_subcommand(sweep)) {
      if (!sweep_config.empty()) sweep_config_merge(sweep, sw).apply(sweep_config);
      if (sw.net.n == 0)
        throw sfpd::ParameterError("sweep: --n is required (flag or config)");
      if (sw.out.empty())
        throw sfpd::ParameterError("sweep: --out is required (flag or config)");
      return cmd_sweep(sw);
    }
  } catch (const sfpd::ParameterError& e) {
    std::cerr << "sfpd: " << e.what() << "\n";
    return kExitValidation;
  } catch (const sfpd::FormatError& e) {
    std::cerr << "sfpd: " << e.what() << "\n";
    return kExitValidation;
  } catch (const sfpd::IoError& e) {
    std::cerr << "sfpd: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "sfpd: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitOk;
}
