// End-to-end CLI tests. The sfpd binary path arrives in $SFPD_BIN (set by
// the ctest registration); every invocation runs as a subprocess with
// captured stdout/stderr and checked exit codes.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include <json.hpp>

#include "sfpd/report.hpp"

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

class CliHarness {
 public:
  CliHarness() {
    const char* bin = std::getenv("SFPD_BIN");
    REQUIRE_MESSAGE(bin != nullptr, "SFPD_BIN must point at the sfpd binary");
    bin_ = bin;
    dir_ = fs::temp_directory_path() /
           ("sfpd_cli_test_" + std::to_string(std::random_device{}()));
    fs::create_directories(dir_);
  }
  ~CliHarness() {
    std::error_code ec;
    fs::remove_all(dir_, ec);
  }

  const fs::path& dir() const { return dir_; }
  fs::path file(const std::string& name) const { return dir_ / name; }

  // env_prefix is prepended verbatim, e.g. "SFPD_OUT_DIR=/x ".
  CliResult run(const std::string& args,
                const std::string& env_prefix = "") const {
    const fs::path out = dir_ / ("stdout_" + std::to_string(counter_));
    const fs::path err = dir_ / ("stderr_" + std::to_string(counter_));
    ++counter_;
    const std::string cmd = env_prefix + "'" + bin_ + "' " + args + " > '" +
                            out.string() + "' 2> '" + err.string() + "'";
    const int raw = std::system(cmd.c_str());
    CliResult result;
    result.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    result.out = slurp(out);
    result.err = slurp(err);
    return result;
  }

 private:
  std::string bin_;
  fs::path dir_;
  mutable int counter_ = 0;
};

}  // namespace

TEST_CASE("version and argument parsing") {
  CliHarness cli;

  CliResult r = cli.run("--version");
  CHECK(r.code == 0);
  CHECK(r.out.find("0.1.0") != std::string::npos);

  r = cli.run("");
  CHECK(r.code == 2);  // a subcommand is required
  CHECK(r.err.find("sfpd:") != std::string::npos);

  r = cli.run("gen-net --model martian --n 50");
  CHECK(r.code == 2);
}

TEST_CASE("gen-net writes edge lists and stats") {
  CliHarness cli;
  const fs::path graph = cli.file("g.txt");

  SUBCASE("--out: edge list to file, stats JSON on stdout") {
    const CliResult r = cli.run("gen-net --model ba --n 50 --m 2 --seed 1 "
                                "--out '" + graph.string() + "'");
    REQUIRE(r.code == 0);
    REQUIRE(fs::exists(graph));
    const nlohmann::json stats = nlohmann::json::parse(r.out);
    CHECK(stats["n"] == 50);
    // BA from a 3-clique: 3 seed edges plus m = 2 per added node.
    CHECK(stats["edges"] == 3 + (50 - 3) * 2);
    CHECK(r.err.empty());
    CHECK(slurp(graph).rfind("n=50\n", 0) == 0);
  }

  SUBCASE("no --out: edge list on stdout, stats on stderr") {
    const CliResult r = cli.run("gen-net --model dms --n 40 --seed 9");
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("n=40\n", 0) == 0);
    const nlohmann::json stats = nlohmann::json::parse(r.err);
    CHECK(stats["n"] == 40);
  }

  SUBCASE("same seed, same bytes; different seed, different graph") {
    const CliResult a = cli.run("gen-net --model ba --n 60 --seed 4");
    const CliResult b = cli.run("gen-net --model ba --n 60 --seed 4");
    const CliResult c = cli.run("gen-net --model ba --n 60 --seed 5");
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out != c.out);
  }

  SUBCASE("invalid parameters exit 2") {
    const CliResult r = cli.run("gen-net --model ba --n 2");
    CHECK(r.code == 2);
    CHECK(r.err.find("sfpd:") != std::string::npos);
  }

  SUBCASE("unwritable output path exits 1") {
    const CliResult r = cli.run("gen-net --model ba --n 10 --out '" +
                                (cli.dir() / "missing" / "g.txt").string() +
                                "'");
    CHECK(r.code == 1);
  }
}

TEST_CASE("stats") {
  CliHarness cli;
  const fs::path graph = cli.file("g.txt");
  REQUIRE(cli.run("gen-net --model dms --n 30 --seed 2 --out '" +
                  graph.string() + "'")
              .code == 0);

  SUBCASE("reports the loaded graph") {
    const CliResult r = cli.run("stats --graph '" + graph.string() + "'");
    REQUIRE(r.code == 0);
    const nlohmann::json stats = nlohmann::json::parse(r.out);
    CHECK(stats["n"] == 30);
    CHECK(stats["mean_degree"].get<double>() > 3.0);
  }

  SUBCASE("missing file exits 1") {
    const CliResult r =
        cli.run("stats --graph '" + cli.file("absent.txt").string() + "'");
    CHECK(r.code == 1);
  }

  SUBCASE("malformed file exits 2") {
    std::ofstream(cli.file("bad.txt")) << "garbage\n";
    const CliResult r =
        cli.run("stats --graph '" + cli.file("bad.txt").string() + "'");
    CHECK(r.code == 2);
    CHECK(r.err.find("header") != std::string::npos);
  }
}

TEST_CASE("run") {
  CliHarness cli;
  const fs::path graph = cli.file("g.txt");
  REQUIRE(cli.run("gen-net --model ba --n 40 --seed 3 --out '" +
                  graph.string() + "'")
              .code == 0);

  SUBCASE("single realisation from a graph file") {
    const CliResult r = cli.run(
        "run --graph '" + graph.string() +
        "' --mechanism pop --theta 1 --pop_threshold_percent 50 "
        "--generations 10 --tail_window 4 --strategy_seed 3");
    REQUIRE(r.code == 0);
    const nlohmann::json summary = nlohmann::json::parse(r.out);
    CHECK(summary["generations"] == 10);
    CHECK(summary.contains("tail_coop"));
    CHECK(summary.contains("total_cost"));
    CHECK(summary.contains("absorbed_at"));
  }

  SUBCASE("generated graph source and trajectory output") {
    const fs::path traj = cli.file("traj.csv");
    const CliResult r = cli.run(
        "run --model dms --n 30 --seed 5 --generations 8 --tail_window 3 "
        "--strategy_seed 1 --trajectory_csv '" + traj.string() + "'");
    REQUIRE(r.code == 0);
    const std::string text = slurp(traj);
    CHECK(text.rfind("generation,coop_fraction,generation_cost,cumulative_"
                     "cost\n", 0) == 0);
    // header + one row per trajectory entry (generations + 1)
    CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 8 + 1);
  }

  SUBCASE("graph sources are mutually exclusive and required") {
    CliResult r = cli.run("run --graph '" + graph.string() +
                          "' --model ba --n 40");
    CHECK(r.code == 2);
    r = cli.run("run --mechanism none");
    CHECK(r.code == 2);
  }

  SUBCASE("incomplete mechanism parameters exit 2") {
    CliResult r = cli.run("run --graph '" + graph.string() +
                          "' --mechanism pop --theta 1");
    CHECK(r.code == 2);
    r = cli.run("run --graph '" + graph.string() +
                "' --mechanism lc --theta 1 --local_coop_fraction 0.5 "
                "--local_coop_count 2");
    CHECK(r.code == 2);
  }

  SUBCASE("identical invocations give identical output") {
    const std::string args = "run --graph '" + graph.string() +
                             "' --generations 12 --tail_window 5 "
                             "--strategy_seed 21";
    const CliResult a = cli.run(args);
    const CliResult b = cli.run(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
  }

  SUBCASE("run accepts the same keys from a config file") {
    const fs::path cfg = cli.file("run.ini");
    std::ofstream(cfg) << "# comment lines are skipped\n"
                          "graph=" << graph.string() << "\n"
                          "mechanism=pop\n"
                          "theta=1\n"
                          "pop_threshold_percent=50\n"
                          "generations=10\n"
                          "tail_window=4\n"
                          "strategy_seed=3\n";
    const CliResult from_config = cli.run("run --config '" + cfg.string() +
                                          "'");
    const CliResult from_flags = cli.run(
        "run --graph '" + graph.string() +
        "' --mechanism pop --theta 1 --pop_threshold_percent 50 "
        "--generations 10 --tail_window 4 --strategy_seed 3");
    REQUIRE(from_config.code == 0);
    CHECK(from_config.out == from_flags.out);

    // flags override config: a different seed changes the run
    const CliResult overridden = cli.run("run --config '" + cfg.string() +
                                         "' --strategy_seed 4");
    REQUIRE(overridden.code == 0);
    CHECK(overridden.out != from_flags.out);
  }
}

TEST_CASE("sweep") {
  CliHarness cli;
  const std::string common =
      "sweep --model ba --n 30 --graph_count 2 --realisations_per_graph 2 "
      "--mechanism pop --theta_grid 0 1 --pop_threshold_percent_grid 50 "
      "--generations 8 --tail_window 3 --master_seed 7 ";
  const fs::path csv = cli.file("grid.csv");

  SUBCASE("writes the grid CSV and a manifest") {
    const CliResult r = cli.run(common + "--out '" + csv.string() + "'");
    REQUIRE(r.code == 0);
    const auto rows = sfpd::parse_grid_csv(slurp(csv));
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].mechanism == "pop");
    CHECK(rows[0].theta == 0.0);
    CHECK(rows[1].theta == 1.0);
    CHECK(rows[0].samples == 4);

    const fs::path manifest(csv.string() + ".manifest.json");
    REQUIRE(fs::exists(manifest));
    const nlohmann::json m = nlohmann::json::parse(slurp(manifest));
    CHECK(m["master_seed"] == 7);
    CHECK(m["mechanism"] == "pop");
    CHECK(m["cells"] == 2);
  }

  SUBCASE("worker count does not change the output bytes") {
    const fs::path csv1 = cli.file("w1.csv");
    const fs::path csv3 = cli.file("w3.csv");
    REQUIRE(cli.run(common + "--workers 1 --out '" + csv1.string() + "'")
                .code == 0);
    REQUIRE(cli.run(common + "--workers 3 --out '" + csv3.string() + "'")
                .code == 0);
    CHECK(slurp(csv1) == slurp(csv3));
  }

  SUBCASE("mechanism none needs no grids") {
    const fs::path none_csv = cli.file("none.csv");
    const CliResult r = cli.run(
        "sweep --model ba --n 30 --graph_count 2 --realisations_per_graph 2 "
        "--mechanism none --generations 8 --tail_window 3 --master_seed 7 "
        "--out '" + none_csv.string() + "'");
    REQUIRE(r.code == 0);
    const auto rows = sfpd::parse_grid_csv(slurp(none_csv));
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].mechanism == "none");
    CHECK(rows[0].mean_cost == 0.0);
  }

  SUBCASE("mismatched threshold grids exit 2") {
    CliResult r = cli.run(
        "sweep --model ba --n 30 --mechanism pop --theta_grid 1 "
        "--influence_threshold_grid 0.5 --out '" + csv.string() + "'");
    CHECK(r.code == 2);
    CHECK(r.err.find("not used by mechanism") != std::string::npos);

    r = cli.run(
        "sweep --model ba --n 30 --mechanism ni_and_lc --theta_grid 1 "
        "--local_coop_fraction_grid 0.5 --out '" + csv.string() + "'");
    CHECK(r.code == 2);  // missing the fixed --influence_threshold
  }
}

TEST_CASE("sweep config files") {
  CliHarness cli;
  const fs::path cfg = cli.file("sweep.ini");
  const fs::path csv = cli.file("from_flags.csv");
  const fs::path cfg_csv = cli.file("from_config.csv");

  std::ofstream(cfg) << "model=ba\n"
                        "n=30\n"
                        "graph_count=2\n"
                        "realisations_per_graph=2\n"
                        "mechanism=pop\n"
                        "theta_grid=0 1\n"
                        "pop_threshold_percent_grid=50\n"
                        "generations=8\n"
                        "tail_window=3\n"
                        "master_seed=7\n"
                        "out=" << cfg_csv.string() << "\n";

  const std::string flags =
      "sweep --model ba --n 30 --graph_count 2 --realisations_per_graph 2 "
      "--mechanism pop --theta_grid 0 1 --pop_threshold_percent_grid 50 "
      "--generations 8 --tail_window 3 --master_seed 7 --out '" +
      csv.string() + "'";
  REQUIRE(cli.run(flags).code == 0);

  SUBCASE("a config file reproduces the flag run byte for byte") {
    const CliResult r = cli.run("sweep --config '" + cfg.string() + "'");
    REQUIRE(r.code == 0);
    CHECK(slurp(cfg_csv) == slurp(csv));
  }

  SUBCASE("flags override config values") {
    const fs::path other = cli.file("other_seed.csv");
    const CliResult r = cli.run("sweep --config '" + cfg.string() +
                                "' --master_seed 8 --out '" + other.string() +
                                "'");
    REQUIRE(r.code == 0);
    CHECK(slurp(other) != slurp(csv));
  }

  SUBCASE("unknown config keys are rejected") {
    const fs::path bad = cli.file("bad.ini");
    std::ofstream(bad) << "bogus_key=1\nn=30\nout=x.csv\n";
    const CliResult r = cli.run("sweep --config '" + bad.string() + "'");
    CHECK(r.code == 2);
  }
}

TEST_CASE("SFPD_OUT_DIR redirects relative output paths") {
  CliHarness cli;
  const fs::path outdir = cli.file("outputs");
  fs::create_directories(outdir);
  const std::string env = "SFPD_OUT_DIR='" + outdir.string() + "' ";

  SUBCASE("relative paths land in the directory") {
    const CliResult r =
        cli.run("gen-net --model ba --n 20 --seed 1 --out rel.txt", env);
    REQUIRE(r.code == 0);
    CHECK(fs::exists(outdir / "rel.txt"));
  }

  SUBCASE("absolute paths are untouched") {
    const fs::path abs = cli.file("abs.txt");
    const CliResult r = cli.run(
        "gen-net --model ba --n 20 --seed 1 --out '" + abs.string() + "'",
        env);
    REQUIRE(r.code == 0);
    CHECK(fs::exists(abs));
    CHECK_FALSE(fs::exists(outdir / "abs.txt"));
  }
}
