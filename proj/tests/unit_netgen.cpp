#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <random>
#include <sstream>
#include <vector>

#include "sfpd/errors.hpp"
#include "sfpd/graph.hpp"
#include "sfpd/graph_io.hpp"
#include "sfpd/graph_stats.hpp"
#include "sfpd/netgen.hpp"
#include "sfpd/rng.hpp"
#include "support/reference_sim.hpp"

using namespace sfpd;

namespace {

GenParams ba_params(std::uint32_t n, std::uint32_t m, std::uint64_t seed) {
  GenParams p;
  p.model = NetModel::Ba;
  p.n = n;
  p.m = m;
  p.seed = seed;
  return p;
}

GenParams dms_params(std::uint32_t n, std::uint64_t seed) {
  GenParams p;
  p.model = NetModel::Dms;
  p.n = n;
  p.seed = seed;
  return p;
}

std::string edgelist_text(const Graph& g) {
  std::ostringstream out;
  save_edgelist(g, out);
  return out.str();
}

double transitivity_oracle(const Graph& g) {
  const std::uint64_t triples = ref::connected_triples(g);
  if (triples == 0) return 0.0;
  return 3.0 * static_cast<double>(ref::triangles_pair_scan(g)) /
         static_cast<double>(triples);
}

}  // namespace

TEST_CASE("model names parse and print") {
  CHECK(to_string(NetModel::Ba) == "ba");
  CHECK(to_string(NetModel::Dms) == "dms");
  CHECK(parse_net_model("ba") == NetModel::Ba);
  CHECK(parse_net_model("dms") == NetModel::Dms);
  CHECK_FALSE(parse_net_model("er").has_value());
}

TEST_CASE("parameter validation names the violated constraint") {
  CHECK_NOTHROW(ba_params(100, 2, 1).validate());
  SUBCASE("m > m0") {
    GenParams p = ba_params(100, 5, 1);  // default m0 = m + 1 keeps m <= m0
    p.m0 = 3;
    CHECK_THROWS_AS(p.validate(), ParameterError);
  }
  SUBCASE("n below the seed clique") {
    CHECK_THROWS_AS(ba_params(2, 2, 1).validate(), ParameterError);
  }
  SUBCASE("m >= 1") {
    CHECK_THROWS_AS(ba_params(100, 0, 1).validate(), ParameterError);
  }
  SUBCASE("DMS pins m = 2") {
    GenParams p = dms_params(100, 1);
    p.m = 3;
    CHECK_THROWS_AS(p.validate(), ParameterError);
  }
  SUBCASE("DMS needs the triangle seed") {
    CHECK_THROWS_AS(dms_params(2, 1).validate(), ParameterError);
  }
}

TEST_CASE("degenerate sizes produce the bare seed") {
  // n = m0: generation is exactly the seed clique.
  const Graph ba3 = generate(ba_params(3, 2, 7));
  CHECK(ba3 == Graph(3, {{0, 1}, {0, 2}, {1, 2}}));
  const Graph dms3 = generate(dms_params(3, 7));
  CHECK(dms3 == Graph(3, {{0, 1}, {0, 2}, {1, 2}}));
}

TEST_CASE("first DMS growth step attaches to both ends of a seed edge") {
  const Graph g = generate(dms_params(4, 123));
  CHECK(g.node_count() == 4);
  CHECK(g.edge_count() == 5);  // K3 + two edges from node 3
  CHECK(g.degree(3) == 2);
  const auto nb = g.neighbors(3);
  // The two attachment points are the endpoints of an existing edge.
  CHECK(g.has_edge(nb[0], nb[1]));
}

TEST_CASE("edge counts are exact") {
  CHECK(generate(ba_params(200, 2, 5)).edge_count() == 3 + 2 * (200 - 3));
  GenParams p = ba_params(200, 3, 5);  // m0 defaults to 4
  CHECK(generate(p).edge_count() == 6 + 3 * (200 - 4));
  p.m0 = 6;
  CHECK(generate(p).edge_count() == 15 + 3 * (200 - 6));
  CHECK(generate(dms_params(200, 5)).edge_count() == 3 + 2 * (200 - 3));
}

TEST_CASE("generation is deterministic in the seed") {
  for (std::uint64_t seed : {1ULL, 42ULL, 0xDEADBEEFULL}) {
    const Graph a = generate(ba_params(300, 2, seed));
    const Graph b = generate(ba_params(300, 2, seed));
    CHECK(a == b);
    CHECK(edgelist_text(a) == edgelist_text(b));
    const Graph c = generate(dms_params(300, seed));
    const Graph d = generate(dms_params(300, seed));
    CHECK(c == d);
    CHECK(edgelist_text(c) == edgelist_text(d));
  }
  CHECK_FALSE(generate(ba_params(300, 2, 1)) == generate(ba_params(300, 2, 2)));
}

TEST_CASE("generated graphs satisfy the structural invariants") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    for (const Graph& g : {generate(ba_params(500, 2, seed)),
                           generate(dms_params(500, seed))}) {
      CHECK(g.node_count() == 500);
      CHECK(is_connected(g));
      std::uint32_t min_deg = g.node_count();
      for (std::uint32_t v = 0; v < g.node_count(); ++v) {
        min_deg = std::min(min_deg, g.degree(v));
        const auto nb = g.neighbors(v);
        CHECK(std::is_sorted(nb.begin(), nb.end()));
        CHECK(std::adjacent_find(nb.begin(), nb.end()) == nb.end());
        for (std::uint32_t w : nb) CHECK(w != v);
      }
      CHECK(min_deg == 2);  // new nodes bring m = 2 edges; K3 seed has 2
    }
  }
}

TEST_CASE("slot sampling is degree proportional (chi-square, alpha = 0.01)") {
  // Degree profile {1, 2, 3, 4} over nodes 0..3 as a slot table.
  const std::vector<std::uint32_t> slots = {0, 1, 1, 2, 2, 2, 3, 3, 3, 3};
  Rng rng(987654321);
  const int trials = 40000;
  std::array<std::uint64_t, 4> hits{};
  for (int i = 0; i < trials; ++i) {
    const auto picked = sample_distinct_preferential(slots, 1, rng);
    REQUIRE(picked.size() == 1);
    ++hits[picked[0]];
  }
  const double expected[] = {0.1 * trials, 0.2 * trials, 0.3 * trials,
                             0.4 * trials};
  double chi2 = 0.0;
  for (int k = 0; k < 4; ++k) {
    const double diff = static_cast<double>(hits[k]) - expected[k];
    chi2 += diff * diff / expected[k];
  }
  CHECK(chi2 < 11.345);  // chi-square critical value, 3 dof, alpha 0.01
}

TEST_CASE("slot sampling returns distinct nodes") {
  const std::vector<std::uint32_t> slots = {0, 1, 1, 2, 2, 2, 3, 3, 3, 3};
  Rng rng(5);
  for (int i = 0; i < 2000; ++i) {
    auto picked = sample_distinct_preferential(slots, 3, rng);
    REQUIRE(picked.size() == 3);
    std::sort(picked.begin(), picked.end());
    CHECK(std::adjacent_find(picked.begin(), picked.end()) == picked.end());
    for (std::uint32_t v : picked) CHECK(v <= 3);
  }
}

TEST_CASE("DMS clustering exceeds BA clustering on matched seeds") {
  for (std::uint64_t seed = 100; seed < 110; ++seed) {
    const Graph ba = generate(ba_params(2000, 2, seed));
    const Graph dms = generate(dms_params(2000, seed));
    const double ba_t = transitivity_oracle(ba);
    const double dms_t = transitivity_oracle(dms);
    CHECK(dms_t > ba_t);
    // DMS builds a triangle per growth step; n - 3 is the floor.
    CHECK(ref::triangles_pair_scan(dms) >= dms.node_count() - 3);
  }
}

TEST_CASE("stats: closed forms on tiny graphs") {
  const GraphStats k3 = compute_stats(Graph(3, {{0, 1}, {0, 2}, {1, 2}}));
  CHECK(k3.mean_degree == doctest::Approx(2.0));
  CHECK(k3.global_clustering == doctest::Approx(1.0));
  CHECK(k3.mean_local_clustering == doctest::Approx(1.0));
  CHECK(k3.degree_histogram.at(2) == 3);

  const GraphStats path3 = compute_stats(Graph(3, {{0, 1}, {1, 2}}));
  CHECK(path3.global_clustering == doctest::Approx(0.0));
  CHECK(path3.mean_local_clustering == doctest::Approx(0.0));
  CHECK(path3.degree_histogram.at(1) == 2);
  CHECK(path3.degree_histogram.at(2) == 1);

  const GraphStats k4 =
      compute_stats(Graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}));
  CHECK(k4.global_clustering == doctest::Approx(1.0));
  CHECK(count_triangles(Graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}})) == 4);
}

TEST_CASE("stats: triangle counts match the reference on random graphs") {
  std::mt19937 rng(31337);
  for (int trial = 0; trial < 200; ++trial) {
    const Graph g = ref::random_connected_graph(rng);
    const ref::Matrix m = ref::adjacency_of(g);
    CHECK(count_triangles(g) == ref::triangles_triple_loop(m));
    CHECK(count_triangles(g) == ref::triangles_pair_scan(g));
  }
}

TEST_CASE("stats: transitivity matches the oracle on generated networks") {
  const Graph ba = generate(ba_params(2000, 2, 9));
  const GraphStats s = compute_stats(ba);
  CHECK(s.global_clustering == doctest::Approx(transitivity_oracle(ba)));
  const Graph dms = generate(dms_params(2000, 9));
  CHECK(compute_stats(dms).global_clustering ==
        doctest::Approx(transitivity_oracle(dms)));
}

TEST_CASE("edge list round trips and canonical form") {
  const Graph k3 = Graph(3, {{1, 2}, {0, 2}, {0, 1}});  // shuffled input
  CHECK(edgelist_text(k3) == "n=3\n0 1\n0 2\n1 2\n");

  const Graph g = generate(ba_params(400, 2, 77));
  std::stringstream io;
  save_edgelist(g, io);
  CHECK(load_edgelist(io) == g);
}

TEST_CASE("edge list loader rejects malformed input with line numbers") {
  auto error_at = [](const std::string& text, std::size_t line,
                     const std::string& needle) {
    std::istringstream in(text);
    try {
      load_edgelist(in);
    } catch (const FormatError& e) {
      CHECK(e.line() == line);
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
      return;
    }
    FAIL("expected a FormatError for: " << text);
  };
  error_at("nodes=3\n0 1\n", 1, "header");
  error_at("n=3\n0 0\n", 2, "self-loop");
  error_at("n=3\n0 1\n0 1\n", 3, "duplicate");
  error_at("n=3\n0 3\n", 2, "out of range");
  error_at("n=3\n0\n", 2, "malformed");
  error_at("n=3\n0 x\n", 2, "malformed");
}
