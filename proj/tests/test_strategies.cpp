#include <gtest/gtest.h>

#include <snakegraph/snakegraph.hpp>

#include "oracles.hpp"

using namespace snakegraph;

namespace {

Graph two_c4() { return Graph::from_edges(7, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 4}, {4, 5}, {5, 6}, {6, 0}}); }
Graph k23_minus_edge() { return Graph::from_edges(5, {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}}); }

SnakePolicy snake(const Graph& g, const std::string& name) {
  std::string why;
  auto p = make_snake_policy(g, name, &why);
  if (!p) throw std::runtime_error(name + ": " + why);
  return *p;
}

PlacerPolicy placer(const Graph& g, const std::string& name) {
  std::string why;
  auto p = make_placer_policy(g, name, &why);
  if (!p) throw std::runtime_error(name + ": " + why);
  return *p;
}

// A snake that takes the smallest legal target every time.
SnakePolicy first_move_policy() {
  SnakePolicy p;
  p.name = "first-move";
  p.inapplicable = [](const Graph&) { return std::string(); };
  p.choose = [](const Graph& g, const SnakeState& s) { return legal_moves(g, s).at(0).target; };
  return p;
}

}  // namespace

// ---------------------------------------------------------------- snake policies

TEST(SnakePolicies, ThetaWinsAgainstEveryPlacer) {
  for (int n = 5; n <= 8; ++n) {
    Graph g = build_theta(n - 3, 2, 2);
    auto r = validate_snake_policy(g, snake(g, "theta"));
    EXPECT_TRUE(r.valid) << "n=" << n << " " << r.failure;
    EXPECT_GT(r.leaves, 0u);
    EXPECT_EQ(r.valid, winnable(g).winnable);
  }
  // The theta lemma does not need bipartiteness.
  Graph g = rectangular_grid(3, 3);
  EXPECT_TRUE(validate_snake_policy(g, snake(g, "theta")).valid);
  EXPECT_FALSE(make_snake_policy(cycle_graph(6), "theta"));
}

TEST(SnakePolicies, CutVertexWinsOnSharedCliques) {
  for (int m = 1; m <= 3; ++m) {
    Graph g = cliques_sharing_vertex(m + 1, m + 1);
    auto r = validate_snake_policy(g, snake(g, "cut-vertex"));
    EXPECT_TRUE(r.valid) << "m=" << m + 1 << " " << r.failure;
  }
  std::string why;
  EXPECT_FALSE(make_snake_policy(cliques_sharing_vertex(2, 3), "cut-vertex", &why));
  EXPECT_NE(why.find("SizeMismatch"), std::string::npos);
}

TEST(SnakePolicies, HamiltonianWins) {
  for (const Graph& g : {cycle_graph(5), cycle_graph(6), rectangular_grid(2, 4)}) {
    EXPECT_TRUE(validate_snake_policy(g, snake(g, "hamiltonian")).valid);
  }
  EXPECT_FALSE(make_snake_policy(build_theta(3, 4, 4), "hamiltonian"));
}

TEST(SnakePolicies, HarnessCatchesLosingPolicies) {
  // Smallest-target play walks into the placer's traps on the bowtie.
  auto r = validate_snake_policy(bowtie(), first_move_policy());
  EXPECT_FALSE(r.valid);
  EXPECT_FALSE(r.failure.empty());
  // A policy cannot win on a graph that is not winnable.
  EXPECT_FALSE(validate_snake_policy(star_graph(3), greedy_snake_policy()).valid);
}

TEST(SnakePolicies, GreedyIsAlwaysLegal) {
  // Greedy need not win, but every reply must pass the engine.
  for (int n = 4; n <= 6; ++n) {
    for (const Graph& g : enumerate_connected_graphs(n)) {
      auto r = validate_snake_policy(g, greedy_snake_policy());
      if (!r.valid) EXPECT_EQ(r.failure.find("illegal"), std::string::npos) << r.failure;
      if (r.valid) EXPECT_TRUE(winnable(g).winnable);
    }
  }
}

// ---------------------------------------------------------------- placer policies

TEST(PlacerPolicies, OddBipartiteBeatsEverySnake) {
  Graph g = k23_minus_edge();
  EXPECT_FALSE(oracle::theta_spanning(g));
  auto r = validate_placer_policy(g, placer(g, "odd-bipartite"));
  EXPECT_TRUE(r.valid) << r.failure;
  EXPECT_FALSE(winnable(g).winnable);
  EXPECT_FALSE(make_placer_policy(rectangular_grid(3, 3), "odd-bipartite"));
  EXPECT_FALSE(make_placer_policy(cycle_graph(5), "odd-bipartite"));
}

TEST(PlacerPolicies, ConnectivityBeatsEverySnake) {
  for (const Graph& g : {cliques_sharing_vertex(2, 3), two_c4(), star_graph(3), path_graph(4)}) {
    auto r = validate_placer_policy(g, placer(g, "connectivity"));
    EXPECT_TRUE(r.valid) << to_json(g).dump() << " " << r.failure;
    EXPECT_FALSE(winnable(g).winnable);
  }
  EXPECT_FALSE(make_placer_policy(bowtie(), "connectivity"));
}

TEST(PlacerPolicies, GirthBeatsEverySnake) {
  Graph g = build_theta(3, 4, 4);
  auto r = validate_placer_policy(g, placer(g, "girth"));
  EXPECT_TRUE(r.valid) << r.failure;
  EXPECT_FALSE(winnable(g).winnable);
  EXPECT_FALSE(make_placer_policy(cycle_graph(7), "girth"));
  EXPECT_FALSE(make_placer_policy(build_theta(4, 2, 2), "girth"));
}

TEST(PlacerPolicies, HarnessCatchesLosingPlacers) {
  EXPECT_FALSE(validate_placer_policy(bowtie(), greedy_placer_policy()).valid);
  EXPECT_FALSE(validate_placer_policy(cycle_graph(5), greedy_placer_policy()).valid);
}

TEST(PlacerPolicies, ConnectivityAcrossAllSmallCutVertexGraphs) {
  // Every non-winnable kappa = 1 graph up to 7 vertices.
  int checked = 0;
  for (int n = 3; n <= 7; ++n) {
    for (const Graph& g : enumerate_connected_graphs(n)) {
      if (cut_vertices(g).empty() || winnable(g).winnable) continue;
      auto p = make_placer_policy(g, "connectivity");
      ASSERT_TRUE(p) << to_json(g).dump();
      auto r = validate_placer_policy(g, *p);
      EXPECT_TRUE(r.valid) << to_json(g).dump() << " " << r.failure;
      ++checked;
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(PlacerPolicies, OddBipartiteAcrossAllSmallCases) {
  EnumerationOptions bip;
  bip.bipartite_only = true;
  for (int n : {5, 7}) {
    for (const Graph& g : enumerate_connected_graphs(n, bip)) {
      auto p = make_placer_policy(g, "odd-bipartite");
      if (!p) continue;
      auto r = validate_placer_policy(g, *p);
      EXPECT_TRUE(r.valid) << to_json(g).dump() << " " << r.failure;
    }
  }
}

TEST(Policies, FactoriesAndNames) {
  EXPECT_FALSE(make_snake_policy(cycle_graph(5), "nope"));
  EXPECT_FALSE(make_placer_policy(cycle_graph(5), "nope"));
  EXPECT_EQ(applicable_snake_policy(cycle_graph(5))->name, "hamiltonian");
  EXPECT_EQ(applicable_placer_policy(build_theta(3, 4, 4))->name, "girth");
  EXPECT_FALSE(applicable_placer_policy(cycle_graph(5)));
  EXPECT_THROW(validate_snake_policy(cycle_graph(6), theta_snake_policy(*find_theta_n322(build_theta(3, 2, 2)))),
               PolicyError);
  ValidationLimits tiny;
  tiny.max_positions = 3;
  Graph g = build_theta(6, 2, 2);
  EXPECT_THROW(validate_snake_policy(g, snake(g, "theta"), tiny), CeilingExceeded);
}
