#include <gtest/gtest.h>

#include <random>

#include <snakegraph/snakegraph.hpp>

#include "oracles.hpp"

using namespace snakegraph;

// ---------------------------------------------------------------- solver

TEST(Solver, ReachableSameLength) {
  Graph k4 = complete_graph(4);
  auto one = reachable_same_length(k4, SnakeState{{0}, 3});
  EXPECT_EQ(one, (std::set<std::vector<Vertex>>{{0}, {1}, {2}}));

  // Length 4 on C5 with the apple on the fifth vertex: the only move eats.
  Graph c5 = cycle_graph(5);
  auto stuck = reachable_same_length(c5, SnakeState{{3, 2, 1, 0}, 4});
  EXPECT_EQ(stuck.size(), 1u);

  Graph p3 = path_graph(3);
  auto none = reachable_same_length(p3, SnakeState{{0, 1}, 2});
  EXPECT_EQ(none.size(), 1u);
}

TEST(Solver, StateExamples) {
  EXPECT_TRUE(solve_state(cycle_graph(4), SnakeState{{0}, 2}).snake_wins);
  EXPECT_FALSE(solve_state(path_graph(3), SnakeState{{1}, 0}).snake_wins);
  Graph k23 = build_theta(2, 2, 2);
  for (Vertex a0 = 0; a0 < 5; ++a0) {
    for (Vertex a1 = 0; a1 < 5; ++a1) {
      if (a0 != a1) EXPECT_TRUE(solve_state(k23, SnakeState{{a0}, a1}).snake_wins);
    }
  }
  EXPECT_THROW(solve_state(cycle_graph(4), SnakeState{{0, 2}, 1}), std::invalid_argument);
}

TEST(Solver, WinnableExamples) {
  EXPECT_TRUE(winnable(cycle_graph(6)).winnable);
  auto star = winnable(star_graph(3));
  EXPECT_FALSE(star.winnable);
  ASSERT_TRUE(star.witness);
  EXPECT_FALSE(solve_state(star_graph(3), SnakeState{{star.witness->first}, star.witness->second}).snake_wins);
  EXPECT_TRUE(winnable(bowtie()).winnable);
  EXPECT_FALSE(winnable(complete_bipartite(2, 4)).winnable);
}

TEST(Solver, MatchesNaiveGameSearch) {
  // The naive search tracks repetition explicitly and never uses closures.
  for (int n = 3; n <= 5; ++n) {
    for (const Graph& g : enumerate_connected_graphs(n)) {
      EXPECT_EQ(winnable(g).winnable, oracle::NaiveGame(g).winnable()) << to_json(g).dump();
    }
  }
  for (const Graph& g : {cycle_graph(6), build_theta(3, 2, 2), cliques_sharing_vertex(2, 3)}) {
    EXPECT_EQ(winnable(g).winnable, oracle::NaiveGame(g).winnable()) << to_json(g).dump();
  }
}

TEST(Solver, Determinism) {
  Graph g = build_theta(4, 2, 2);
  auto a = winnable(g);
  auto b = winnable(g);
  EXPECT_EQ(a.winnable, b.winnable);
  EXPECT_EQ(a.node_count, b.node_count);
}

TEST(Solver, CeilingIsAnError) {
  SolverLimits tiny;
  tiny.max_memo_entries = 5;
  EXPECT_THROW(winnable(build_theta(4, 2, 2), tiny), CeilingExceeded);
  EXPECT_THROW(Solver(cycle_graph(25)), CeilingExceeded);
}

TEST(Solver, OptimalMoveExamples) {
  Graph p3 = path_graph(3);  // a=0, b=1, c=2
  EXPECT_EQ(optimal_move(p3, SnakeState{{1}, std::nullopt}, Role::Placer), std::optional<Vertex>(0));
  Graph c4 = cycle_graph(4);
  EXPECT_EQ(optimal_move(c4, SnakeState{{0, 1, 2}, 3}, Role::Snake), std::optional<Vertex>(3));
  // Bowtie with the snake on the cut vertex: every placement keeps the win,
  // so the smallest free vertex is chosen.
  Graph bt = bowtie();
  Solver s(bt);
  for (Vertex a = 1; a < 5; ++a) EXPECT_TRUE(s.snake_wins(SnakeState{{0}, a}));
  EXPECT_EQ(s.optimal_move(SnakeState{{0}, std::nullopt}, Role::Placer), std::optional<Vertex>(1));
}

namespace {

// Plays optimal_move for the snake against a random placer until the game ends.
Outcome play_out(const Graph& g, Vertex a0, std::mt19937& rng) {
  Solver solver(g);
  Game game(g);
  game.spawn(a0);
  while (game.turn() != Game::Turn::Over) {
    if (game.turn() == Game::Turn::Placer) {
      auto free = unoccupied(g, game.state());
      std::uniform_int_distribution<std::size_t> pick(0, free.size() - 1);
      game.place(free[pick(rng)]);
    } else {
      EXPECT_TRUE(solver.snake_wins(game.state()));
      game.move(*solver.optimal_move(game.state(), Role::Snake));
    }
  }
  return game.status().outcome;
}

}  // namespace

TEST(Solver, OptimalSnakeWinsEveryPlayoutOnWinnableGraphs) {
  std::mt19937 rng(12345);
  for (const Graph& g : {bowtie(), build_theta(4, 2, 2), rectangular_grid(3, 3), cliques_sharing_vertex(3, 3)}) {
    ASSERT_TRUE(winnable(g).winnable);
    for (int round = 0; round < 40; ++round) {
      EXPECT_EQ(play_out(g, static_cast<Vertex>(round % g.order()), rng), Outcome::SnakeWins);
    }
  }
}

TEST(Solver, OptimalPlacerBeatsEveryLegalSnake) {
  // Against the placer's optimal play, no snake line fills the graph.
  for (const Graph& g : {star_graph(3), complete_bipartite(2, 4), build_theta(3, 4, 4)}) {
    Solver solver(g);
    auto w = solver.winnable();
    ASSERT_FALSE(w.winnable);
    std::mt19937 rng(7);
    for (int round = 0; round < 60; ++round) {
      Game game(g);
      game.spawn(w.witness->first);
      game.place(w.witness->second);
      while (game.turn() != Game::Turn::Over) {
        if (game.turn() == Game::Turn::Placer) {
          game.place(*solver.optimal_move(game.state(), Role::Placer));
        } else {
          auto moves = legal_moves(g, game.state());
          std::uniform_int_distribution<std::size_t> pick(0, moves.size() - 1);
          game.move(moves[pick(rng)].target);
        }
      }
      EXPECT_EQ(game.status().outcome, Outcome::SnakeLoses);
    }
  }
}

TEST(Solver, NecessaryConditionsHoldOnAllSmallGraphs) {
  for (int n = 3; n <= 6; ++n) {
    for (const Graph& g : enumerate_connected_graphs(n)) {
      const bool w = winnable(g).winnable;
      if (oracle::ham_cycle(g)) EXPECT_TRUE(w);
      if (!oracle::ham_path(g)) EXPECT_FALSE(w);
      if (g.min_degree() == 1) EXPECT_FALSE(w);
      if (auto bp = bipartition(g)) {
        const int diff = static_cast<int>(bp->x.size()) - static_cast<int>(bp->y.size());
        if (diff > 1 || diff < -1) EXPECT_FALSE(w);
      }
    }
  }
}

TEST(Solver, GirthSixStandIn) {
  // A non-Hamiltonian snake-winnable graph of girth 6.
  Graph g = load_graph(std::string(SNAKEGRAPH_DATA_DIR) + "/graphs/theta_3_3_3.json");
  EXPECT_TRUE(are_isomorphic(g, build_theta(3, 3, 3)));
  EXPECT_EQ(oracle::girth(g), 6);
  EXPECT_FALSE(oracle::ham_cycle(g));
  EXPECT_TRUE(winnable(g).winnable);
}

// ---------------------------------------------------------------- characterize

TEST(Classify, Examples) {
  auto bt = classify(bowtie());
  EXPECT_EQ(bt.verdict, Verdict::Winnable);
  EXPECT_EQ(bt.reason, Reason::CutVertexComplete);

  auto k24 = classify(complete_bipartite(2, 4));
  EXPECT_EQ(k24.verdict, Verdict::NotWinnable);
  EXPECT_EQ(k24.reason, Reason::BipartiteImbalance);

  auto t344 = classify(build_theta(3, 4, 4));
  EXPECT_EQ(t344.verdict, Verdict::NotWinnable);
  EXPECT_EQ(t344.reason, Reason::GirthGT6NonHam);

  auto grid = classify(rectangular_grid(3, 3));
  EXPECT_EQ(grid.verdict, Verdict::Winnable);
  EXPECT_EQ(grid.reason, Reason::ThetaOddBipartite);
  EXPECT_EQ(certificate_problem(rectangular_grid(3, 3), grid), "");

  auto unknown = classify(build_theta(3, 3, 3));
  EXPECT_EQ(unknown.verdict, Verdict::Unknown);
  EXPECT_FALSE(unknown.cycle || unknown.theta || unknown.cut || unknown.parts || unknown.vertex || unknown.girth);
}

TEST(Classify, OddBipartite) {
  EXPECT_EQ(decide_odd_bipartite(build_theta(2, 2, 2)).verdict, Verdict::Winnable);
  EXPECT_THROW(decide_odd_bipartite(cycle_graph(5)), GraphError);
  EXPECT_THROW(decide_odd_bipartite(cycle_graph(6)), GraphError);
  // 3 x 5 grid, n = 15: decided by the theta search alone.
  Graph g = rectangular_grid(3, 5);
  auto c = decide_odd_bipartite(g);
  EXPECT_EQ(c.verdict == Verdict::Winnable, oracle::theta_spanning(g));
  EXPECT_EQ(c.verdict, Verdict::Winnable);
  EXPECT_EQ(certificate_problem(g, c), "");
}

TEST(Classify, CutVertex) {
  auto kk = decide_cut_vertex(cliques_sharing_vertex(3, 3));
  EXPECT_EQ(kk.verdict, Verdict::Winnable);
  auto mismatch = decide_cut_vertex(cliques_sharing_vertex(2, 3));
  EXPECT_EQ(mismatch.verdict, Verdict::NotWinnable);
  ASSERT_TRUE(mismatch.cut);
  EXPECT_EQ(mismatch.cut->obstruction, CutObstruction::SizeMismatch);
  Graph c4c4 = Graph::from_edges(7, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 4}, {4, 5}, {5, 6}, {6, 0}});
  auto inc = decide_cut_vertex(c4c4);
  EXPECT_EQ(inc.verdict, Verdict::NotWinnable);
  EXPECT_EQ(inc.cut->obstruction, CutObstruction::Incomplete);
  EXPECT_EQ(decide_cut_vertex(star_graph(3)).reason, Reason::ThreePlusComponents);
  EXPECT_THROW(decide_cut_vertex(cycle_graph(5)), GraphError);
}

TEST(Classify, SoundAgainstSolverWithCheckableCertificates) {
  for (int n = 3; n <= 6; ++n) {
    for (const Graph& g : enumerate_connected_graphs(n)) {
      auto c = classify(g);
      EXPECT_EQ(certificate_problem(g, c), "") << to_json(g).dump();
      if (c.verdict == Verdict::Unknown) continue;
      EXPECT_EQ(c.verdict == Verdict::Winnable, winnable(g).winnable)
          << to_json(g).dump() << " " << to_string(c.reason);
      if (c.reason == Reason::GirthGT6NonHam) {
        EXPECT_GE(oracle::girth(g), 7);
        EXPECT_FALSE(oracle::ham_cycle(g));
      }
    }
  }
}

TEST(Classify, CertificateCheckerRejectsForgeries) {
  auto c = classify(cycle_graph(5));
  ASSERT_EQ(c.reason, Reason::HamiltonianCycle);
  auto forged = c;
  std::swap((*forged.cycle)[0], (*forged.cycle)[2]);
  EXPECT_NE(certificate_problem(cycle_graph(5), forged), "");
  auto k24 = classify(complete_bipartite(2, 4));
  auto swapped = k24;
  std::swap(swapped.parts->x[0], swapped.parts->y[0]);
  EXPECT_NE(certificate_problem(complete_bipartite(2, 4), swapped), "");
}

TEST(Classify, JsonShape) {
  auto doc = to_json(classify(complete_bipartite(2, 4)));
  EXPECT_EQ(doc["verdict"], "NotWinnable");
  EXPECT_EQ(doc["reason"], "BipartiteImbalance");
  EXPECT_TRUE(to_json(classify(build_theta(3, 3, 3)))["certificate"].is_null());
}
