#include <gtest/gtest.h>

#include <snakegraph/snakegraph.hpp>

#include "oracles.hpp"

using namespace snakegraph;

namespace {

std::vector<Graph> small_graphs(int lo, int hi) {
  std::vector<Graph> out;
  for (int n = lo; n <= hi; ++n) {
    auto level = enumerate_connected_graphs(n);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- graph core

TEST(Graph, RejectsSelfLoopsParallelEdgesAndRange) {
  EXPECT_THROW(Graph::from_edges(3, {{0, 0}}), GraphError);
  EXPECT_THROW(Graph::from_edges(3, {{0, 1}, {1, 0}}), GraphError);
  EXPECT_THROW(Graph::from_edges(3, {{0, 3}}), GraphError);
  EXPECT_THROW(Graph::from_coords({{0, 0}, {0, 0}}), GraphError);
}

TEST(Graph, ThetaConstruction) {
  Graph t222 = build_theta(2, 2, 2);
  EXPECT_EQ(t222.order(), 5);
  EXPECT_TRUE(are_isomorphic(t222, complete_bipartite(2, 3)));

  Graph t422 = build_theta(4, 2, 2);
  EXPECT_EQ(t422.order(), 7);
  EXPECT_EQ(circumference(t422), 6);
  EXPECT_TRUE(has_cycle_of_length_through(t422, 6, {}));

  Graph t344 = build_theta(3, 4, 4);
  EXPECT_EQ(t344.order(), 10);
  EXPECT_EQ(oracle::girth(t344), 7);
  EXPECT_EQ(girth(t344), 7);
  EXPECT_FALSE(oracle::ham_cycle(t344));
  EXPECT_FALSE(hamiltonian_cycle(t344));

  EXPECT_THROW(build_theta(0, 0, 2), GraphError);
  EXPECT_THROW(build_theta(1, 1, 2), GraphError);
  EXPECT_THROW(build_theta(-1, 2, 2), GraphError);
}

TEST(Graph, GridConstruction) {
  Graph sq = rectangular_grid(2, 2);
  EXPECT_TRUE(are_isomorphic(sq, cycle_graph(4)));
  Graph block = rectangular_grid(3, 3);
  EXPECT_EQ(block.order(), 9);
  EXPECT_EQ(block.size(), 12);
  Graph ell = grid_from_coords({{0, 0}, {1, 0}, {2, 0}, {0, 1}});
  EXPECT_EQ(ell.degree(*ell.vertex_at({2, 0})), 1);
  EXPECT_FALSE(grid_from_coords({{0, 0}, {2, 0}}).is_connected());
}

TEST(Graph, GirthMatchesBfsOracle) {
  EXPECT_EQ(girth(cycle_graph(5)), 5);
  EXPECT_FALSE(girth(path_graph(4)).has_value());
  EXPECT_EQ(girth(rectangular_grid(2, 3)), 4);
  for (const Graph& g : small_graphs(3, 7)) {
    auto gi = girth(g);
    EXPECT_EQ(gi.value_or(0), oracle::girth(g)) << to_json(g).dump();
  }
}

TEST(Graph, CircumferenceExamplesAndBounds) {
  EXPECT_EQ(circumference(cycle_graph(6)), 6);
  EXPECT_EQ(circumference(bowtie()), 3);
  EXPECT_EQ(circumference(path_graph(5)), 0);
  for (const Graph& g : small_graphs(3, 6)) {
    if (auto gi = girth(g)) EXPECT_LE(*gi, circumference(g));
    EXPECT_EQ(circumference(g) == g.order(), oracle::ham_cycle(g));
  }
  SearchLimits tight;
  tight.circumference_max_vertices = 5;
  EXPECT_THROW(circumference(cycle_graph(6), tight), CeilingExceeded);
}

TEST(Graph, CutVerticesMatchRemovalOracle) {
  EXPECT_EQ(cut_vertices(bowtie()), std::vector<Vertex>{0});
  auto parts = components_after_removal(bowtie(), 0);
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_EQ(parts[0].size(), 2u);
  EXPECT_EQ(parts[1].size(), 2u);
  EXPECT_TRUE(cut_vertices(cycle_graph(5)).empty());
  EXPECT_EQ(components_after_removal(star_graph(3), 0).size(), 3u);
  for (const Graph& g : small_graphs(3, 7)) {
    EXPECT_EQ(cut_vertices(g), oracle::cut_vertices(g));
  }
}

TEST(Graph, Bipartition) {
  auto c6 = bipartition(cycle_graph(6));
  ASSERT_TRUE(c6);
  EXPECT_EQ(c6->x.size(), 3u);
  auto k23 = bipartition(complete_bipartite(2, 3));
  ASSERT_TRUE(k23);
  EXPECT_EQ(std::min(k23->x.size(), k23->y.size()), 2u);
  EXPECT_FALSE(bipartition(bowtie()));
  for (const Graph& g : small_graphs(3, 6)) {
    EXPECT_EQ(bipartition(g).has_value(), oracle::bipartite(g));
  }
  for (const auto& cells : enumerate_polyominoes(6)) EXPECT_TRUE(bipartition(Graph::from_coords(cells)));
}

TEST(Graph, HamiltonicityMatchesHeldKarp) {
  auto c = hamiltonian_cycle(rectangular_grid(2, 3));
  ASSERT_TRUE(c);
  EXPECT_EQ(c->size(), 6u);
  EXPECT_FALSE(hamiltonian_cycle(rectangular_grid(3, 3)));
  for (const Graph& g : small_graphs(3, 7)) {
    const bool cyc = hamiltonian_cycle(g).has_value();
    EXPECT_EQ(cyc, oracle::ham_cycle(g));
    EXPECT_EQ(has_hamiltonian_path(g), oracle::ham_path(g));
    if (cyc) EXPECT_TRUE(has_hamiltonian_path(g));
    if (auto p = find_hamiltonian_path(g)) {
      std::set<Vertex> seen(p->begin(), p->end());
      EXPECT_EQ(seen.size(), static_cast<std::size_t>(g.order()));
      for (std::size_t i = 1; i < p->size(); ++i) EXPECT_TRUE(g.adjacent((*p)[i - 1], (*p)[i]));
    }
  }
  Graph g = rectangular_grid(2, 3);
  EXPECT_EQ(hamiltonian_path_between(g, 0, 2).has_value(), oracle::ham_path_between(g, 0, 2));
  EXPECT_EQ(hamiltonian_path_between(g, 0, 1).has_value(), oracle::ham_path_between(g, 0, 1));
  EXPECT_THROW(hamiltonian_cycle(cycle_graph(25)), CeilingExceeded);
}

TEST(Graph, ThetaSearchMatchesDefinitionOracle) {
  auto t = find_theta_n322(build_theta(2, 2, 2));
  ASSERT_TRUE(t);
  EXPECT_EQ(theta_certificate_problem(build_theta(2, 2, 2), *t), "");
  auto grid = find_theta_n322(rectangular_grid(3, 3));
  ASSERT_TRUE(grid);
  EXPECT_EQ(theta_certificate_problem(rectangular_grid(3, 3), *grid), "");
  EXPECT_TRUE(oracle::theta_spanning(rectangular_grid(3, 3)));
  EXPECT_FALSE(find_theta_n322(cycle_graph(7)));
  EXPECT_THROW(find_theta_n322(cycle_graph(4)), GraphError);

  for (const Graph& g : small_graphs(5, 7)) {
    auto cert = find_theta_n322(g);
    EXPECT_EQ(cert.has_value(), oracle::theta_spanning(g)) << to_json(g).dump();
    if (cert) EXPECT_EQ(theta_certificate_problem(g, *cert), "");
    if (girth(g).value_or(0) > 4) EXPECT_FALSE(cert);
  }
}

TEST(Graph, ThetaCertificateCheckerRejectsCorruption) {
  Graph g = build_theta(4, 2, 2);
  auto cert = *find_theta_n322(g);
  auto bad = cert;
  bad.y = bad.x;
  EXPECT_NE(theta_certificate_problem(g, bad), "");
  bad = cert;
  std::swap(bad.long_path[1], bad.long_path[2]);
  EXPECT_NE(theta_certificate_problem(g, bad), "");
  bad = cert;
  bad.long_path.pop_back();
  EXPECT_NE(theta_certificate_problem(g, bad), "");
}

TEST(Graph, CycleOfLengthThroughRequiredVertices) {
  Graph g = build_theta(4, 2, 2);
  EXPECT_TRUE(has_cycle_of_length_through(g, 4, {0, 1}));
  EXPECT_FALSE(has_cycle_of_length_through(g, 7, {}));
  EXPECT_FALSE(has_cycle_of_length_through(path_graph(4), 3, {}));
}

// ---------------------------------------------------------------- enumeration

TEST(Enumerate, CountsMatchBruteForceIsomorphismClasses) {
  auto n3 = enumerate_connected_graphs(3);
  ASSERT_EQ(n3.size(), 2u);
  for (int n = 1; n <= 6; ++n) {
    EXPECT_EQ(enumerate_connected_graphs(n).size(), oracle::connected_classes(n)) << "n=" << n;
  }
  bool has_c5 = false, has_k5 = false;
  for (const Graph& g : enumerate_connected_graphs(5)) {
    has_c5 = has_c5 || are_isomorphic(g, cycle_graph(5));
    has_k5 = has_k5 || are_isomorphic(g, complete_graph(5));
  }
  EXPECT_TRUE(has_c5);
  EXPECT_TRUE(has_k5);
}

TEST(Enumerate, FiltersAndCeiling) {
  EnumerationOptions bip;
  bip.bipartite_only = true;
  for (const Graph& g : enumerate_connected_graphs(6, bip)) EXPECT_TRUE(oracle::bipartite(g));
  EnumerationOptions sparse;
  sparse.min_girth = 7;
  for (const Graph& g : enumerate_connected_graphs(9, sparse)) {
    int gi = oracle::girth(g);
    EXPECT_TRUE(gi == 0 || gi >= 7);
  }
  EXPECT_THROW(enumerate_connected_graphs(9), CeilingExceeded);
}

TEST(Enumerate, IsomorphismIsExact) {
  EXPECT_TRUE(are_isomorphic(build_theta(2, 2, 2), complete_bipartite(2, 3)));
  EXPECT_FALSE(are_isomorphic(cycle_graph(6), detail::disjoint_union(cycle_graph(3), cycle_graph(3))));
  // Same degree sequence, different structure.
  Graph a = Graph::from_edges(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {0, 3}});
  Graph b = Graph::from_edges(6, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 4}, {4, 5}, {5, 2}});
  EXPECT_EQ(are_isomorphic(a, b), oracle::canonical(a) == oracle::canonical(b));
}

TEST(Enumerate, PolyominoCounts) {
  // Fixed polyominoes: cross-checked against an independent flood-fill count.
  for (int k = 1; k <= 5; ++k) {
    // every connected k-subset of a k x k box, normalized
    std::set<std::vector<Coord>> brute;
    const int side = k;
    const int cells = side * side;
    for (std::uint32_t mask = 1; mask < (1u << cells); ++mask) {
      if (__builtin_popcount(mask) != k) continue;
      std::vector<Coord> shape;
      for (int i = 0; i < cells; ++i) {
        if (mask >> i & 1) shape.push_back({i % side, i / side});
      }
      if (!Graph::from_coords(shape).is_connected()) continue;
      int mx = 1 << 20, my = 1 << 20;
      for (Coord c : shape) mx = std::min(mx, c.x), my = std::min(my, c.y);
      for (Coord& c : shape) c = {c.x - mx, c.y - my};
      std::sort(shape.begin(), shape.end());
      brute.insert(shape);
    }
    auto ours = enumerate_polyominoes(k);
    EXPECT_EQ(std::set<std::vector<Coord>>(ours.begin(), ours.end()), brute) << "k=" << k;
  }
}

// ---------------------------------------------------------------- graph io

TEST(GraphIo, JsonRoundTrip) {
  for (const Graph& g : {bowtie(), rectangular_grid(2, 3), build_theta(3, 4, 4)}) {
    Graph back = parse_graph_json(to_json_text(g));
    EXPECT_EQ(back.edges(), g.edges());
    EXPECT_EQ(back.has_coords(), g.has_coords());
  }
  EXPECT_THROW(parse_graph_json("{\"vertices\": 3, \"edges\": [[0, 1], [1]]}"), GraphError);
  EXPECT_THROW(parse_graph_json("not json"), GraphError);
  EXPECT_THROW(parse_graph_json("{\"coords\": [[0,0],[1,0]], \"edges\": []}"), GraphError);
}

TEST(GraphIo, EdgeListsWithLabels) {
  Graph g = parse_edge_list("# a triangle with a tail\nx y\ny z\nz x\nz w\n");
  EXPECT_EQ(g.order(), 4);
  EXPECT_EQ(g.size(), 4);
  Graph iso = parse_edge_list("# n=5\n0 1\n1 2\n");
  EXPECT_EQ(iso.order(), 5);
  Graph back = parse_edge_list(to_edge_list(build_theta(4, 2, 2)));
  EXPECT_EQ(back.edges(), build_theta(4, 2, 2).edges());
}

TEST(GraphIo, FixturesLoad) {
  const std::string dir = std::string(SNAKEGRAPH_DATA_DIR) + "/graphs/";
  EXPECT_TRUE(are_isomorphic(load_graph(dir + "bowtie.json"), bowtie()));
  EXPECT_TRUE(are_isomorphic(load_graph(dir + "k24.json"), complete_bipartite(2, 4)));
  EXPECT_TRUE(load_graph(dir + "grid3x3.json").has_coords());
  EXPECT_EQ(load_graph(dir + "petersen.txt").order(), 10);
  EXPECT_THROW(load_graph(dir + "missing.json"), GraphError);
}

// ---------------------------------------------------------------- game engine

TEST(Game, StartRules) {
  Graph c4 = cycle_graph(4);
  Game game(c4);
  EXPECT_EQ(game.turn(), Game::Turn::Spawn);
  game.spawn(0);
  try {
    game.place(0);
    FAIL() << "second apple on the spawn vertex accepted";
  } catch (const RuleViolation& e) {
    EXPECT_EQ(e.rule(), rule::kSecondAppleDiffers);
  }
  EXPECT_THROW(Game(path_graph(2)), RuleViolation);
  EXPECT_THROW(Game(Graph::from_edges(4, {{0, 1}, {2, 3}})), RuleViolation);
}

TEST(Game, MoveKindsAndPostconditions) {
  Graph k3 = complete_graph(3);
  SnakeState s{{0, 1, 2}, std::nullopt};
  // Full body: nothing to place, nothing to move.
  EXPECT_TRUE(legal_moves(k3, s).empty());

  Graph c4 = cycle_graph(4);
  SnakeState t{{0, 1, 2}, 3};
  auto moves = legal_moves(c4, t);
  ASSERT_EQ(moves.size(), 1u);
  EXPECT_EQ(moves[0].kind, MoveKind::Alpha);
  auto won = apply_move(c4, t, 3);
  EXPECT_EQ(won.length(), 4);
  EXPECT_EQ(status(c4, won, {}).outcome, Outcome::SnakeWins);
  EXPECT_FALSE(won.apple);

  // Gamma on a triangle inside K4: body (a,b,c) -> (c,a,b).
  Graph k4 = complete_graph(4);
  SnakeState g{{0, 1, 2}, 3};
  auto after = apply_move(k4, g, 2);
  EXPECT_EQ(after.body, (std::vector<Vertex>{2, 0, 1}));
  EXPECT_EQ(classify_move(g, 2), MoveKind::Gamma);

  // Beta shifts the body and frees the old tail.
  SnakeState b{{1, 0}, 3};
  auto shifted = apply_move(c4, b, 2);
  EXPECT_EQ(shifted.body, (std::vector<Vertex>{2, 1}));
  EXPECT_EQ(shifted.apple, std::optional<Vertex>(3));
}

TEST(Game, IllegalMovesNameTheirRule) {
  Graph c4 = cycle_graph(4);
  SnakeState s{{1, 0}, 3};
  auto rule_of = [&](const SnakeState& st, Vertex v) {
    try {
      apply_move(c4, st, v);
    } catch (const RuleViolation& e) {
      return e.rule();
    }
    return std::string("accepted");
  };
  EXPECT_EQ(rule_of(s, 3), rule::kHeadAdjacent);
  EXPECT_EQ(rule_of(s, 0), rule::kNoTurnAround);
  EXPECT_EQ(rule_of(SnakeState{{2, 1, 0}, 3}, 1), rule::kUnoccupiedOrTail);
  Graph k4 = complete_graph(4);
  try {
    apply_move(k4, SnakeState{{0, 1, 2}, 3}, 1);
    FAIL();
  } catch (const RuleViolation& e) {
    EXPECT_EQ(e.rule(), rule::kUnoccupiedOrTail);
  }
  try {
    place_apple(c4, SnakeState{{1, 0}, std::nullopt}, 0);
    FAIL();
  } catch (const RuleViolation& e) {
    EXPECT_EQ(e.rule(), rule::kAppleUnoccupied);
  }
  EXPECT_THROW(place_apple(c4, SnakeState{{1, 0}, 2}, 3), RuleViolation);
}

TEST(Game, HeadGraph) {
  Graph bt = bowtie();  // triangles {0,1,2} and {0,3,4}
  SnakeState s{{0, 1, 2}, 3};
  auto h = head_graph(bt, s);
  EXPECT_EQ(h.graph.order(), 3);
  EXPECT_TRUE(is_complete(h.graph));
  EXPECT_TRUE(head_graph_complete(bt, s));
  EXPECT_FALSE(head_graph_complete(path_graph(4), SnakeState{{0}, 3}));
}

TEST(Game, StuckAndRepetition) {
  // P3 a-b-c: the snake eats at the end and cannot continue.
  Graph p3 = path_graph(3);
  Game game(p3);
  game.spawn(1);
  game.place(0);
  game.move(0);
  game.place(2);
  EXPECT_EQ(game.status().outcome, Outcome::SnakeLoses);
  EXPECT_EQ(game.status().reason, LossReason::Stuck);

  // K4: a length-3 snake circling a triangle by gamma moves.
  Graph k4 = complete_graph(4);
  Game tri(k4);
  tri.spawn(0);
  tri.place(1);
  tri.move(1);
  tri.place(2);
  tri.move(2);  // body (2,1,0)
  tri.place(3);
  tri.move(0);  // gamma: (0,2,1)
  tri.move(1);  // gamma: (1,0,2)
  EXPECT_EQ(tri.status().outcome, Outcome::Ongoing);
  tri.move(2);  // gamma: (2,1,0), the body this epoch started with
  EXPECT_EQ(tri.status().outcome, Outcome::SnakeLoses);
  EXPECT_EQ(tri.status().reason, LossReason::Repetition);
  EXPECT_THROW(tri.move(3), RuleViolation);
}

TEST(Game, TurnOrderIsEnforced) {
  Game game(cycle_graph(4));
  EXPECT_THROW(game.place(1), RuleViolation);
  EXPECT_THROW(game.move(1), RuleViolation);
  game.spawn(0);
  EXPECT_THROW(game.move(1), RuleViolation);
  game.place(2);
  EXPECT_THROW(game.place(1), RuleViolation);
}

TEST(Game, StateInvariants) {
  Graph c4 = cycle_graph(4);
  EXPECT_EQ(state_problem(c4, SnakeState{{0, 1}, 2}), "");
  EXPECT_NE(state_problem(c4, SnakeState{{0, 2}, 1}), "");
  EXPECT_NE(state_problem(c4, SnakeState{{0, 1}, 1}), "");
  EXPECT_NE(state_problem(c4, SnakeState{{0, 1, 0}, 2}), "");
}

// ---------------------------------------------------------------- traces

TEST(Trace, RoundTripAndTamperDetection) {
  Game game(cycle_graph(4));
  game.spawn(0);
  game.place(2);
  game.move(1);
  game.move(2);
  game.place(3);
  game.move(3);
  game.place(0);
  auto doc = trace_to_json(game);
  Game again = replay_trace(doc);
  EXPECT_EQ(again.state(), game.state());
  EXPECT_EQ(again.status(), game.status());

  auto tampered = doc;
  tampered["status"] = "SnakeWins";
  EXPECT_THROW(replay_trace(tampered), TraceError);
  auto illegal = doc;
  illegal["events"][1] = {{"move", 2}};
  EXPECT_THROW(replay_trace(illegal), RuleViolation);
  EXPECT_THROW(replay_trace(nlohmann::json{{"format", "other"}}), TraceError);
}

TEST(Trace, FixtureReplays) {
  const std::string dir = std::string(SNAKEGRAPH_DATA_DIR) + "/traces";
  auto doc = nlohmann::json::parse(read_file(dir + "/c4_snake_wins.json"));
  Game game = replay_trace(doc, dir);
  EXPECT_EQ(game.status().outcome, Outcome::SnakeWins);
}
