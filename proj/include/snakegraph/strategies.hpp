#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "algorithms.hpp"
#include "characterize.hpp"
#include "game.hpp"
#include "graph.hpp"
#include "solver.hpp"

namespace snakegraph {

/// Raised when a policy meets a state its case analysis says cannot occur, or
/// when it is used on a graph it does not apply to.
class PolicyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Policies are pure functions of the graph and the current state, so a
/// validation tree can be memoized on positions.
struct SnakePolicy {
  std::string name;
  std::function<std::string(const Graph&)> inapplicable;  ///< empty string when the policy applies
  std::function<Vertex(const Graph&, const SnakeState&)> choose;
};

struct PlacerPolicy {
  std::string name;
  std::function<std::string(const Graph&)> inapplicable;
  std::function<Vertex(const Graph&)> spawn;
  std::function<Vertex(const Graph&, const SnakeState&)> place;
};

inline Vertex default_spawn(const Graph&) { return 0; }

/// Among `candidates`, the one farthest from the head by BFS distance, ties to
/// the smallest id.
inline Vertex farthest_from_head(const Graph& g, const SnakeState& s, const std::vector<Vertex>& candidates) {
  if (candidates.empty()) throw PolicyError("no candidate placement");
  const auto dist = bfs_distances(g, s.head());
  Vertex best = candidates.front();
  for (Vertex c : candidates) {
    if (dist[c] > dist[best] || (dist[c] == dist[best] && c < best)) best = c;
  }
  return best;
}

inline Vertex default_placement(const Graph& g, const SnakeState& s) {
  return farthest_from_head(g, s, unoccupied(g, s));
}

namespace detail {

inline std::vector<Vertex> free_in(const SnakeState& s, const std::vector<Vertex>& part) {
  std::vector<Vertex> out;
  for (Vertex w : part) {
    if (!s.occupies(w)) out.push_back(w);
  }
  return out;
}

/// Internal vertex sequences of head-to-tail paths through unoccupied
/// vertices; each one closes the body into a cycle containing the snake.
inline std::vector<std::vector<Vertex>> closing_paths(const Graph& g, const SnakeState& s) {
  std::vector<std::vector<Vertex>> out;
  if (s.length() < 2) return out;
  const Vertex tail = s.tail();
  std::vector<Vertex> path;
  std::vector<char> used(static_cast<std::size_t>(g.order()), 0);
  std::function<void(Vertex)> extend = [&](Vertex at) {
    if (g.adjacent(at, tail) && s.length() + static_cast<int>(path.size()) >= 3 &&
        (!path.empty() || s.length() >= 3)) {
      out.push_back(path);
    }
    for (Vertex w : g.neighbors(at)) {
      if (used[w] || s.occupies(w)) continue;
      used[w] = 1;
      path.push_back(w);
      extend(w);
      path.pop_back();
      used[w] = 0;
    }
  };
  extend(s.head());
  return out;
}

/// First of `candidates` after which the snake cannot win, by exact search
/// of the remaining endgame; the first candidate when none qualifies.
inline std::optional<Vertex> losing_for_snake(const Graph& g, const SnakeState& s,
                                              const std::vector<Vertex>& candidates) {
  if (candidates.empty()) return std::nullopt;
  Solver solver(g);
  for (Vertex c : candidates) {
    if (!solver.snake_wins(SnakeState{s.body, c})) return c;
  }
  return candidates.front();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Snake policies

inline SnakePolicy hamiltonian_snake_policy(std::vector<Vertex> cycle) {
  SnakePolicy p;
  p.name = "hamiltonian";
  p.inapplicable = [cycle](const Graph& g) -> std::string {
    if (static_cast<int>(cycle.size()) != g.order()) return "cycle does not cover the graph";
    std::vector<char> seen(static_cast<std::size_t>(g.order()), 0);
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      Vertex a = cycle[i];
      if (!g.contains(a) || seen[a]) return "not a Hamiltonian cycle";
      seen[a] = 1;
      if (!g.adjacent(a, cycle[(i + 1) % cycle.size()])) return "not a Hamiltonian cycle";
    }
    return {};
  };
  p.choose = [cycle](const Graph& g, const SnakeState& s) {
    std::vector<Vertex> next(static_cast<std::size_t>(g.order()), -1);
    for (std::size_t i = 0; i < cycle.size(); ++i) next[cycle[i]] = cycle[(i + 1) % cycle.size()];
    return next[s.head()];
  };
  return p;
}

/// Travels u -> long path -> v -> middle -> u, taking the middle that holds
/// the apple when there is one.
inline SnakePolicy theta_snake_policy(ThetaCertificate cert) {
  SnakePolicy p;
  p.name = "theta";
  p.inapplicable = [cert](const Graph& g) -> std::string {
    if (g.order() < 5) return "graph has fewer than 5 vertices";
    auto problem = theta_certificate_problem(g, cert);
    return problem.empty() ? "" : "invalid theta certificate: " + problem;
  };
  p.choose = [cert](const Graph& g, const SnakeState& s) -> Vertex {
    const Vertex h = s.head();
    if (h == cert.x || h == cert.y) return cert.u;
    if (h != cert.v) {
      auto it = std::find(cert.long_path.begin(), cert.long_path.end(), h);
      return *(it + 1);
    }
    if (s.apple && (*s.apple == cert.x || *s.apple == cert.y)) return *s.apple;
    for (Vertex m : {std::min(cert.x, cert.y), std::max(cert.x, cert.y)}) {
      if (!s.occupies(m) || (m == s.tail() && s.length() >= 3)) return m;
    }
    (void)g;
    throw PolicyError("theta policy: both middles blocked at the junction");
  };
  return p;
}

/// Snake strategy for two complete halves of equal size m joined at `cut`:
/// arrive at length m, fill the apple's half around the apple until the tail
/// sits on the cut vertex, eat, rotate the head onto the cut vertex, and then
/// eat straight from the complete head graph.
inline SnakePolicy cut_vertex_snake_policy(Vertex cut, std::vector<Vertex> half_a, std::vector<Vertex> half_b) {
  SnakePolicy p;
  p.name = "cut-vertex";
  p.inapplicable = [=](const Graph& g) -> std::string {
    if (!g.contains(cut)) return "cut vertex out of range";
    auto comps = components_after_removal(g, cut);
    for (auto& c : comps) std::sort(c.begin(), c.end());
    auto a = half_a, b = half_b;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::vector<std::vector<Vertex>> want{a, b};
    std::sort(want.begin(), want.end());
    std::sort(comps.begin(), comps.end());
    if (comps != want) return "halves are not the components of G - v";
    if (cut_decomposition(g, cut).obstruction != CutObstruction::None) {
      return "halves are not two equal complete parts";
    }
    return {};
  };
  p.choose = [=](const Graph& g, const SnakeState& s) -> Vertex {
    const int m = static_cast<int>(half_a.size());
    std::vector<int> side(static_cast<std::size_t>(g.order()), 0);
    for (Vertex w : half_a) side[w] = 1;
    for (Vertex w : half_b) side[w] = 2;
    const auto& half = [&](int k) -> const std::vector<Vertex>& { return k == 1 ? half_a : half_b; };
    const Vertex h = s.head();
    const Vertex a = *s.apple;
    const int ell = s.length();
    // A free non-apple vertex of half k; with the half full, rotate onto the tail.
    auto free_non_apple = [&](int k) {
      for (Vertex w : half(k)) {
        if (!s.occupies(w) && w != a) return w;
      }
      if (ell >= 3 && g.adjacent(h, s.tail())) return s.tail();
      throw PolicyError("cut-vertex policy: no free vertex in the half");
    };
    if (head_graph_complete(g, s)) return a;
    // Body covering exactly one half plus the cut vertex: rotate onto the cut.
    if (ell == m + 1 && h != cut) {
      int k = 0;
      for (Vertex w : s.body) k = k ? k : side[w];
      bool covers = k != 0 && s.occupies(cut);
      for (Vertex w : half(k)) covers = covers && s.occupies(w);
      if (covers) return s.tail();
    }
    if (ell < m) {
      if (g.adjacent(h, a)) return a;
      if (!s.occupies(cut)) return cut;
      return free_non_apple(side[h]);
    }
    if (ell == m) {
      if (side[a] == 0) return a;
      if (h == cut) {
        if (side[s.body[1]] == side[a]) return a;
        return free_non_apple(side[a]);
      }
      if (side[h] != side[a]) {
        if (!s.occupies(cut)) return cut;
        return free_non_apple(side[h]);
      }
      if (s.tail() == cut) return a;
      return free_non_apple(side[h]);
    }
    throw PolicyError("cut-vertex policy: unexpected position");
  };
  return p;
}

/// Shortest route to the apple through free vertices, avoiding moves that
/// leave no legal reply; ties by smallest id.
inline SnakePolicy greedy_snake_policy() {
  SnakePolicy p;
  p.name = "greedy";
  p.inapplicable = [](const Graph&) { return std::string(); };
  p.choose = [](const Graph& g, const SnakeState& s) -> Vertex {
    const auto moves = legal_moves(g, s);
    if (moves.empty()) throw PolicyError("greedy snake: no legal move");
    // BFS distances to the apple through unoccupied vertices.
    std::vector<int> dist(static_cast<std::size_t>(g.order()), -1);
    std::vector<Vertex> queue{*s.apple};
    dist[*s.apple] = 0;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      for (Vertex w : g.neighbors(queue[i])) {
        if (dist[w] < 0 && (!s.occupies(w) || w == s.tail())) {
          dist[w] = dist[queue[i]] + 1;
          queue.push_back(w);
        }
      }
    }
    auto trapped = [&](const Move& m) {
      SnakeState next = apply_move(g, s, m.target);
      if (next.length() == g.order()) return false;
      if (!next.apple) {
        for (Vertex w : g.neighbors(next.head())) {
          if (!next.occupies(w) || (w == next.tail() && next.length() >= 3)) return false;
        }
        return true;
      }
      return legal_moves(g, next).empty();
    };
    const Move* best = nullptr;
    auto key = [&](const Move& m) {
      int d = dist[m.target] < 0 ? g.order() + 1 : dist[m.target];
      return std::tuple(trapped(m), d, m.target);
    };
    for (const Move& m : moves) {
      if (!best || key(m) < key(*best)) best = &m;
    }
    return best->target;
  };
  return p;
}

// ---------------------------------------------------------------------------
// Placer policies

inline PlacerPolicy greedy_placer_policy() {
  PlacerPolicy p;
  p.name = "greedy";
  p.inapplicable = [](const Graph&) { return std::string(); };
  p.spawn = default_spawn;
  p.place = default_placement;
  return p;
}

/// For odd bipartite graphs without a spanning theta: at length n-3 the apple
/// goes on the single free vertex of the smaller side, at length n-2 on a free
/// vertex not adjacent to both head and tail.
inline PlacerPolicy odd_bipartite_placer_policy() {
  PlacerPolicy p;
  p.name = "odd-bipartite";
  p.inapplicable = [](const Graph& g) -> std::string {
    if (!bipartition(g)) return "graph is not bipartite";
    if (g.order() % 2 == 0) return "graph has an even number of vertices";
    if (g.order() < 5) return "graph has fewer than 5 vertices";
    if (find_theta_n322(g)) return "graph has a spanning theta(n-3,2,2)";
    return {};
  };
  p.spawn = default_spawn;
  p.place = [](const Graph& g, const SnakeState& s) -> Vertex {
    const int n = g.order();
    auto parts = *bipartition(g);
    auto& big = parts.x.size() > parts.y.size() ? parts.x : parts.y;
    auto& small = parts.x.size() > parts.y.size() ? parts.y : parts.x;
    if (big.size() != small.size() + 1) return default_placement(g, s);
    if (s.length() == n - 3) {
      auto free_small = detail::free_in(s, small);
      if (free_small.size() != 1) throw PolicyError("odd-bipartite placer: expected one free vertex on the small side");
      return free_small.front();
    }
    if (s.length() == n - 2) {
      const bool head_small = std::find(small.begin(), small.end(), s.head()) != small.end();
      const bool tail_small = std::find(small.begin(), small.end(), s.tail()) != small.end();
      if (!head_small || !tail_small) throw PolicyError("odd-bipartite placer: head and tail not both on the small side");
      for (Vertex w : detail::free_in(s, big)) {
        if (!(g.adjacent(w, s.head()) && g.adjacent(w, s.tail()))) return w;
      }
      throw PolicyError("odd-bipartite placer: both free vertices close a spanning theta");
    }
    return default_placement(g, s);
  };
  return p;
}

/// For graphs with a cut vertex that fail the two-equal-complete-halves shape.
/// Uses the smallest cut vertex. Degree-1 vertex: spawn elsewhere and put the
/// first apple on it. Unequal halves m1 < m2: apples go to the small half at
/// length m1-1, the large half at m1, the small half at m1+1. Equal halves with
/// an incomplete one (G2): G2 at m-1, G1 at m, then a free G1 vertex or a G2
/// vertex away from the cut at m+1, and from m+2 on a vertex away from the head.
inline PlacerPolicy connectivity_placer_policy() {
  PlacerPolicy p;
  p.name = "connectivity";
  p.inapplicable = [](const Graph& g) -> std::string {
    auto cuts = cut_vertices(g);
    if (cuts.empty()) return "graph has no cut vertex";
    if (cut_decomposition(g, cuts.front()).obstruction == CutObstruction::None) {
      return "graph has two equal complete halves";
    }
    return {};
  };
  auto degree_one = [](const Graph& g) -> std::optional<Vertex> {
    for (Vertex v = 0; v < g.order(); ++v) {
      if (g.degree(v) == 1) return v;
    }
    return std::nullopt;
  };
  p.spawn = [degree_one](const Graph& g) -> Vertex {
    auto w = degree_one(g);
    return w && *w == 0 ? 1 : 0;
  };
  p.place = [degree_one](const Graph& g, const SnakeState& s) -> Vertex {
    const int ell = s.length();
    if (auto w = degree_one(g)) {
      if (ell == 1 && !s.occupies(*w)) return *w;
      return default_placement(g, s);
    }
    const auto d = cut_decomposition(g, cut_vertices(g).front());
    auto pick = [&](const std::vector<Vertex>& part, const char* what) {
      auto free = detail::free_in(s, part);
      if (free.empty()) throw PolicyError(std::string("connectivity placer: no free vertex in ") + what);
      return farthest_from_head(g, s, free);
    };
    if (d.obstruction == CutObstruction::SizeMismatch) {
      const bool first_small = d.components[0].size() < d.components[1].size();
      const auto& g1 = d.components[first_small ? 0 : 1];
      const auto& g2 = d.components[first_small ? 1 : 0];
      const int m1 = static_cast<int>(g1.size());
      if (ell == m1 - 1 || ell == m1 + 1) return pick(g1, "the small half");
      if (ell == m1) return pick(g2, "the large half");
      return default_placement(g, s);
    }
    if (d.obstruction == CutObstruction::Incomplete) {
      auto with_cut = [&](std::vector<Vertex> c) {
        c.push_back(d.cut);
        return c;
      };
      const bool second_incomplete = !is_clique(g, with_cut(d.components[1]));
      const auto& g2 = d.components[second_incomplete ? 1 : 0];
      const auto& g1 = d.components[second_incomplete ? 0 : 1];
      const int m = static_cast<int>(g1.size());
      if (ell == m - 1) return pick(g2, "the incomplete half");
      if (ell == m) return pick(g1, "the complete half");
      if (ell == m + 1) {
        auto free1 = detail::free_in(s, g1);
        if (!free1.empty()) return farthest_from_head(g, s, free1);
        std::vector<Vertex> away;
        for (Vertex w : detail::free_in(s, g2)) {
          if (!g.adjacent(w, d.cut)) away.push_back(w);
        }
        if (!away.empty()) return farthest_from_head(g, s, away);
        return pick(g2, "the incomplete half");
      }
      if (ell >= m + 2) {
        std::vector<Vertex> away;
        for (Vertex w : unoccupied(g, s)) {
          if (!g.adjacent(w, s.head())) away.push_back(w);
        }
        if (!away.empty()) return farthest_from_head(g, s, away);
      }
      return default_placement(g, s);
    }
    return default_placement(g, s);
  };
  return p;
}

/// For non-Hamiltonian graphs of girth at least 7. Placements are the default
/// until length n-3, where the scenario decides:
///   - a cycle of length n-1 or n-2 contains the snake: a free vertex off it;
///   - the body closes into a cycle (head next to tail): the free vertex
///     adjacent to both other free vertices;
///   - no containing cycle, and the free vertices can be visited in one run
///     u, v, w from the head: v;
///   - otherwise the head neighbour the snake must take.
/// At length n-2 with two non-adjacent free vertices: the one off a containing
/// (n-1)-cycle, or, without a containing cycle, the head neighbour the snake
/// must take. The arguments only assert that such a forced neighbour exists;
/// it is identified by exact search of the remaining endgame.
inline PlacerPolicy girth_placer_policy() {
  PlacerPolicy p;
  p.name = "girth";
  p.inapplicable = [](const Graph& g) -> std::string {
    auto gi = girth(g);
    if (gi && *gi <= 6) return "graph has girth " + std::to_string(*gi);
    if (hamiltonian_cycle(g)) return "graph is Hamiltonian";
    return {};
  };
  p.spawn = default_spawn;
  p.place = [](const Graph& g, const SnakeState& s) -> Vertex {
    const int n = g.order();
    const int ell = s.length();
    const auto free = unoccupied(g, s);
    auto free_head_neighbours = [&] {
      std::vector<Vertex> out;
      for (Vertex w : free) {
        if (g.adjacent(w, s.head())) out.push_back(w);
      }
      return out;
    };
    auto off = [&](const std::vector<Vertex>& on) {
      std::vector<Vertex> rest;
      for (Vertex w : free) {
        if (std::find(on.begin(), on.end(), w) == on.end()) rest.push_back(w);
      }
      return farthest_from_head(g, s, rest);
    };
    if (ell == n - 3 && ell >= 1) {
      const auto paths = detail::closing_paths(g, s);
      for (const auto& path : paths) {
        if (path.size() == 1 || path.size() == 2) return off(path);
      }
      if (!paths.empty()) {
        for (Vertex a : free) {
          int links = 0;
          for (Vertex b : free) links += b != a && g.adjacent(a, b);
          if (links == 2) return a;
        }
        return default_placement(g, s);
      }
      auto order = free;
      std::sort(order.begin(), order.end());
      do {
        if (g.adjacent(s.head(), order[0]) && g.adjacent(order[0], order[1]) && g.adjacent(order[1], order[2])) {
          return order[1];
        }
      } while (std::next_permutation(order.begin(), order.end()));
      if (auto forced = detail::losing_for_snake(g, s, free_head_neighbours())) return *forced;
      return default_placement(g, s);
    }
    if (ell == n - 2 && ell >= 1) {
      if (g.adjacent(free[0], free[1])) return default_placement(g, s);
      const auto paths = detail::closing_paths(g, s);
      for (const auto& path : paths) {
        if (path.size() == 1) return off(path);
      }
      if (!paths.empty()) return default_placement(g, s);
      if (auto forced = detail::losing_for_snake(g, s, free_head_neighbours())) return *forced;
      return default_placement(g, s);
    }
    return default_placement(g, s);
  };
  return p;
}

// ---------------------------------------------------------------------------
// Construction by name

inline const std::vector<std::string>& snake_policy_names() {
  static const std::vector<std::string> names{"hamiltonian", "theta", "cut-vertex", "greedy"};
  return names;
}

inline const std::vector<std::string>& placer_policy_names() {
  static const std::vector<std::string> names{"odd-bipartite", "connectivity", "girth", "greedy"};
  return names;
}

/// Builds a named snake policy for `g`, deriving its certificate from the
/// graph. Returns nullopt with `why` set when the graph does not support it.
inline std::optional<SnakePolicy> make_snake_policy(const Graph& g, const std::string& name, std::string* why = nullptr) {
  auto fail = [&](std::string msg) -> std::optional<SnakePolicy> {
    if (why) *why = std::move(msg);
    return std::nullopt;
  };
  if (name == "greedy") return greedy_snake_policy();
  if (name == "hamiltonian") {
    auto cycle = hamiltonian_cycle(g);
    if (!cycle) return fail("graph is not Hamiltonian");
    return hamiltonian_snake_policy(*cycle);
  }
  if (name == "theta") {
    if (g.order() < 5) return fail("graph has fewer than 5 vertices");
    auto cert = find_theta_n322(g);
    if (!cert) return fail("graph has no spanning theta(n-3,2,2)");
    return theta_snake_policy(*cert);
  }
  if (name == "cut-vertex") {
    auto cuts = cut_vertices(g);
    if (cuts.empty()) return fail("graph has no cut vertex");
    auto d = cut_decomposition(g, cuts.front());
    if (d.obstruction != CutObstruction::None) return fail(std::string("cut vertex obstruction: ") + to_string(d.obstruction));
    return cut_vertex_snake_policy(d.cut, d.components[0], d.components[1]);
  }
  return fail("unknown snake policy '" + name + "'");
}

inline std::optional<PlacerPolicy> make_placer_policy(const Graph& g, const std::string& name,
                                                      std::string* why = nullptr) {
  std::optional<PlacerPolicy> p;
  if (name == "greedy") p = greedy_placer_policy();
  if (name == "odd-bipartite") p = odd_bipartite_placer_policy();
  if (name == "connectivity") p = connectivity_placer_policy();
  if (name == "girth") p = girth_placer_policy();
  if (!p) {
    if (why) *why = "unknown placer policy '" + name + "'";
    return std::nullopt;
  }
  auto problem = p->inapplicable(g);
  if (!problem.empty()) {
    if (why) *why = problem;
    return std::nullopt;
  }
  return p;
}

/// First applicable proof-derived policy, in the order of the name lists.
inline std::optional<SnakePolicy> applicable_snake_policy(const Graph& g) {
  for (const auto& name : snake_policy_names()) {
    if (name == "greedy") continue;
    if (auto p = make_snake_policy(g, name)) return p;
  }
  return std::nullopt;
}

inline std::optional<PlacerPolicy> applicable_placer_policy(const Graph& g) {
  for (const auto& name : placer_policy_names()) {
    if (name == "greedy") continue;
    if (auto p = make_placer_policy(g, name)) return p;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Validation against an exhaustive adversary

struct ValidationReport {
  bool valid = false;
  std::uint64_t leaves = 0;  ///< terminal positions in the explored game tree
  int depth = 0;             ///< longest play, counted in snake moves
  std::string failure;       ///< first failing line of play, when not valid
};

struct ValidationLimits {
  std::size_t max_positions = 5'000'000;
};

namespace detail {

inline std::string describe(const SnakeState& s) {
  std::string out = "body=(";
  for (std::size_t i = 0; i < s.body.size(); ++i) out += (i ? "," : "") + std::to_string(s.body[i]);
  out += ")";
  if (s.apple) out += " apple=" + std::to_string(*s.apple);
  return out;
}

class SnakeValidator {
 public:
  SnakeValidator(const Graph& g, const SnakePolicy& policy, ValidationLimits limits)
      : g_(g), policy_(policy), limits_(limits) {}

  ValidationReport run() {
    ValidationReport total{true, 0, 0, {}};
    for (Vertex a0 = 0; a0 < g_.order() && total.valid; ++a0) merge(total, placer_node({a0}));
    return total;
  }

 private:
  static void merge(ValidationReport& into, const ValidationReport& r) {
    into.leaves += r.leaves;
    into.depth = std::max(into.depth, r.depth);
    if (!r.valid && into.valid) {
      into.valid = false;
      into.failure = r.failure;
    }
  }

  ValidationReport placer_node(const std::vector<Vertex>& body) {
    if (static_cast<int>(body.size()) == g_.order()) return {true, 1, 0, {}};
    if (auto it = memo_.find(body); it != memo_.end()) return it->second;
    if (memo_.size() >= limits_.max_positions) throw CeilingExceeded("policy validation exceeded its position ceiling");
    ValidationReport total{true, 0, 0, {}};
    SnakeState s{body, std::nullopt};
    for (Vertex a : unoccupied(g_, s)) {
      merge(total, epoch(SnakeState{body, a}));
      if (!total.valid) break;
    }
    memo_[body] = total;
    return total;
  }

  ValidationReport epoch(SnakeState s) {
    std::set<std::vector<Vertex>> history;
    int moves = 0;
    while (true) {
      Vertex target;
      try {
        target = policy_.choose(g_, s);
      } catch (const std::exception& e) {
        return {false, 1, moves, "policy error at " + describe(s) + ": " + e.what()};
      }
      const auto legal = legal_moves(g_, s);
      auto it = std::find_if(legal.begin(), legal.end(), [&](const Move& m) { return m.target == target; });
      if (it == legal.end()) {
        return {false, 1, moves, "illegal move to " + std::to_string(target) + " at " + describe(s)};
      }
      ++moves;
      if (it->kind == MoveKind::Alpha) {
        auto next = apply_move(g_, s, target);
        auto r = placer_node(next.body);
        r.depth += moves;
        if (!r.valid && r.failure.find(" after ") == std::string::npos) r.failure += " after " + describe(s);
        return r;
      }
      history.insert(s.body);
      s = apply_move(g_, s, target);
      if (history.count(s.body)) return {false, 1, moves, "snake repeats " + describe(s)};
    }
  }

  const Graph& g_;
  const SnakePolicy& policy_;
  ValidationLimits limits_;
  std::map<std::vector<Vertex>, ValidationReport> memo_;
};

class PlacerValidator {
 public:
  PlacerValidator(const Graph& g, const PlacerPolicy& policy, ValidationLimits limits)
      : g_(g), policy_(policy), limits_(limits), non_hamiltonian_(!hamiltonian_cycle(g)) {}

  ValidationReport run() {
    ValidationReport r{true, 0, 0, {}};
    try {
      const Vertex a0 = policy_.spawn(g_);
      if (!g_.contains(a0)) return {false, 0, 0, "spawn outside the graph"};
      SnakeState s = new_game(g_, a0);
      s = place_apple(g_, s, policy_.place(g_, s));
      if (snake_wins(s)) {
        r.valid = false;
        r.failure = failure_;
      }
    } catch (const RuleViolation& e) {
      return {false, leaves_, depth_, std::string("illegal placement: ") + e.what()};
    } catch (const PolicyError& e) {
      return {false, leaves_, depth_, std::string("policy error: ") + e.what()};
    }
    r.leaves = leaves_;
    r.depth = depth_;
    return r;
  }

 private:
  using Key = std::pair<std::vector<Vertex>, Vertex>;

  bool snake_wins(const SnakeState& start) {
    const Key key{start.body, *start.apple};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (memo_.size() >= limits_.max_positions) throw CeilingExceeded("policy validation exceeded its position ceiling");
    std::vector<SnakeState> closure{start};
    std::set<std::vector<Vertex>> seen{start.body};
    bool win = false;
    for (std::size_t i = 0; i < closure.size() && !win; ++i) {
      const SnakeState s = closure[i];
      if (i > 0) {
        if (auto it = memo_.find(Key{s.body, *s.apple}); it != memo_.end()) {
          if (it->second) {
            win = true;
            break;
          }
          continue;
        }
      }
      const auto moves = legal_moves(g_, s);
      if (moves.empty()) ++leaves_;
      for (const Move& m : moves) {
        SnakeState next = apply_move(g_, s, m.target);
        if (m.kind == MoveKind::Alpha) {
          depth_ = std::max(depth_, next.length());
          if (next.length() == g_.order()) {
            ++leaves_;
            failure_ = "snake fills the graph from " + describe(s);
            win = true;
            break;
          }
          next = place_apple(g_, next, policy_.place(g_, next));
          if (snake_wins(next)) {
            if (failure_.find(" from ") == std::string::npos) failure_ += " from " + describe(s);
            win = true;
            break;
          }
          continue;
        }
        if (m.kind == MoveKind::Beta) check_after_beta(s, next);
        if (seen.insert(next.body).second) closure.push_back(std::move(next));
      }
    }
    if (win) {
      memo_[key] = true;
    } else {
      for (const auto& s : closure) memo_[Key{s.body, *s.apple}] = false;
    }
    return win;
  }

  /// Move-type lemmas checked on every type-beta move of the tree.
  void check_after_beta(const SnakeState& before, const SnakeState& after) {
    const Vertex old_tail = before.tail();
    if (after.occupies(old_tail) || (after.apple && *after.apple == old_tail)) {
      throw PolicyError("lemma violated: former tail not a free non-apple vertex after " + describe(before));
    }
    if (non_hamiltonian_ && head_graph_complete(g_, after)) {
      throw PolicyError("lemma violated: head graph complete after a beta move to " + describe(after));
    }
  }

  const Graph& g_;
  const PlacerPolicy& policy_;
  ValidationLimits limits_;
  bool non_hamiltonian_;
  std::map<Key, bool> memo_;
  std::uint64_t leaves_ = 0;
  int depth_ = 1;
  std::string failure_;
};

}  // namespace detail

/// Plays the policy against every placer choice, spawn included. Valid iff
/// every line ends with the snake filling the graph.
inline ValidationReport validate_snake_policy(const Graph& g, const SnakePolicy& policy, ValidationLimits limits = {}) {
  require_game_graph(g);
  require_size(g.order(), 24, "policy validation");
  auto problem = policy.inapplicable(g);
  if (!problem.empty()) throw PolicyError(policy.name + " policy does not apply: " + problem);
  return detail::SnakeValidator(g, policy, limits).run();
}

/// Plays the policy against every snake line from the policy's own spawn.
/// Valid iff the snake can never fill the graph. For placer validation the
/// depth is the greatest snake length reached.
inline ValidationReport validate_placer_policy(const Graph& g, const PlacerPolicy& policy,
                                               ValidationLimits limits = {}) {
  require_game_graph(g);
  require_size(g.order(), 24, "policy validation");
  auto problem = policy.inapplicable(g);
  if (!problem.empty()) throw PolicyError(policy.name + " policy does not apply: " + problem);
  return detail::PlacerValidator(g, policy, limits).run();
}

}  // namespace snakegraph
