#pragma once

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <optional>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "game.hpp"
#include "graph.hpp"

namespace snakegraph {

enum class Role { Snake, Placer };

struct WinVerdict {
  bool snake_wins = false;
  std::optional<Vertex> best_move;  ///< move or placement for the side to move
  std::size_t node_count = 0;
};

struct WinnableResult {
  bool winnable = false;
  std::optional<std::pair<Vertex, Vertex>> witness;  ///< a losing (a0, a1) when not winnable
  std::size_t node_count = 0;
  double elapsed_ms = 0;
};

struct SolverLimits {
  std::size_t max_memo_entries = 50'000'000;
  int max_vertices = 24;
};

/// All bodies reachable from `s` by non-eating moves (the apple stays put),
/// including the start. Straightforward engine-level search.
inline std::set<std::vector<Vertex>> reachable_same_length(const Graph& g, const SnakeState& s) {
  std::set<std::vector<Vertex>> seen{s.body};
  std::vector<SnakeState> stack{s};
  while (!stack.empty()) {
    SnakeState cur = std::move(stack.back());
    stack.pop_back();
    for (const Move& m : legal_moves(g, cur)) {
      if (m.kind == MoveKind::Alpha) continue;
      SnakeState next = apply_move(g, cur, m.target);
      if (seen.insert(next.body).second) stack.push_back(std::move(next));
    }
  }
  return seen;
}

/// Exact adversarial solver.
///
/// Within one length epoch the apple is fixed, so the snake's options are the
/// bodies reachable by non-eating moves. Any walk between two bodies can be
/// shortened to one that never repeats a position, so the repetition rule never
/// removes a snake win, and the epoch reduces to a reachability closure: the
/// snake wins iff some reachable body can eat, and after eating either covers
/// the graph or wins against every placement.
///
/// States are memoized on the exact ordered body plus apple. A closure that
/// turns out losing marks every body in it as losing, since each of them
/// reaches a subset of the same eating options.
class Solver {
 public:
  using Packed = unsigned __int128;

  explicit Solver(const Graph& g, SolverLimits limits = {}) : g_(g), limits_(limits) {
    require_game_graph(g_);
    require_size(g_.order(), std::min(limits_.max_vertices, kMaxSlots), "solver");
    for (Vertex v = 0; v < g_.order(); ++v) adj_.push_back(g_.neighbor_mask(v));
  }

  const Graph& graph() const { return g_; }
  std::size_t node_count() const { return nodes_; }
  std::size_t memo_size() const { return snake_memo_.size() + placer_memo_.size(); }

  /// Value of `s` for the side to move: the snake if an apple is placed,
  /// otherwise the placer.
  WinVerdict solve_state(const SnakeState& s) {
    check_state(s);
    WinVerdict v;
    if (s.length() == g_.order()) {
      v.snake_wins = true;
    } else if (s.apple) {
      v.snake_wins = snake_node(pack(s.body, *s.apple));
      v.best_move = optimal_move(s, Role::Snake);
    } else {
      v.snake_wins = placer_node(pack(s.body, -1));
      v.best_move = optimal_move(s, Role::Placer);
    }
    v.node_count = nodes_;
    return v;
  }

  bool snake_wins(const SnakeState& s) {
    check_state(s);
    if (s.length() == g_.order()) return true;
    return s.apple ? snake_node(pack(s.body, *s.apple)) : placer_node(pack(s.body, -1));
  }

  /// A value-achieving choice for `role`. Snake: among winning moves, one on a
  /// shortest route to a winning meal (so play always progresses), smallest id
  /// first; when losing, the first step towards the nearest meal. Placer: the
  /// smallest placement that beats the snake, else the smallest placement.
  std::optional<Vertex> optimal_move(const SnakeState& s, Role role) {
    check_state(s);
    if (s.length() == g_.order()) return std::nullopt;
    if (role == Role::Placer) {
      if (s.apple) return std::nullopt;
      std::optional<Vertex> first;
      for (Vertex u = 0; u < g_.order(); ++u) {
        if (s.occupies(u)) continue;
        if (!first) first = u;
        if (!snake_node(pack(s.body, u))) return u;
      }
      return first;
    }
    if (!s.apple) return std::nullopt;
    return plan_snake_move(s);
  }

  /// Decides whether the graph is snake-winnable: the snake must win for every
  /// spawn a0 and every second apple a1 != a0.
  WinnableResult winnable() {
    const auto start = std::chrono::steady_clock::now();
    WinnableResult r{true, std::nullopt, 0, 0};
    for (Vertex a0 = 0; a0 < g_.order() && r.winnable; ++a0) {
      for (Vertex a1 = 0; a1 < g_.order(); ++a1) {
        if (a1 == a0) continue;
        if (!snake_node(pack({a0}, a1))) {
          r.winnable = false;
          r.witness = std::make_pair(a0, a1);
          break;
        }
      }
    }
    r.node_count = nodes_;
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
  }

 private:
  static constexpr int kBits = 5;
  static constexpr int kMaxSlots = 24;
  static constexpr int kAppleShift = kMaxSlots * kBits;

  struct Hash {
    std::size_t operator()(Packed k) const {
      std::uint64_t lo = static_cast<std::uint64_t>(k);
      std::uint64_t hi = static_cast<std::uint64_t>(k >> 64);
      std::uint64_t h = lo * 0x9e3779b97f4a7c15ULL ^ (hi + 0x632be59bd9b4e019ULL + (lo << 6) + (lo >> 2));
      h ^= h >> 31;
      h *= 0xbf58476d1ce4e5b9ULL;
      return static_cast<std::size_t>(h ^ (h >> 29));
    }
  };

  struct Unpacked {
    Vertex body[kMaxSlots];
    int len = 0;
    Vertex apple = -1;
    std::uint64_t occupied = 0;
  };

  static Packed pack(const std::vector<Vertex>& body, Vertex apple) {
    Packed k = 0;
    for (std::size_t i = 0; i < body.size(); ++i) k |= static_cast<Packed>(body[i] + 1) << (kBits * i);
    if (apple >= 0) k |= static_cast<Packed>(apple + 1) << kAppleShift;
    return k;
  }

  static Unpacked unpack(Packed k) {
    Unpacked u;
    for (int i = 0; i < kMaxSlots; ++i) {
      int val = static_cast<int>((k >> (kBits * i)) & 31);
      if (val == 0) break;
      u.body[u.len++] = val - 1;
      u.occupied |= std::uint64_t{1} << (val - 1);
    }
    u.apple = static_cast<int>((k >> kAppleShift) & 31) - 1;
    return u;
  }

  static Packed body_bits(Packed k) { return k & ((static_cast<Packed>(1) << kAppleShift) - 1); }
  static Packed with_apple(Packed body, Vertex apple) { return body | static_cast<Packed>(apple + 1) << kAppleShift; }

  /// Head moves to `w`, tail vacates.
  static Packed advance(Packed k, int len, Vertex w) {
    Packed body = body_bits(k);
    Packed apple = k & ~body;
    Packed shifted = (body << kBits) & ~(static_cast<Packed>(31) << (kBits * len));
    shifted &= (static_cast<Packed>(1) << kAppleShift) - 1;
    return apple | shifted | static_cast<Packed>(w + 1);
  }

  /// Head eats the apple: the body grows and the apple is removed.
  static Packed eat(Packed k, Vertex apple) { return (body_bits(k) << kBits) | static_cast<Packed>(apple + 1); }

  void check_state(const SnakeState& s) const {
    auto problem = state_problem(g_, s);
    if (!problem.empty()) throw std::invalid_argument("invalid snake state: " + problem);
  }

  void guard() const {
    if (memo_size() > limits_.max_memo_entries) {
      throw CeilingExceeded("solver memo exceeded " + std::to_string(limits_.max_memo_entries) + " entries");
    }
  }

  template <typename F>
  void for_each_step(const Unpacked& u, F&& f) const {
    const Vertex head = u.body[0];
    const Vertex tail = u.body[u.len - 1];
    std::uint64_t targets = adj_[head] & ~u.occupied & ~(std::uint64_t{1} << u.apple);
    if (u.len >= 3 && (adj_[head] >> tail & 1)) targets |= std::uint64_t{1} << tail;
    for (; targets; targets &= targets - 1) f(static_cast<Vertex>(std::countr_zero(targets)));
  }

  bool can_eat(const Unpacked& u) const { return adj_[u.body[0]] >> u.apple & 1; }

  /// Snake to move; true iff the snake wins.
  bool snake_node(Packed key) {
    if (auto it = snake_memo_.find(key); it != snake_memo_.end()) return it->second;
    std::vector<Packed> closure{key};
    std::unordered_set<Packed, Hash> seen{key};
    bool win = false;
    for (std::size_t i = 0; i < closure.size() && !win; ++i) {
      const Packed cur = closure[i];
      ++nodes_;
      if (i > 0) {
        if (auto it = snake_memo_.find(cur); it != snake_memo_.end()) {
          if (it->second) {
            win = true;
            break;
          }
          continue;  // its whole closure is already known to lose
        }
      }
      const Unpacked u = unpack(cur);
      if (can_eat(u)) {
        if (u.len + 1 == g_.order() || placer_node(eat(cur, u.apple))) {
          win = true;
          break;
        }
      }
      for_each_step(u, [&](Vertex w) {
        Packed next = advance(cur, u.len, w);
        if (seen.insert(next).second) closure.push_back(next);
      });
    }
    if (win) {
      snake_memo_[key] = true;
    } else {
      for (Packed k : closure) snake_memo_[k] = false;
    }
    guard();
    return win;
  }

  /// Placer to move after a meal; true iff the snake wins against every placement.
  bool placer_node(Packed body) {
    if (auto it = placer_memo_.find(body); it != placer_memo_.end()) return it->second;
    ++nodes_;
    const Unpacked u = unpack(body);
    bool win = true;
    for (Vertex a = 0; a < g_.order() && win; ++a) {
      if (u.occupied >> a & 1) continue;
      win = snake_node(with_apple(body, a));
    }
    placer_memo_[body] = win;
    guard();
    return win;
  }

  /// Breadth-first levels of the epoch closure; the chosen first step lies on
  /// a shortest route to a winning meal, or to any meal when none wins.
  std::optional<Vertex> plan_snake_move(const SnakeState& s) {
    const Packed start = pack(s.body, *s.apple);
    std::vector<std::vector<Packed>> levels{{start}};
    std::unordered_map<Packed, int, Hash> depth{{start, 0}};
    auto meal_wins = [&](Packed k) {
      const Unpacked u = unpack(k);
      if (!can_eat(u)) return false;
      return u.len + 1 == g_.order() || placer_node(eat(k, u.apple));
    };
    std::vector<Packed> goals;
    std::vector<Packed> meals;
    while (!levels.back().empty()) {
      for (Packed k : levels.back()) {
        if (can_eat(unpack(k))) {
          meals.push_back(k);
          if (meal_wins(k)) goals.push_back(k);
        }
      }
      if (!goals.empty()) break;
      std::vector<Packed> next;
      for (Packed k : levels.back()) {
        const Unpacked u = unpack(k);
        for_each_step(u, [&](Vertex w) {
          Packed nk = advance(k, u.len, w);
          if (depth.emplace(nk, static_cast<int>(levels.size())).second) next.push_back(nk);
        });
      }
      levels.push_back(std::move(next));
    }
    if (goals.empty() && !meals.empty()) {
      // Losing: head for the nearest meal, which lies at the smallest depth.
      int best = depth.at(meals.front());
      for (Packed k : meals) best = std::min(best, depth.at(k));
      for (Packed k : meals) {
        if (depth.at(k) == best) goals.push_back(k);
      }
    }
    if (goals.empty()) {
      auto moves = legal_moves(g_, s);
      if (moves.empty()) return std::nullopt;
      return moves.front().target;
    }
    const int goal_depth = depth.at(goals.front());
    if (goal_depth == 0) return *s.apple;
    // Walk back from the goals: a state is good if one of its successors at
    // the next level is good.
    std::unordered_set<Packed, Hash> good(goals.begin(), goals.end());
    for (int level = goal_depth - 1; level >= 1; --level) {
      for (Packed k : levels[level]) {
        const Unpacked u = unpack(k);
        bool ok = false;
        for_each_step(u, [&](Vertex w) {
          if (!ok && good.count(advance(k, u.len, w))) ok = true;
        });
        if (ok) good.insert(k);
      }
    }
    const Unpacked root = unpack(start);
    std::optional<Vertex> choice;
    for_each_step(root, [&](Vertex w) {
      if (!choice && good.count(advance(start, root.len, w))) choice = w;
    });
    return choice;
  }

  const Graph& g_;
  SolverLimits limits_;
  std::vector<std::uint64_t> adj_;
  std::unordered_map<Packed, bool, Hash> snake_memo_;
  std::unordered_map<Packed, bool, Hash> placer_memo_;
  std::size_t nodes_ = 0;
};

/// Convenience wrappers around a fresh Solver.
inline WinVerdict solve_state(const Graph& g, const SnakeState& s, SolverLimits limits = {}) {
  Solver solver(g, limits);
  return solver.solve_state(s);
}

inline WinnableResult winnable(const Graph& g, SolverLimits limits = {}) {
  Solver solver(g, limits);
  return solver.winnable();
}

inline std::optional<Vertex> optimal_move(const Graph& g, const SnakeState& s, Role role, SolverLimits limits = {}) {
  Solver solver(g, limits);
  return solver.optimal_move(s, role);
}

}  // namespace snakegraph
