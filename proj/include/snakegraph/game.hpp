#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "graph.hpp"

namespace snakegraph {

/// Names of the game rules, used when a move or placement is rejected.
namespace rule {
inline constexpr const char* kHeadAdjacent = "head-moves-to-adjacent-vertex";
inline constexpr const char* kUnoccupiedOrTail = "head-moves-to-unoccupied-vertex-or-tail";
inline constexpr const char* kNoTurnAround = "no-head-to-tail-at-length-2-or-less";
inline constexpr const char* kAppleUnoccupied = "apple-on-unoccupied-vertex";
inline constexpr const char* kSecondAppleDiffers = "second-apple-differs-from-start";
inline constexpr const char* kOneApple = "exactly-one-apple";
inline constexpr const char* kTurnOrder = "turn-order";
inline constexpr const char* kGameOver = "game-over";
inline constexpr const char* kMinVertices = "graph-has-at-least-3-vertices";
inline constexpr const char* kConnected = "graph-is-connected";
inline constexpr const char* kVertexExists = "vertex-exists";
}  // namespace rule

/// A rejected move or placement; `rule()` names the violated rule.
class RuleViolation : public std::invalid_argument {
 public:
  RuleViolation(std::string rule, const std::string& detail)
      : std::invalid_argument(rule + ": " + detail), rule_(std::move(rule)) {}
  const std::string& rule() const { return rule_; }

 private:
  std::string rule_;
};

enum class MoveKind { Alpha, Beta, Gamma };

inline const char* to_string(MoveKind k) {
  switch (k) {
    case MoveKind::Alpha: return "alpha";
    case MoveKind::Beta: return "beta";
    case MoveKind::Gamma: return "gamma";
  }
  return "?";
}

struct Move {
  Vertex target = -1;
  MoveKind kind = MoveKind::Beta;
  bool operator==(const Move&) const = default;
};

/// Snake body (head first) and the apple, if one is on the board.
///
/// The apple is unset right after an eating move, until the placer acts.
struct SnakeState {
  std::vector<Vertex> body;
  std::optional<Vertex> apple;

  Vertex head() const { return body.front(); }
  Vertex tail() const { return body.back(); }
  int length() const { return static_cast<int>(body.size()); }
  bool occupies(Vertex v) const { return std::find(body.begin(), body.end(), v) != body.end(); }
  bool operator==(const SnakeState&) const = default;
};

enum class Outcome { Ongoing, SnakeWins, SnakeLoses };
enum class LossReason { None, Stuck, Repetition };

struct GameStatus {
  Outcome outcome = Outcome::Ongoing;
  LossReason reason = LossReason::None;
  bool operator==(const GameStatus&) const = default;
};

inline std::string to_string(const GameStatus& s) {
  switch (s.outcome) {
    case Outcome::Ongoing: return "Ongoing";
    case Outcome::SnakeWins: return "SnakeWins";
    case Outcome::SnakeLoses: return s.reason == LossReason::Stuck ? "SnakeLoses(Stuck)" : "SnakeLoses(Repetition)";
  }
  return "?";
}

/// Game graphs are connected with at least 3 vertices.
inline void require_game_graph(const Graph& g) {
  if (g.order() < 3) throw RuleViolation(rule::kMinVertices, "graph has " + std::to_string(g.order()) + " vertices");
  if (!g.is_connected()) throw RuleViolation(rule::kConnected, "graph is disconnected");
}

inline void require_vertex(const Graph& g, Vertex v) {
  if (!g.contains(v)) throw RuleViolation(rule::kVertexExists, "no vertex " + std::to_string(v));
}

/// The placer's first choice: the snake spawns on `first_apple`.
inline SnakeState new_game(const Graph& g, Vertex first_apple) {
  require_game_graph(g);
  require_vertex(g, first_apple);
  return SnakeState{{first_apple}, std::nullopt};
}

/// Legal head moves in increasing target order, each tagged with its kind.
/// The tail is a legal target only when the snake has length at least 3.
inline std::vector<Move> legal_moves(const Graph& g, const SnakeState& s) {
  std::vector<Move> out;
  if (s.length() >= g.order() || !s.apple) return out;
  const Vertex tail = s.tail();
  for (Vertex w : g.neighbors(s.head())) {
    if (w == tail) {
      if (s.length() >= 3) out.push_back({w, MoveKind::Gamma});
    } else if (!s.occupies(w)) {
      out.push_back({w, w == *s.apple ? MoveKind::Alpha : MoveKind::Beta});
    }
  }
  return out;
}

/// Applies a snake move. Eating leaves the apple unset for the placer.
inline SnakeState apply_move(const Graph& g, const SnakeState& s, Vertex target) {
  require_vertex(g, target);
  if (!s.apple) throw RuleViolation(rule::kTurnOrder, "the apple has not been placed yet");
  if (s.length() >= g.order()) throw RuleViolation(rule::kGameOver, "the snake already covers the graph");
  if (!g.adjacent(s.head(), target)) {
    throw RuleViolation(rule::kHeadAdjacent,
                        std::to_string(target) + " is not adjacent to the head " + std::to_string(s.head()));
  }
  const bool to_tail = target == s.tail();
  if (to_tail && s.length() <= 2) {
    throw RuleViolation(rule::kNoTurnAround, "the head may not move onto the tail at length " +
                                                 std::to_string(s.length()));
  }
  if (!to_tail && s.occupies(target)) {
    throw RuleViolation(rule::kUnoccupiedOrTail, std::to_string(target) + " is occupied by the body");
  }
  SnakeState next;
  next.body.reserve(s.body.size() + 1);
  next.body.push_back(target);
  if (target == *s.apple) {
    next.body.insert(next.body.end(), s.body.begin(), s.body.end());
  } else {
    next.body.insert(next.body.end(), s.body.begin(), s.body.end() - 1);
    next.apple = s.apple;
  }
  return next;
}

inline MoveKind classify_move(const SnakeState& s, Vertex target) {
  if (s.apple && target == *s.apple) return MoveKind::Alpha;
  if (target == s.tail()) return MoveKind::Gamma;
  return MoveKind::Beta;
}

/// Places the apple. The state must have no apple and the vertex must be free.
inline SnakeState place_apple(const Graph& g, const SnakeState& s, Vertex a) {
  require_vertex(g, a);
  if (s.apple) throw RuleViolation(rule::kOneApple, "an apple is already on vertex " + std::to_string(*s.apple));
  if (s.length() >= g.order()) throw RuleViolation(rule::kGameOver, "no unoccupied vertex remains");
  if (s.occupies(a)) {
    throw RuleViolation(s.length() == 1 ? rule::kSecondAppleDiffers : rule::kAppleUnoccupied,
                        std::to_string(a) + " is occupied by the snake");
  }
  SnakeState next = s;
  next.apple = a;
  return next;
}

inline std::vector<Vertex> unoccupied(const Graph& g, const SnakeState& s) {
  std::vector<char> occ(static_cast<std::size_t>(g.order()), 0);
  for (Vertex v : s.body) occ[v] = 1;
  std::vector<Vertex> out;
  for (Vertex v = 0; v < g.order(); ++v) {
    if (!occ[v]) out.push_back(v);
  }
  return out;
}

/// Subgraph induced by the unoccupied vertices and the head.
inline Subgraph head_graph(const Graph& g, const SnakeState& s) {
  auto keep = unoccupied(g, s);
  keep.push_back(s.head());
  return induced_subgraph(g, keep);
}

/// Head graph completeness without materializing the subgraph.
inline bool head_graph_complete(const Graph& g, const SnakeState& s) {
  auto keep = unoccupied(g, s);
  keep.push_back(s.head());
  return is_clique(g, keep);
}

/// Terminal detection. `history` holds the earlier bodies of the current
/// length; a body can never recur at another length, so older epochs are not
/// needed. Because the apple is fixed within an epoch, comparing bodies alone
/// is the same as comparing (body, apple) positions.
inline GameStatus status(const Graph& g, const SnakeState& s, const std::set<std::vector<Vertex>>& history) {
  if (s.length() == g.order()) return {Outcome::SnakeWins, LossReason::None};
  if (history.count(s.body)) return {Outcome::SnakeLoses, LossReason::Repetition};
  if (s.apple && legal_moves(g, s).empty()) return {Outcome::SnakeLoses, LossReason::Stuck};
  return {};
}

/// Describes the first broken state invariant, or returns an empty string.
inline std::string state_problem(const Graph& g, const SnakeState& s) {
  if (s.body.empty()) return "empty body";
  if (s.length() > g.order()) return "body longer than the graph";
  std::vector<char> seen(static_cast<std::size_t>(g.order()), 0);
  for (std::size_t i = 0; i < s.body.size(); ++i) {
    Vertex v = s.body[i];
    if (!g.contains(v)) return "body vertex out of range";
    if (seen[v]) return "body repeats vertex " + std::to_string(v);
    seen[v] = 1;
    if (i > 0 && !g.adjacent(s.body[i - 1], v)) return "body is not a path";
  }
  if (s.apple) {
    if (!g.contains(*s.apple)) return "apple out of range";
    if (seen[*s.apple]) return "apple lies on the body";
  }
  return {};
}

/// A game session: the placer's spawn choice, alternating play and explicit
/// repetition tracking.
class Game {
 public:
  enum class Turn { Spawn, Placer, Snake, Over };

  struct Event {
    enum class Kind { Spawn, Place, Move } kind;
    Vertex vertex;
  };

  explicit Game(Graph g) : graph_(std::move(g)) { require_game_graph(graph_); }

  const Graph& graph() const { return graph_; }
  const SnakeState& state() const { return state_; }
  const GameStatus& status() const { return status_; }
  const std::vector<Event>& events() const { return events_; }
  const std::set<std::vector<Vertex>>& epoch_history() const { return history_; }

  Turn turn() const {
    if (status_.outcome != Outcome::Ongoing) return Turn::Over;
    if (state_.body.empty()) return Turn::Spawn;
    return state_.apple ? Turn::Snake : Turn::Placer;
  }

  void spawn(Vertex a0) {
    expect_turn(Turn::Spawn);
    state_ = new_game(graph_, a0);
    events_.push_back({Event::Kind::Spawn, a0});
  }

  void place(Vertex a) {
    expect_turn(Turn::Placer);
    state_ = place_apple(graph_, state_, a);
    events_.push_back({Event::Kind::Place, a});
    history_.clear();
    status_ = snakegraph::status(graph_, state_, history_);
  }

  MoveKind move(Vertex target) {
    expect_turn(Turn::Snake);
    const MoveKind kind = classify_move(state_, target);
    SnakeState next = apply_move(graph_, state_, target);
    events_.push_back({Event::Kind::Move, target});
    if (kind == MoveKind::Alpha) {
      history_.clear();
    } else {
      history_.insert(state_.body);
    }
    state_ = std::move(next);
    status_ = snakegraph::status(graph_, state_, history_);
    return kind;
  }

 private:
  void expect_turn(Turn t) const {
    if (turn() == t) return;
    static const char* names[] = {"spawn", "placer", "snake", "over"};
    throw RuleViolation(turn() == Turn::Over ? rule::kGameOver : rule::kTurnOrder,
                        std::string("it is the ") + names[static_cast<int>(turn())] + " turn, not " +
                            names[static_cast<int>(t)]);
  }

  Graph graph_;
  SnakeState state_;
  GameStatus status_;
  std::set<std::vector<Vertex>> history_;
  std::vector<Event> events_;
};

}  // namespace snakegraph
