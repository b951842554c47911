#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "game.hpp"
#include "graph_io.hpp"
#include "solver.hpp"
#include "strategies.hpp"
#include "trace.hpp"

namespace snakegraph {

/// An API-level failure with the HTTP status it maps to. `rule` names the
/// violated game rule for 409 responses.
class ServiceError : public std::runtime_error {
 public:
  ServiceError(int status, std::string message, std::string rule = {})
      : std::runtime_error(std::move(message)), status_(status), rule_(std::move(rule)) {}
  int status() const { return status_; }
  const std::string& rule() const { return rule_; }

 private:
  int status_;
  std::string rule_;
};

enum class PlayerRole { Snake, Placer };

inline const char* to_string(PlayerRole r) { return r == PlayerRole::Snake ? "snake" : "placer"; }

inline PlayerRole parse_role(const std::string& s) {
  if (s == "snake") return PlayerRole::Snake;
  if (s == "placer") return PlayerRole::Placer;
  throw ServiceError(400, "role must be \"snake\" or \"placer\"");
}

struct SessionOptions {
  PlayerRole human = PlayerRole::Snake;
  /// "auto" (solver, then proof policy, then greedy) or a policy name for the
  /// engine's role.
  std::string engine = "auto";
  /// Kept well below the library default so a request never stalls for long.
  SolverLimits solver_limits{5'000'000, 24};
};

/// A vertex choice together with where it came from: "solver",
/// "policy:<name>" or "greedy".
struct Choice {
  Vertex vertex = -1;
  std::string source;
};

/// Sessions of human-versus-engine play. Every transition goes through Game,
/// so the service and the engine agree on every rule. Thread-safe: the
/// session table has its own lock and each session is handled exclusively.
class GameService {
 public:
  nlohmann::json create(Graph g, SessionOptions opts) {
    auto session = std::make_shared<Session>(std::move(g), opts);
    if (opts.engine != "auto") {
      std::string why;
      bool ok = engine_role(*session) == PlayerRole::Snake
                    ? make_snake_policy(session->game.graph(), opts.engine, &why).has_value()
                    : make_placer_policy(session->game.graph(), opts.engine, &why).has_value();
      if (!ok) throw ServiceError(400, "engine policy unavailable: " + why);
    }
    std::string id;
    {
      std::lock_guard lock(table_mutex_);
      id = "s" + std::to_string(++next_id_);
      session->id = id;
      sessions_[id] = session;
    }
    std::lock_guard lock(session->mutex);
    engine_turns(*session);
    return view(*session);
  }

  nlohmann::json state(const std::string& id) {
    auto s = find(id);
    std::lock_guard lock(s->mutex);
    return view(*s);
  }

  /// The human snake's move.
  nlohmann::json move(const std::string& id, Vertex target) {
    auto s = find(id);
    std::lock_guard lock(s->mutex);
    expect_human(*s, PlayerRole::Snake);
    s->last_engine.reset();
    guarded([&] { s->game.move(target); });
    engine_turns(*s);
    return view(*s);
  }

  /// The human placer's spawn (first call) or apple placement.
  nlohmann::json place(const std::string& id, Vertex vertex) {
    auto s = find(id);
    std::lock_guard lock(s->mutex);
    expect_human(*s, PlayerRole::Placer);
    s->last_engine.reset();
    guarded([&] {
      if (s->game.turn() == Game::Turn::Spawn) {
        s->game.spawn(vertex);
      } else {
        s->game.place(vertex);
      }
    });
    engine_turns(*s);
    return view(*s);
  }

  /// A suggestion for the human's pending action.
  nlohmann::json hint(const std::string& id) {
    auto s = find(id);
    std::lock_guard lock(s->mutex);
    if (s->game.turn() == Game::Turn::Over) throw ServiceError(409, "the game is over", rule::kGameOver);
    if (role_to_act(*s) != s->opts.human) throw ServiceError(409, "it is the engine's turn", rule::kTurnOrder);
    Choice c = choose(*s, s->opts.human, "auto");
    return {{"vertex", c.vertex}, {"source", c.source}, {"role", to_string(s->opts.human)}};
  }

  nlohmann::ordered_json trace(const std::string& id) {
    auto s = find(id);
    std::lock_guard lock(s->mutex);
    return trace_to_json(s->game);
  }

  std::size_t session_count() {
    std::lock_guard lock(table_mutex_);
    return sessions_.size();
  }

 private:
  struct Session {
    Session(Graph g, SessionOptions o) : game(std::move(g)), opts(std::move(o)) {}
    std::string id;
    Game game;
    SessionOptions opts;
    std::mutex mutex;
    std::unique_ptr<Solver> solver;
    bool solver_failed = false;
    std::optional<std::optional<SnakePolicy>> snake_policy;
    std::optional<std::optional<PlacerPolicy>> placer_policy;
    std::optional<Choice> last_engine;
  };

  std::shared_ptr<Session> find(const std::string& id) {
    std::lock_guard lock(table_mutex_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) throw ServiceError(404, "unknown session '" + id + "'");
    return it->second;
  }

  static PlayerRole engine_role(const Session& s) {
    return s.opts.human == PlayerRole::Snake ? PlayerRole::Placer : PlayerRole::Snake;
  }

  static PlayerRole role_to_act(const Session& s) {
    return s.game.turn() == Game::Turn::Snake ? PlayerRole::Snake : PlayerRole::Placer;
  }

  static void expect_human(const Session& s, PlayerRole r) {
    if (s.opts.human != r) {
      throw ServiceError(409, std::string("the human plays the ") + to_string(s.opts.human), rule::kTurnOrder);
    }
  }

  template <typename F>
  static void guarded(F&& f) {
    try {
      f();
    } catch (const RuleViolation& e) {
      throw ServiceError(409, e.what(), e.rule());
    }
  }

  Solver* solver(Session& s) {
    if (s.solver_failed) return nullptr;
    if (!s.solver) {
      try {
        s.solver = std::make_unique<Solver>(s.game.graph(), s.opts.solver_limits);
      } catch (const CeilingExceeded&) {
        s.solver_failed = true;
        return nullptr;
      }
    }
    return s.solver.get();
  }

  std::optional<Choice> solver_choice(Session& s, PlayerRole r) {
    Solver* sv = solver(s);
    if (!sv) return std::nullopt;
    const SnakeState& st = s.game.state();
    try {
      if (s.game.turn() == Game::Turn::Spawn) {
        // A spawn from which some second apple beats the snake, if any.
        const int n = s.game.graph().order();
        for (Vertex a0 = 0; a0 < n; ++a0) {
          for (Vertex a1 = 0; a1 < n; ++a1) {
            if (a1 != a0 && !sv->snake_wins(SnakeState{{a0}, a1})) return Choice{a0, "solver"};
          }
        }
        return Choice{0, "solver"};
      }
      auto v = sv->optimal_move(st, r == PlayerRole::Snake ? Role::Snake : Role::Placer);
      if (v) return Choice{*v, "solver"};
      return std::nullopt;
    } catch (const CeilingExceeded&) {
      s.solver.reset();
      s.solver_failed = true;
      return std::nullopt;
    }
  }

  const std::optional<SnakePolicy>& snake_policy(Session& s, const std::string& name) {
    if (!s.snake_policy) {
      s.snake_policy = name == "auto" ? applicable_snake_policy(s.game.graph())
                                      : make_snake_policy(s.game.graph(), name);
    }
    return *s.snake_policy;
  }

  const std::optional<PlacerPolicy>& placer_policy(Session& s, const std::string& name) {
    if (!s.placer_policy) {
      s.placer_policy = name == "auto" ? applicable_placer_policy(s.game.graph())
                                       : make_placer_policy(s.game.graph(), name);
    }
    return *s.placer_policy;
  }

  Choice choose(Session& s, PlayerRole r, const std::string& engine) {
    const Graph& g = s.game.graph();
    const SnakeState& st = s.game.state();
    if (engine == "auto") {
      if (auto c = solver_choice(s, r)) return *c;
    }
    // Hints for the human side never use the engine's named policy.
    const std::string name = r == engine_role(s) ? engine : std::string("auto");
    try {
      if (r == PlayerRole::Snake) {
        if (const auto& p = snake_policy(s, name)) return {p->choose(g, st), "policy:" + p->name};
      } else if (const auto& p = placer_policy(s, name)) {
        Vertex v = s.game.turn() == Game::Turn::Spawn ? p->spawn(g) : p->place(g, st);
        return {v, "policy:" + p->name};
      }
    } catch (const PolicyError&) {
    }
    if (r == PlayerRole::Snake) return {greedy_snake_policy().choose(g, st), "greedy"};
    if (s.game.turn() == Game::Turn::Spawn) return {default_spawn(g), "greedy"};
    return {default_placement(g, st), "greedy"};
  }

  void engine_turns(Session& s) {
    const PlayerRole me = engine_role(s);
    while (s.game.turn() != Game::Turn::Over && role_to_act(s) == me) {
      Choice c = choose(s, me, s.opts.engine);
      switch (s.game.turn()) {
        case Game::Turn::Spawn: s.game.spawn(c.vertex); break;
        case Game::Turn::Placer: s.game.place(c.vertex); break;
        case Game::Turn::Snake: s.game.move(c.vertex); break;
        case Game::Turn::Over: break;
      }
      s.last_engine = c;
    }
  }

  static nlohmann::json view(const Session& s) {
    static const char* turns[] = {"spawn", "placer", "snake", "over"};
    const Game& game = s.game;
    const SnakeState& st = game.state();
    nlohmann::json doc;
    doc["id"] = s.id;
    doc["graph"] = to_json(game.graph());
    doc["human_role"] = to_string(s.opts.human);
    doc["engine"] = s.opts.engine;
    doc["turn"] = turns[static_cast<int>(game.turn())];
    doc["body"] = st.body;
    doc["apple"] = st.apple ? nlohmann::json(*st.apple) : nlohmann::json(nullptr);
    doc["length"] = st.length();
    doc["status"] = to_string(game.status());
    nlohmann::json moves = nlohmann::json::array();
    if (game.turn() == Game::Turn::Snake) {
      for (const Move& m : legal_moves(game.graph(), st)) moves.push_back({{"target", m.target}, {"kind", to_string(m.kind)}});
    }
    doc["legal_moves"] = moves;
    nlohmann::json free = nlohmann::json::array();
    if (game.turn() == Game::Turn::Spawn || game.turn() == Game::Turn::Placer) {
      for (Vertex v = 0; v < game.graph().order(); ++v) {
        if (!st.occupies(v)) free.push_back(v);
      }
    }
    doc["legal_placements"] = free;
    doc["events"] = game.events().size();
    if (s.last_engine) {
      doc["engine_action"] = {{"vertex", s.last_engine->vertex}, {"source", s.last_engine->source}};
    } else {
      doc["engine_action"] = nullptr;
    }
    return doc;
  }

  std::mutex table_mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t next_id_ = 0;
};

}  // namespace snakegraph
