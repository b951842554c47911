#pragma once

#include <string>

#include <json.hpp>

#include "game.hpp"
#include "graph_io.hpp"

namespace snakegraph {

// Game trace (version 1):
//
//   {
//     "format": "snakegraph-trace",
//     "version": 1,
//     "graph": {...graph document...}      or  "graph_file": "path/to/graph",
//     "a0": <spawn vertex>,
//     "events": [{"place": v}, {"move": v}, ...],
//     "status": "SnakeWins"                optional; checked on replay
//   }

inline constexpr int kTraceVersion = 1;

inline nlohmann::ordered_json trace_to_json(const Game& game) {
  nlohmann::ordered_json doc;
  doc["format"] = "snakegraph-trace";
  doc["version"] = kTraceVersion;
  doc["graph"] = to_json(game.graph());
  doc["a0"] = nullptr;
  doc["events"] = nlohmann::ordered_json::array();
  for (const auto& e : game.events()) {
    switch (e.kind) {
      case Game::Event::Kind::Spawn: doc["a0"] = e.vertex; break;
      case Game::Event::Kind::Place: doc["events"].push_back({{"place", e.vertex}}); break;
      case Game::Event::Kind::Move: doc["events"].push_back({{"move", e.vertex}}); break;
    }
  }
  doc["status"] = to_string(game.status());
  return doc;
}

class TraceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Replays a trace through the engine; every step is re-validated. Throws
/// RuleViolation for an illegal step and TraceError for a malformed document or
/// a recorded status that differs from the replayed one.
inline Game replay_trace(const nlohmann::json& doc, const std::string& base_dir = ".") {
  if (!doc.is_object() || doc.value("format", "") != "snakegraph-trace") throw TraceError("not a snakegraph trace");
  if (doc.value("version", 0) != kTraceVersion) throw TraceError("unsupported trace version");
  Graph g;
  if (doc.contains("graph")) {
    g = graph_from_json(doc.at("graph"));
  } else if (doc.contains("graph_file")) {
    std::string path = doc.at("graph_file").get<std::string>();
    if (!path.empty() && path.front() != '/') path = base_dir + "/" + path;
    g = load_graph(path);
  } else {
    throw TraceError("trace names no graph");
  }
  Game game(std::move(g));
  if (!doc.contains("a0") || doc.at("a0").is_null()) return game;
  try {
    game.spawn(doc.at("a0").get<int>());
    for (const auto& e : doc.at("events")) {
      if (e.contains("place")) {
        game.place(e.at("place").get<int>());
      } else if (e.contains("move")) {
        game.move(e.at("move").get<int>());
      } else {
        throw TraceError("event is neither a placement nor a move");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw TraceError(std::string("malformed trace: ") + e.what());
  }
  if (doc.contains("status") && doc.at("status").get<std::string>() != to_string(game.status())) {
    throw TraceError("recorded status " + doc.at("status").get<std::string>() + " but replay ends in " +
                     to_string(game.status()));
  }
  return game;
}

}  // namespace snakegraph
