#pragma once

#include <string>

#include <httplib.h>
#include <json.hpp>

#include "graph_io.hpp"
#include "service.hpp"

namespace snakegraph {

inline constexpr const char* kApiPrefix = "/api/v1";

namespace detail {

inline void send_json(httplib::Response& res, int status, const nlohmann::json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

inline nlohmann::json parse_body(const httplib::Request& req) {
  try {
    auto doc = nlohmann::json::parse(req.body.empty() ? std::string("{}") : req.body);
    if (!doc.is_object()) throw ServiceError(400, "request body must be a JSON object");
    return doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw ServiceError(400, std::string("invalid JSON: ") + e.what());
  }
}

inline Vertex vertex_field(const nlohmann::json& body) {
  if (!body.contains("vertex") || !body.at("vertex").is_number_integer()) {
    throw ServiceError(400, "body needs an integer \"vertex\"");
  }
  return body.at("vertex").get<int>();
}

/// Runs a handler and maps every failure onto a JSON error response.
template <typename F>
void handle(httplib::Response& res, F&& f) {
  try {
    send_json(res, 200, f());
  } catch (const ServiceError& e) {
    nlohmann::json err{{"error", e.what()}};
    if (!e.rule().empty()) err["rule"] = e.rule();
    send_json(res, e.status(), err);
  } catch (const RuleViolation& e) {
    send_json(res, 409, {{"error", e.what()}, {"rule", e.rule()}});
  } catch (const GraphError& e) {
    send_json(res, 400, {{"error", e.what()}});
  } catch (const std::exception& e) {
    send_json(res, 500, {{"error", e.what()}});
  }
}

}  // namespace detail

/// Routes under /api/v1:
///   POST /sessions                 {"graph": {...}, "role": "snake"|"placer", "engine": "auto"|policy}
///   GET  /sessions/{id}
///   POST /sessions/{id}/move       {"vertex": v}   human snake
///   POST /sessions/{id}/apple      {"vertex": v}   human placer (spawn first, then apples)
///   GET  /sessions/{id}/hint
///   GET  /sessions/{id}/trace
inline void register_routes(httplib::Server& server, GameService& service) {
  using detail::handle;
  const std::string p = kApiPrefix;

  server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Headers", "Content-Type"},
                              {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
  server.Options(p + "/.*", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  server.Get(p + "/health", [](const httplib::Request&, httplib::Response& res) {
    detail::send_json(res, 200, {{"ok", true}});
  });

  server.Post(p + "/sessions", [&service](const httplib::Request& req, httplib::Response& res) {
    handle(res, [&] {
      auto body = detail::parse_body(req);
      if (!body.contains("graph")) throw ServiceError(400, "body needs a \"graph\" document");
      SessionOptions opts;
      opts.human = parse_role(body.value("role", std::string("snake")));
      opts.engine = body.value("engine", std::string("auto"));
      return service.create(graph_from_json(body.at("graph")), opts);
    });
  });

  server.Get(p + R"(/sessions/([^/]+))", [&service](const httplib::Request& req, httplib::Response& res) {
    handle(res, [&] { return service.state(req.matches[1]); });
  });

  server.Post(p + R"(/sessions/([^/]+)/move)", [&service](const httplib::Request& req, httplib::Response& res) {
    handle(res, [&] { return service.move(req.matches[1], detail::vertex_field(detail::parse_body(req))); });
  });

  server.Post(p + R"(/sessions/([^/]+)/apple)", [&service](const httplib::Request& req, httplib::Response& res) {
    handle(res, [&] { return service.place(req.matches[1], detail::vertex_field(detail::parse_body(req))); });
  });

  server.Get(p + R"(/sessions/([^/]+)/hint)", [&service](const httplib::Request& req, httplib::Response& res) {
    handle(res, [&] { return service.hint(req.matches[1]); });
  });

  server.Get(p + R"(/sessions/([^/]+)/trace)", [&service](const httplib::Request& req, httplib::Response& res) {
    handle(res, [&] { return nlohmann::json(service.trace(req.matches[1])); });
  });
}

}  // namespace snakegraph
