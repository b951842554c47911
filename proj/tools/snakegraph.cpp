// snakegraph: command-line front end.
//
// Exit codes: 0 success, 2 input error, 3 search ceiling exceeded,
// 4 a check did not hold (cross-check disagreement, invalid policy, failed
// gadget report, or a solve verdict other than the one --expect asked for).

#include <CLI11.hpp>
#include <httplib.h>
#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>

#include <snakegraph/http_server.hpp>
#include <snakegraph/snakegraph.hpp>

namespace sg = snakegraph;
using nlohmann::ordered_json;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitCeiling = 3;
constexpr int kExitCheck = 4;
constexpr int kCacheVersion = 1;

void print(const ordered_json& doc) { std::cout << doc.dump(2) << "\n"; }

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

ordered_json solve_json(const sg::WinnableResult& r, bool timing) {
  ordered_json doc;
  doc["winnable"] = r.winnable;
  doc["witness"] = r.witness ? ordered_json{{"a0", r.witness->first}, {"a1", r.witness->second}} : ordered_json(nullptr);
  doc["node_count"] = r.node_count;
  if (timing) doc["elapsed_ms"] = r.elapsed_ms;
  return doc;
}

// Cache entries live in <dir>/<hash>.json, keyed by the canonical text of
// the graph so that formatting differences in the input do not matter.
ordered_json cached_solve(const sg::Graph& g, const sg::SolverLimits& limits, const std::string& dir, bool timing) {
  namespace fs = std::filesystem;
  const std::string canonical = sg::to_json_text(g);
  char name[32];
  std::snprintf(name, sizeof name, "%016llx", static_cast<unsigned long long>(fnv1a(canonical)));
  const fs::path path = fs::path(dir) / (std::string(name) + ".json");
  if (!dir.empty() && fs::exists(path)) {
    try {
      auto entry = nlohmann::json::parse(sg::read_file(path.string()));
      if (entry.value("version", 0) == kCacheVersion && entry.value("graph", "") == canonical) {
        ordered_json doc = entry.at("result");
        doc["cached"] = true;
        return doc;
      }
    } catch (const std::exception&) {
      // unreadable entries are recomputed and overwritten
    }
  }
  ordered_json doc = solve_json(sg::winnable(g, limits), timing);
  if (!dir.empty()) {
    fs::create_directories(dir);
    ordered_json entry{{"version", kCacheVersion}, {"graph", canonical}, {"result", doc}};
    entry["result"].erase("elapsed_ms");
    sg::write_file(path.string(), entry.dump(2) + "\n");
  }
  doc["cached"] = false;
  return doc;
}

sg::Gadget parse_gadget(const std::string& s) {
  if (s == "block9") return sg::Gadget::Block9;
  if (s == "candidate7") return sg::Gadget::Candidate7;
  throw sg::GraphError("unknown gadget '" + s + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Snake on graphs: solver, characterizations, strategies and reduction"};
  app.require_subcommand(1);

  std::string graph_path;
  std::size_t max_memo = sg::SolverLimits{}.max_memo_entries;
  bool timing = false;

  auto* solve = app.add_subcommand("solve", "decide snake-winnability exactly");
  std::string cache_dir, expect;
  solve->add_option("--graph", graph_path, "graph file (JSON or edge list)")->required();
  solve->add_option("--max-memo", max_memo, "solver memo ceiling");
  solve->add_option("--cache", cache_dir, "directory for cached verdicts");
  solve->add_option("--expect", expect, "winnable | not-winnable; exit 4 when the verdict differs")
      ->check(CLI::IsMember({"winnable", "not-winnable"}));
  solve->add_flag("--timing", timing, "include elapsed time");

  auto* classify = app.add_subcommand("classify", "apply the structural characterizations");
  bool cross_check = false;
  classify->add_option("--graph", graph_path)->required();
  classify->add_flag("--cross-check", cross_check, "compare a decided verdict with the solver");
  classify->add_option("--max-memo", max_memo);

  auto* reduce = app.add_subcommand("reduce", "attach the gadget to an even grid graph");
  std::string out_path, report_path, gadget_name = "block9";
  reduce->add_option("--in", graph_path, "grid graph with coordinates")->required();
  reduce->add_option("--out", out_path, "where to write G'");
  reduce->add_option("--report", report_path, "where to write the gadget verification report");
  reduce->add_option("--gadget", gadget_name)->check(CLI::IsMember({"block9", "candidate7"}));

  auto* check = app.add_subcommand("strategy-check", "validate a policy against an exhaustive adversary");
  std::string policy_name, role_name = "snake";
  std::size_t max_positions = sg::ValidationLimits{}.max_positions;
  check->add_option("--graph", graph_path)->required();
  check->add_option("--policy", policy_name, "policy name")->required();
  check->add_option("--role", role_name)->check(CLI::IsMember({"snake", "placer"}));
  check->add_option("--max-positions", max_positions);
  check->add_option("--max-memo", max_memo);

  auto* enumerate = app.add_subcommand("enumerate", "classify every connected graph on n vertices");
  int n = 0, min_girth = 0;
  bool bipartite = false, list = false;
  enumerate->add_option("--n", n)->required()->check(CLI::Range(1, 11));
  enumerate->add_option("--min-girth", min_girth);
  enumerate->add_flag("--bipartite", bipartite);
  enumerate->add_flag("--cross-check", cross_check, "solve each graph and compare with classify");
  enumerate->add_flag("--list", list, "include every graph in the output");
  enumerate->add_option("--max-memo", max_memo);

  auto* replay = app.add_subcommand("replay", "replay a game trace through the engine");
  std::string trace_path;
  replay->add_option("--trace", trace_path)->required();

  auto* serve = app.add_subcommand("play-serve", "serve the game API over HTTP");
  std::string host = "127.0.0.1";
  int port = 8080;
  serve->add_option("--host", host);
  serve->add_option("--port", port);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitInput;
  }

  const sg::SolverLimits limits{max_memo, 24};
  try {
    if (*solve) {
      const sg::Graph g = sg::load_graph(graph_path);
      sg::require_game_graph(g);
      ordered_json doc{{"graph", graph_path}, {"vertices", g.order()}, {"edges", g.size()}};
      doc.update(cached_solve(g, limits, cache_dir, timing));
      print(doc);
      if (!expect.empty() && doc["winnable"].get<bool>() != (expect == "winnable")) return kExitCheck;
      return 0;
    }

    if (*classify) {
      const sg::Graph g = sg::load_graph(graph_path);
      sg::require_game_graph(g);
      const auto c = sg::classify(g);
      ordered_json doc = sg::to_json(c);
      auto problem = sg::certificate_problem(g, c);
      doc["certificate_ok"] = problem.empty();
      if (!problem.empty()) doc["certificate_problem"] = problem;
      bool agrees = problem.empty();
      if (cross_check) {
        const bool w = sg::winnable(g, limits).winnable;
        doc["solver_winnable"] = w;
        if (c.verdict != sg::Verdict::Unknown) agrees = agrees && w == (c.verdict == sg::Verdict::Winnable);
        doc["agrees"] = agrees;
      }
      print(doc);
      return agrees ? 0 : kExitCheck;
    }

    if (*reduce) {
      const sg::Graph g = sg::load_graph(graph_path);
      auto r = sg::reduce(g, parse_gadget(gadget_name));
      ordered_json doc;
      doc["input_vertices"] = g.order();
      if (r.not_hamiltonian_short_circuit) {
        doc["result"] = "NotHamiltonian";
        doc["reason"] = "the rightmost top-row vertex has no left neighbour, so its degree is at most 1";
        print(doc);
        return 0;
      }
      doc["result"] = "Reduced";
      doc["output_vertices"] = r.gprime->order();
      doc["attachment"] = sg::to_json(*r.attachment);
      if (!out_path.empty()) sg::save_graph(out_path, *r.gprime);
      bool ok = true;
      if (!report_path.empty()) {
        auto report = sg::verify_gadget(g, *r.gprime, *r.attachment);
        ok = report.ok();
        sg::write_file(report_path, sg::to_json(report).dump(2) + "\n");
        doc["report_ok"] = ok;
      }
      print(doc);
      return ok ? 0 : kExitCheck;
    }

    if (*check) {
      const sg::Graph g = sg::load_graph(graph_path);
      sg::require_game_graph(g);
      std::string why;
      sg::ValidationReport report;
      const sg::ValidationLimits vlimits{max_positions};
      if (role_name == "snake") {
        auto p = sg::make_snake_policy(g, policy_name, &why);
        if (!p) throw sg::GraphError("policy '" + policy_name + "' does not apply: " + why);
        report = sg::validate_snake_policy(g, *p, vlimits);
      } else {
        auto p = sg::make_placer_policy(g, policy_name, &why);
        if (!p) throw sg::GraphError("policy '" + policy_name + "' does not apply: " + why);
        report = sg::validate_placer_policy(g, *p, vlimits);
      }
      ordered_json doc{{"policy", policy_name}, {"role", role_name}, {"valid", report.valid},
                       {"leaves", report.leaves}, {"depth", report.depth}};
      if (!report.failure.empty()) doc["failure"] = report.failure;
      bool agrees = report.valid;
      try {
        const bool w = sg::winnable(g, limits).winnable;
        doc["solver_winnable"] = w;
        if (report.valid) agrees = w == (role_name == "snake");
        doc["agrees"] = agrees;
      } catch (const sg::CeilingExceeded&) {
        doc["solver_winnable"] = nullptr;
      }
      print(doc);
      return agrees ? 0 : kExitCheck;
    }

    if (*enumerate) {
      sg::EnumerationOptions opts;
      opts.min_girth = min_girth;
      opts.bipartite_only = bipartite;
      std::map<std::string, int> by_reason;
      int decided = 0, winnable_count = 0, disagreements = 0, total = 0;
      ordered_json graphs = ordered_json::array();
      ordered_json disagreeing = ordered_json::array();
      sg::for_each_connected_graph(n, [&](const sg::Graph& g) {
        ++total;
        const auto c = sg::classify(g);
        by_reason[sg::to_string(c.reason)]++;
        if (c.verdict != sg::Verdict::Unknown) ++decided;
        ordered_json item{{"edges", sg::to_json(g)["edges"]}, {"verdict", sg::to_string(c.verdict)},
                          {"reason", sg::to_string(c.reason)}};
        if (cross_check && g.order() >= 3) {
          const bool w = sg::winnable(g, limits).winnable;
          winnable_count += w;
          item["solver_winnable"] = w;
          if (c.verdict != sg::Verdict::Unknown && w != (c.verdict == sg::Verdict::Winnable)) {
            ++disagreements;
            disagreeing.push_back(item);
          }
        }
        if (list) graphs.push_back(item);
      }, opts);
      ordered_json doc{{"n", n}, {"graphs", total}, {"decided_by_classify", decided}};
      doc["by_reason"] = by_reason;
      if (cross_check) {
        doc["solver_winnable"] = winnable_count;
        doc["disagreements"] = disagreements;
        if (disagreements) doc["disagreeing"] = disagreeing;
      }
      if (list) doc["list"] = graphs;
      print(doc);
      return disagreements == 0 ? 0 : kExitCheck;
    }

    if (*replay) {
      const std::string dir = std::filesystem::path(trace_path).parent_path().string();
      auto doc = nlohmann::json::parse(sg::read_file(trace_path));
      const sg::Game game = sg::replay_trace(doc, dir.empty() ? "." : dir);
      print(ordered_json{{"status", sg::to_string(game.status())},
                         {"length", game.state().length()},
                         {"events", game.events().size()}});
      return 0;
    }

    if (*serve) {
      sg::GameService service;
      httplib::Server server;
      sg::register_routes(server, service);
      std::cerr << "listening on http://" << host << ":" << port << sg::kApiPrefix << "\n";
      if (!server.listen(host, port)) {
        std::cerr << "error: cannot listen on " << host << ":" << port << "\n";
        return kExitInput;
      }
      return 0;
    }
  } catch (const sg::CeilingExceeded& e) {
    std::cerr << "error: ceiling exceeded: " << e.what() << "\n";
    return kExitCeiling;
  } catch (const sg::GraphError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const sg::RuleViolation& e) {
    std::cerr << "error: " << e.rule() << ": " << e.what() << "\n";
    return kExitInput;
  } catch (const sg::TraceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheck;
  } catch (const sg::PolicyError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << "\n";
    return kExitInput;
  }
  return 0;
}
