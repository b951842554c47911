#pragma once

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "graph.hpp"

namespace snakegraph {

// Edge-list text format:
//
//   # n=<count>      optional header; needed for isolated vertices
//   u v              one edge per line
//
// Labels that are all non-negative integers are used as vertex ids. Any other
// labels are mapped to 0..n-1 in order of first appearance. Lines starting
// with '#' are comments apart from the n= header.

inline std::string to_edge_list(const Graph& g) {
  std::ostringstream out;
  out << "# n=" << g.order() << "\n";
  for (auto [u, v] : g.edges()) out << u << " " << v << "\n";
  return out.str();
}

inline Graph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int declared = -1;
  std::vector<std::pair<std::string, std::string>> raw;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      auto pos = line.find("n=", first);
      if (pos != std::string::npos) {
        try {
          declared = std::stoi(line.substr(pos + 2));
        } catch (const std::exception&) {
          throw GraphError("line " + std::to_string(line_no) + ": malformed n= header");
        }
      }
      continue;
    }
    std::istringstream fields(line);
    std::string a, b, extra;
    if (!(fields >> a >> b) || (fields >> extra)) {
      throw GraphError("line " + std::to_string(line_no) + ": expected exactly two vertex labels");
    }
    raw.emplace_back(a, b);
  }
  auto as_int = [](const std::string& s, int& out) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size() && out >= 0;
  };
  bool numeric = true;
  int max_label = -1;
  for (const auto& [a, b] : raw) {
    int x = 0, y = 0;
    if (!as_int(a, x) || !as_int(b, y)) {
      numeric = false;
      break;
    }
    max_label = std::max({max_label, x, y});
  }
  if (numeric && declared >= 0 && max_label >= declared) {
    throw GraphError("vertex " + std::to_string(max_label) + " exceeds the declared n=" + std::to_string(declared));
  }
  if (numeric) {
    std::vector<Edge> edges;
    for (const auto& [a, b] : raw) edges.emplace_back(std::stoi(a), std::stoi(b));
    return Graph::from_edges(declared >= 0 ? declared : max_label + 1, edges);
  }
  std::map<std::string, Vertex> ids;
  std::vector<Edge> edges;
  auto id_of = [&](const std::string& label) {
    auto [it, fresh] = ids.emplace(label, static_cast<Vertex>(ids.size()));
    return it->second;
  };
  for (const auto& [a, b] : raw) {
    Vertex u = id_of(a);
    edges.emplace_back(u, id_of(b));
  }
  const int n = static_cast<int>(ids.size());
  if (declared >= 0 && declared < n) {
    throw GraphError("n= header declares " + std::to_string(declared) + " vertices but " + std::to_string(n) +
                     " labels are used");
  }
  return Graph::from_edges(std::max(n, declared), edges);
}

// JSON format: {"vertices": n, "edges": [[u,v],...], "coords": [[x,y],...]}.
// "coords" is present only for grid graphs; when present, the edges must be
// exactly the unit-distance pairs.

inline nlohmann::json to_json(const Graph& g) {
  nlohmann::json doc;
  doc["vertices"] = g.order();
  doc["edges"] = nlohmann::json::array();
  for (auto [u, v] : g.edges()) doc["edges"].push_back({u, v});
  if (g.has_coords()) {
    doc["coords"] = nlohmann::json::array();
    for (Coord c : *g.coords()) doc["coords"].push_back({c.x, c.y});
  }
  return doc;
}

/// Deterministic text rendering of to_json: one key per line, arrays inline.
inline std::string to_json_text(const Graph& g) {
  const auto doc = to_json(g);
  std::string out = "{\n  \"vertices\": " + std::to_string(g.order()) + ",\n  \"edges\": " + doc["edges"].dump();
  if (g.has_coords()) out += ",\n  \"coords\": " + doc["coords"].dump();
  out += "\n}\n";
  return out;
}

inline Graph graph_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw GraphError("graph document must be a JSON object");
  try {
    if (doc.contains("coords")) {
      std::vector<Coord> coords;
      for (const auto& c : doc.at("coords")) {
        if (!c.is_array() || c.size() != 2) throw GraphError("each coordinate must be an [x, y] pair");
        coords.push_back({c.at(0).get<int>(), c.at(1).get<int>()});
      }
      Graph g = Graph::from_coords(coords);
      if (doc.contains("vertices") && doc.at("vertices").get<int>() != g.order()) {
        throw GraphError("vertex count does not match the number of coordinates");
      }
      if (doc.contains("edges")) {
        std::vector<Edge> given;
        for (const auto& e : doc.at("edges")) {
          Vertex u = e.at(0).get<int>();
          Vertex v = e.at(1).get<int>();
          given.emplace_back(std::min(u, v), std::max(u, v));
        }
        std::sort(given.begin(), given.end());
        if (given != g.edges()) throw GraphError("edges are not exactly the unit-distance coordinate pairs");
      }
      return g;
    }
    std::vector<Edge> edges;
    for (const auto& e : doc.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw GraphError("each edge must be a [u, v] pair");
      edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    }
    return Graph::from_edges(doc.at("vertices").get<int>(), edges);
  } catch (const nlohmann::json::exception& e) {
    throw GraphError(std::string("malformed graph document: ") + e.what());
  }
}

inline Graph parse_graph_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw GraphError(std::string("invalid JSON: ") + e.what());
  }
  return graph_from_json(doc);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw GraphError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw GraphError("cannot write " + path);
  out << text;
}

inline bool looks_like_json(const std::string& text) {
  auto first = text.find_first_not_of(" \t\r\n");
  return first != std::string::npos && text[first] == '{';
}

/// Loads either format; JSON is detected by content.
inline Graph load_graph(const std::string& path) {
  const std::string text = read_file(path);
  return looks_like_json(text) ? parse_graph_json(text) : parse_edge_list(text);
}

/// Saves as JSON when the path ends in ".json", else as an edge list.
inline void save_graph(const std::string& path, const Graph& g) {
  const bool json = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
  write_file(path, json ? to_json_text(g) : to_edge_list(g));
}

}  // namespace snakegraph
