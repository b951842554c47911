#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "algorithms.hpp"
#include "graph.hpp"

namespace snakegraph {

enum class Verdict { Winnable, NotWinnable, Unknown };

enum class Reason {
  None,
  DegreeOne,
  BipartiteImbalance,
  ThreePlusComponents,
  CutVertexComplete,
  CutVertexObstruction,
  ThetaOddBipartite,
  OddBipartiteNoTheta,
  GirthGT6NonHam,
  HamiltonianCycle,
  NoHamPath,
  ThetaSpanning,
};

/// Why a cut-vertex decomposition fails the two-complete-halves shape.
enum class CutObstruction { None, ThreePlusComponents, DegreeOne, SizeMismatch, Incomplete };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Winnable: return "Winnable";
    case Verdict::NotWinnable: return "NotWinnable";
    case Verdict::Unknown: return "Unknown";
  }
  return "?";
}

inline const char* to_string(Reason r) {
  switch (r) {
    case Reason::None: return "None";
    case Reason::DegreeOne: return "DegreeOne";
    case Reason::BipartiteImbalance: return "BipartiteImbalance";
    case Reason::ThreePlusComponents: return "ThreePlusComponents";
    case Reason::CutVertexComplete: return "CutVertexComplete";
    case Reason::CutVertexObstruction: return "CutVertexObstruction";
    case Reason::ThetaOddBipartite: return "ThetaOddBipartite";
    case Reason::OddBipartiteNoTheta: return "OddBipartiteNoTheta";
    case Reason::GirthGT6NonHam: return "GirthGT6NonHam";
    case Reason::HamiltonianCycle: return "HamiltonianCycle";
    case Reason::NoHamPath: return "NoHamPath";
    case Reason::ThetaSpanning: return "ThetaSpanning";
  }
  return "?";
}

inline const char* to_string(CutObstruction o) {
  switch (o) {
    case CutObstruction::None: return "None";
    case CutObstruction::ThreePlusComponents: return "ThreePlusComponents";
    case CutObstruction::DegreeOne: return "DegreeOne";
    case CutObstruction::SizeMismatch: return "SizeMismatch";
    case CutObstruction::Incomplete: return "Incomplete";
  }
  return "?";
}

struct CutDecomposition {
  Vertex cut = -1;
  std::vector<std::vector<Vertex>> components;  ///< components of G - cut, each sorted
  CutObstruction obstruction = CutObstruction::None;
};

/// Verdict, the rule that produced it, and the matching witness. Exactly the
/// field belonging to `reason` is set; Unknown carries nothing.
struct Classification {
  Verdict verdict = Verdict::Unknown;
  Reason reason = Reason::None;
  std::optional<std::vector<Vertex>> cycle;
  std::optional<ThetaCertificate> theta;
  std::optional<CutDecomposition> cut;
  std::optional<Bipartition> parts;
  std::optional<Vertex> vertex;
  std::optional<int> girth;
};

/// Decomposition at cut vertex `v`, with the obstruction (if any) to the
/// winnable shape: two components of equal size >= 2 whose unions with v are
/// both complete.
inline CutDecomposition cut_decomposition(const Graph& g, Vertex v) {
  CutDecomposition d;
  d.cut = v;
  d.components = components_after_removal(g, v);
  for (auto& c : d.components) std::sort(c.begin(), c.end());
  if (d.components.size() < 2) throw GraphError(std::to_string(v) + " is not a cut vertex");
  if (d.components.size() >= 3) {
    d.obstruction = CutObstruction::ThreePlusComponents;
    return d;
  }
  const auto& a = d.components[0];
  const auto& b = d.components[1];
  if (a.size() == 1 || b.size() == 1) {
    d.obstruction = CutObstruction::DegreeOne;
  } else if (a.size() != b.size()) {
    d.obstruction = CutObstruction::SizeMismatch;
  } else {
    auto with_cut = [&](std::vector<Vertex> c) {
      c.push_back(v);
      return c;
    };
    if (!is_clique(g, with_cut(a)) || !is_clique(g, with_cut(b))) d.obstruction = CutObstruction::Incomplete;
  }
  return d;
}

/// Decides a graph with a cut vertex, using its smallest cut vertex.
inline Classification decide_cut_vertex(const Graph& g) {
  const auto cuts = cut_vertices(g);
  if (cuts.empty()) throw GraphError("graph has no cut vertex");
  Classification c;
  c.cut = cut_decomposition(g, cuts.front());
  switch (c.cut->obstruction) {
    case CutObstruction::None:
      c.verdict = Verdict::Winnable;
      c.reason = Reason::CutVertexComplete;
      break;
    case CutObstruction::ThreePlusComponents:
      c.verdict = Verdict::NotWinnable;
      c.reason = Reason::ThreePlusComponents;
      break;
    case CutObstruction::DegreeOne:
    case CutObstruction::SizeMismatch:
    case CutObstruction::Incomplete:
      c.verdict = Verdict::NotWinnable;
      c.reason = Reason::CutVertexObstruction;
      break;
  }
  return c;
}

/// Decides an odd-sized bipartite graph by spanning-theta search.
inline Classification decide_odd_bipartite(const Graph& g, const SearchLimits& limits = {}) {
  auto parts = bipartition(g);
  if (!parts) throw GraphError("decide_odd_bipartite needs a bipartite graph");
  if (g.order() % 2 == 0) throw GraphError("decide_odd_bipartite needs an odd number of vertices");
  Classification c;
  if (g.order() >= 5) c.theta = find_theta_n322(g, limits);
  if (c.theta) {
    c.verdict = Verdict::Winnable;
    c.reason = Reason::ThetaOddBipartite;
  } else {
    c.verdict = Verdict::NotWinnable;
    c.reason = Reason::OddBipartiteNoTheta;
    c.parts = parts;
  }
  return c;
}

/// Applies the characterizations in a fixed order and returns the first
/// decisive one:
///   1. a degree-1 vertex
///   2. bipartite with part sizes differing by more than 1
///   3. a cut vertex (decided completely)
///   4. odd-sized bipartite (decided completely)
///   5. girth >= 7 and no Hamiltonian cycle
///   6. a Hamiltonian cycle
///   7. no Hamiltonian path
///   8. a spanning theta(n-3,2,2)
/// Anything left is Unknown.
inline Classification classify(const Graph& g, const SearchLimits& limits = {}) {
  if (g.order() < 3 || !g.is_connected()) throw GraphError("classify needs a connected graph with at least 3 vertices");
  Classification c;
  for (Vertex v = 0; v < g.order(); ++v) {
    if (g.degree(v) == 1) {
      c.verdict = Verdict::NotWinnable;
      c.reason = Reason::DegreeOne;
      c.vertex = v;
      return c;
    }
  }
  const auto parts = bipartition(g);
  if (parts && std::abs(static_cast<int>(parts->x.size()) - static_cast<int>(parts->y.size())) > 1) {
    c.verdict = Verdict::NotWinnable;
    c.reason = Reason::BipartiteImbalance;
    c.parts = parts;
    return c;
  }
  if (!cut_vertices(g).empty()) return decide_cut_vertex(g);
  if (parts && g.order() % 2 == 1) return decide_odd_bipartite(g, limits);
  const auto cycle = hamiltonian_cycle(g, limits);
  const auto gi = girth(g);
  if (!cycle && gi && *gi >= 7) {
    c.verdict = Verdict::NotWinnable;
    c.reason = Reason::GirthGT6NonHam;
    c.girth = gi;
    return c;
  }
  if (cycle) {
    c.verdict = Verdict::Winnable;
    c.reason = Reason::HamiltonianCycle;
    c.cycle = cycle;
    return c;
  }
  if (!has_hamiltonian_path(g, limits)) {
    c.verdict = Verdict::NotWinnable;
    c.reason = Reason::NoHamPath;
    return c;
  }
  if (g.order() >= 5) {
    if (auto theta = find_theta_n322(g, limits)) {
      c.verdict = Verdict::Winnable;
      c.reason = Reason::ThetaSpanning;
      c.theta = theta;
      return c;
    }
  }
  return c;
}

/// Re-checks a classification's witness from scratch; returns an empty string
/// when it holds. Negative search results (NoHamPath, OddBipartiteNoTheta,
/// the non-Hamiltonicity in GirthGT6NonHam) are re-run rather than checked.
inline std::string certificate_problem(const Graph& g, const Classification& c, const SearchLimits& limits = {}) {
  auto check_parts = [&]() -> std::string {
    if (!c.parts) return "missing bipartition";
    std::vector<int> side(static_cast<std::size_t>(g.order()), -1);
    for (Vertex v : c.parts->x) side[v] = 0;
    for (Vertex v : c.parts->y) side[v] = 1;
    for (int s : side) {
      if (s < 0) return "bipartition misses a vertex";
    }
    for (auto [u, v] : g.edges()) {
      if (side[u] == side[v]) return "edge inside one part";
    }
    return {};
  };
  switch (c.reason) {
    case Reason::None:
      return c.verdict == Verdict::Unknown ? "" : "decisive verdict without a reason";
    case Reason::DegreeOne:
      if (!c.vertex || !g.contains(*c.vertex) || g.degree(*c.vertex) != 1) return "vertex does not have degree 1";
      return {};
    case Reason::BipartiteImbalance: {
      auto p = check_parts();
      if (!p.empty()) return p;
      if (std::abs(static_cast<int>(c.parts->x.size()) - static_cast<int>(c.parts->y.size())) <= 1) {
        return "parts are balanced";
      }
      return {};
    }
    case Reason::ThreePlusComponents:
    case Reason::CutVertexComplete:
    case Reason::CutVertexObstruction: {
      if (!c.cut) return "missing cut decomposition";
      auto fresh = cut_decomposition(g, c.cut->cut);
      if (fresh.components != c.cut->components) return "components differ from G - v";
      if (fresh.obstruction != c.cut->obstruction) return "obstruction does not match";
      const bool ok = c.reason == Reason::CutVertexComplete
                          ? fresh.obstruction == CutObstruction::None
                          : c.reason == Reason::ThreePlusComponents
                                ? fresh.obstruction == CutObstruction::ThreePlusComponents
                                : fresh.obstruction != CutObstruction::None &&
                                      fresh.obstruction != CutObstruction::ThreePlusComponents;
      return ok ? "" : "reason does not match the decomposition";
    }
    case Reason::ThetaOddBipartite:
    case Reason::ThetaSpanning:
      if (!c.theta) return "missing theta certificate";
      return theta_certificate_problem(g, *c.theta);
    case Reason::OddBipartiteNoTheta: {
      auto p = check_parts();
      if (!p.empty()) return p;
      if (g.order() % 2 == 0) return "graph is even-sized";
      if (g.order() >= 5 && find_theta_n322(g, limits)) return "a spanning theta exists";
      return {};
    }
    case Reason::GirthGT6NonHam: {
      auto gi = girth(g);
      if (!gi || *gi < 7 || !c.girth || *c.girth != *gi) return "girth claim does not hold";
      if (hamiltonian_cycle(g, limits)) return "graph is Hamiltonian";
      return {};
    }
    case Reason::HamiltonianCycle: {
      if (!c.cycle || static_cast<int>(c.cycle->size()) != g.order()) return "cycle does not cover the graph";
      std::vector<char> seen(static_cast<std::size_t>(g.order()), 0);
      for (std::size_t i = 0; i < c.cycle->size(); ++i) {
        Vertex a = (*c.cycle)[i];
        Vertex b = (*c.cycle)[(i + 1) % c.cycle->size()];
        if (!g.contains(a) || seen[a]) return "cycle repeats or leaves the graph";
        seen[a] = 1;
        if (!g.adjacent(a, b)) return "cycle uses a non-edge";
      }
      return {};
    }
    case Reason::NoHamPath:
      return has_hamiltonian_path(g, limits) ? "a Hamiltonian path exists" : "";
  }
  return "unknown reason";
}

inline nlohmann::json to_json(const ThetaCertificate& t) {
  return {{"u", t.u}, {"v", t.v}, {"x", t.x}, {"y", t.y}, {"long_path", t.long_path}};
}

inline nlohmann::json to_json(const Classification& c) {
  nlohmann::json doc;
  doc["verdict"] = to_string(c.verdict);
  doc["reason"] = to_string(c.reason);
  nlohmann::json cert = nullptr;
  if (c.cycle) cert = {{"hamiltonian_cycle", *c.cycle}};
  if (c.theta) cert = {{"theta", to_json(*c.theta)}};
  if (c.cut) {
    cert = {{"cut_vertex", c.cut->cut},
            {"components", c.cut->components},
            {"obstruction", to_string(c.cut->obstruction)}};
  }
  if (c.parts) cert = {{"x", c.parts->x}, {"y", c.parts->y}};
  if (c.vertex) cert = {{"vertex", *c.vertex}};
  if (c.girth) cert = {{"girth", *c.girth}};
  doc["certificate"] = cert;
  return doc;
}

}  // namespace snakegraph
