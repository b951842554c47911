#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "graph.hpp"

namespace snakegraph {

/// Ceilings for exhaustive searches. Exceeding one raises CeilingExceeded.
struct SearchLimits {
  int hamiltonian_max_vertices = 24;
  int circumference_max_vertices = 16;
};

namespace detail {

inline void require_mask_size(const Graph& g, int ceiling, const char* what) {
  require_size(g.order(), std::min(ceiling, 64), what);
}

inline std::vector<std::uint64_t> masks(const Graph& g) {
  std::vector<std::uint64_t> out(static_cast<std::size_t>(g.order()));
  for (Vertex v = 0; v < g.order(); ++v) out[v] = g.neighbor_mask(v);
  return out;
}

inline int lowest(std::uint64_t mask) { return std::countr_zero(mask); }

/// Every vertex of `remaining` is reachable from `from` using only vertices of
/// `remaining`.
inline bool reaches_all(const std::vector<std::uint64_t>& adj, Vertex from, std::uint64_t remaining) {
  std::uint64_t seen = 0;
  std::uint64_t frontier = adj[from] & remaining;
  while (frontier) {
    seen |= frontier;
    std::uint64_t next = 0;
    for (std::uint64_t f = frontier; f; f &= f - 1) next |= adj[lowest(f)];
    frontier = next & remaining & ~seen;
  }
  return seen == remaining;
}

/// Backtracking Hamiltonian path over the vertex set `allowed`, starting at
/// `start`. When `target` is set the path must end there.
class HamPathSearch {
 public:
  HamPathSearch(const Graph& g, std::uint64_t allowed) : adj_(masks(g)), allowed_(allowed) {}

  std::optional<std::vector<Vertex>> run(Vertex start, std::optional<Vertex> target) {
    target_ = target;
    path_.assign(1, start);
    if (dfs(start, allowed_ & ~(std::uint64_t{1} << start))) return path_;
    return std::nullopt;
  }

 private:
  bool dfs(Vertex at, std::uint64_t remaining) {
    if (remaining == 0) return !target_ || at == *target_;
    if (target_) {
      const std::uint64_t t = std::uint64_t{1} << *target_;
      if (!(remaining & t)) return false;
      // The target must stay reachable and be entered last.
      if (remaining != t && std::popcount(adj_[*target_] & remaining) == 0) return false;
    }
    if (!reaches_all(adj_, at, remaining)) return false;
    for (std::uint64_t cand = adj_[at] & remaining; cand; cand &= cand - 1) {
      Vertex next = lowest(cand);
      if (target_ && next == *target_ && remaining != (std::uint64_t{1} << next)) continue;
      path_.push_back(next);
      if (dfs(next, remaining & ~(std::uint64_t{1} << next))) return true;
      path_.pop_back();
    }
    return false;
  }

  std::vector<std::uint64_t> adj_;
  std::uint64_t allowed_;
  std::optional<Vertex> target_;
  std::vector<Vertex> path_;
};

inline std::uint64_t all_vertices(const Graph& g) {
  return g.order() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << g.order()) - 1;
}

}  // namespace detail

/// Length of the shortest cycle; nullopt for forests.
inline std::optional<int> girth(const Graph& g) {
  std::optional<int> best;
  const int n = g.order();
  std::vector<int> dist(static_cast<std::size_t>(n));
  std::vector<Vertex> parent(static_cast<std::size_t>(n));
  std::vector<Vertex> queue;
  for (Vertex s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[s] = 0;
    parent[s] = -1;
    queue.assign(1, s);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      Vertex u = queue[head];
      for (Vertex w : g.neighbors(u)) {
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          parent[w] = u;
          queue.push_back(w);
        } else if (parent[u] != w) {
          int len = dist[u] + dist[w] + 1;
          if (!best || len < *best) best = len;
        }
      }
    }
  }
  return best;
}

/// Length of the longest simple cycle; 0 if the graph is acyclic.
inline int circumference(const Graph& g, const SearchLimits& limits = {}) {
  detail::require_mask_size(g, limits.circumference_max_vertices, "circumference");
  const auto adj = detail::masks(g);
  const int n = g.order();
  int best = 0;
  // Each cycle is enumerated from its smallest vertex.
  std::function<void(Vertex, Vertex, std::uint64_t, int)> extend = [&](Vertex start, Vertex at,
                                                                     std::uint64_t used, int len) {
    if (best == n) return;
    if (len >= 3 && (adj[at] >> start & 1)) best = std::max(best, len);
    for (std::uint64_t cand = adj[at] & ~used; cand; cand &= cand - 1) {
      Vertex next = detail::lowest(cand);
      if (next < start) continue;
      extend(start, next, used | (std::uint64_t{1} << next), len + 1);
    }
  };
  for (Vertex s = 0; s < n && best < n - s; ++s) extend(s, s, std::uint64_t{1} << s, 1);
  return best;
}

/// Articulation points in increasing order.
inline std::vector<Vertex> cut_vertices(const Graph& g) {
  const int n = g.order();
  std::vector<int> disc(static_cast<std::size_t>(n), -1);
  std::vector<int> low(static_cast<std::size_t>(n), 0);
  std::vector<char> is_cut(static_cast<std::size_t>(n), 0);
  int timer = 0;
  std::function<void(Vertex, Vertex)> dfs = [&](Vertex u, Vertex parent) {
    disc[u] = low[u] = timer++;
    int children = 0;
    for (Vertex w : g.neighbors(u)) {
      if (w == parent) continue;
      if (disc[w] >= 0) {
        low[u] = std::min(low[u], disc[w]);
      } else {
        ++children;
        dfs(w, u);
        low[u] = std::min(low[u], low[w]);
        if (parent >= 0 && low[w] >= disc[u]) is_cut[u] = 1;
      }
    }
    if (parent < 0 && children > 1) is_cut[u] = 1;
  };
  for (Vertex v = 0; v < n; ++v) {
    if (disc[v] < 0) dfs(v, -1);
  }
  std::vector<Vertex> out;
  for (Vertex v = 0; v < n; ++v) {
    if (is_cut[v]) out.push_back(v);
  }
  return out;
}

/// Connected components of G - v, each sorted, ordered by smallest member.
inline std::vector<std::vector<Vertex>> components_after_removal(const Graph& g, Vertex removed) {
  std::vector<int> comp(static_cast<std::size_t>(g.order()), -1);
  std::vector<std::vector<Vertex>> out;
  for (Vertex s = 0; s < g.order(); ++s) {
    if (s == removed || comp[s] >= 0) continue;
    std::vector<Vertex> members{s};
    comp[s] = static_cast<int>(out.size());
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (Vertex w : g.neighbors(members[i])) {
        if (w != removed && comp[w] < 0) {
          comp[w] = comp[s];
          members.push_back(w);
        }
      }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

struct Bipartition {
  std::vector<Vertex> x;  ///< side containing the smallest vertex of each component
  std::vector<Vertex> y;
};

/// A proper 2-coloring, or nullopt when the graph has an odd cycle.
inline std::optional<Bipartition> bipartition(const Graph& g) {
  std::vector<int> side(static_cast<std::size_t>(g.order()), -1);
  for (Vertex s = 0; s < g.order(); ++s) {
    if (side[s] >= 0) continue;
    side[s] = 0;
    std::vector<Vertex> stack{s};
    while (!stack.empty()) {
      Vertex u = stack.back();
      stack.pop_back();
      for (Vertex w : g.neighbors(u)) {
        if (side[w] < 0) {
          side[w] = 1 - side[u];
          stack.push_back(w);
        } else if (side[w] == side[u]) {
          return std::nullopt;
        }
      }
    }
  }
  Bipartition parts;
  for (Vertex v = 0; v < g.order(); ++v) (side[v] == 0 ? parts.x : parts.y).push_back(v);
  return parts;
}

/// Hamiltonian path from u to v, or nullopt if none exists.
inline std::optional<std::vector<Vertex>> hamiltonian_path_between(const Graph& g, Vertex u, Vertex v,
                                                                   const SearchLimits& limits = {}) {
  detail::require_mask_size(g, limits.hamiltonian_max_vertices, "hamiltonian path search");
  if (g.order() == 1) return u == v ? std::optional<std::vector<Vertex>>(std::vector<Vertex>{u}) : std::nullopt;
  if (u == v) return std::nullopt;
  return detail::HamPathSearch(g, detail::all_vertices(g)).run(u, v);
}

/// Some Hamiltonian path, or nullopt.
inline std::optional<std::vector<Vertex>> find_hamiltonian_path(const Graph& g, const SearchLimits& limits = {}) {
  detail::require_mask_size(g, limits.hamiltonian_max_vertices, "hamiltonian path search");
  if (g.order() == 0) return std::vector<Vertex>{};
  detail::HamPathSearch search(g, detail::all_vertices(g));
  for (Vertex s = 0; s < g.order(); ++s) {
    if (auto path = search.run(s, std::nullopt)) return path;
  }
  return std::nullopt;
}

inline bool has_hamiltonian_path(const Graph& g, const SearchLimits& limits = {}) {
  return find_hamiltonian_path(g, limits).has_value();
}

/// A Hamiltonian cycle as a vertex sequence starting at 0 (closing edge
/// implicit), or nullopt.
inline std::optional<std::vector<Vertex>> hamiltonian_cycle(const Graph& g, const SearchLimits& limits = {}) {
  detail::require_mask_size(g, limits.hamiltonian_max_vertices, "hamiltonian cycle search");
  const int n = g.order();
  if (n < 3 || g.min_degree() < 2) return std::nullopt;
  detail::HamPathSearch search(g, detail::all_vertices(g));
  const auto& nbrs = g.neighbors(0);
  // Close through the largest neighbor of 0 to break the direction symmetry.
  for (auto it = nbrs.rbegin(); it != nbrs.rend(); ++it) {
    if (auto path = search.run(0, *it)) return path;
  }
  return std::nullopt;
}

/// Witness of a spanning Θ(n-3,2,2): junctions u, v; middles x, y; and a
/// u-to-v path through every other vertex.
struct ThetaCertificate {
  Vertex u = -1;
  Vertex v = -1;
  Vertex x = -1;
  Vertex y = -1;
  std::vector<Vertex> long_path;

  bool operator==(const ThetaCertificate&) const = default;
};

/// Independent edge-by-edge check of a theta certificate. Returns an empty
/// string when valid, else the first violated condition.
inline std::string theta_certificate_problem(const Graph& g, const ThetaCertificate& c) {
  const int n = g.order();
  auto in_range = [&](Vertex w) { return w >= 0 && w < n; };
  if (!in_range(c.u) || !in_range(c.v) || !in_range(c.x) || !in_range(c.y)) return "vertex out of range";
  if (c.x == c.y) return "middles coincide";
  if (c.u == c.v) return "junctions coincide";
  for (Vertex m : {c.x, c.y}) {
    if (!g.adjacent(m, c.u) || !g.adjacent(m, c.v)) return "middle not adjacent to both junctions";
  }
  if (static_cast<int>(c.long_path.size()) != n - 2) return "long path does not have n-2 vertices";
  if (c.long_path.front() != c.u || c.long_path.back() != c.v) return "long path does not join the junctions";
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (std::size_t i = 0; i < c.long_path.size(); ++i) {
    Vertex w = c.long_path[i];
    if (!in_range(w)) return "long path vertex out of range";
    if (w == c.x || w == c.y) return "long path passes through a middle";
    if (seen[w]) return "long path repeats a vertex";
    seen[w] = 1;
    if (i > 0 && !g.adjacent(c.long_path[i - 1], w)) return "long path uses a non-edge";
  }
  return {};
}

/// Exhaustive search for a spanning Θ(n-3,2,2). Requires n >= 5.
inline std::optional<ThetaCertificate> find_theta_n322(const Graph& g, const SearchLimits& limits = {}) {
  const int n = g.order();
  if (n < 5) throw GraphError("spanning theta search needs at least 5 vertices");
  detail::require_mask_size(g, limits.hamiltonian_max_vertices, "theta search");
  const auto adj = detail::masks(g);
  const std::uint64_t all = detail::all_vertices(g);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      const std::uint64_t common = adj[u] & adj[v];
      if (std::popcount(common) < 2) continue;
      for (std::uint64_t a = common; a; a &= a - 1) {
        Vertex x = detail::lowest(a);
        for (std::uint64_t b = a & (a - 1); b; b &= b - 1) {
          Vertex y = detail::lowest(b);
          const std::uint64_t allowed = all & ~(std::uint64_t{1} << x) & ~(std::uint64_t{1} << y);
          detail::HamPathSearch search(g, allowed);
          if (auto path = search.run(u, v)) return ThetaCertificate{u, v, x, y, *path};
        }
      }
    }
  }
  return std::nullopt;
}

/// Simple cycles of length `len` through all vertices of `required`.
/// Exhaustive; intended for the small instances of gadget verification.
inline bool has_cycle_of_length_through(const Graph& g, int len, const std::vector<Vertex>& required,
                                        const SearchLimits& limits = {}) {
  detail::require_mask_size(g, limits.hamiltonian_max_vertices, "cycle search");
  if (len < 3 || len > g.order()) return false;
  const auto adj = detail::masks(g);
  std::uint64_t need = 0;
  for (Vertex r : required) need |= std::uint64_t{1} << r;
  Vertex start = required.empty() ? 0 : *std::min_element(required.begin(), required.end());
  std::function<bool(Vertex, std::uint64_t, int)> extend = [&](Vertex at, std::uint64_t used, int count) {
    if (count == len) return (adj[at] >> start & 1) && (used & need) == need;
    for (std::uint64_t cand = adj[at] & ~used; cand; cand &= cand - 1) {
      Vertex next = detail::lowest(cand);
      if (required.empty() && next < start) continue;
      if (extend(next, used | (std::uint64_t{1} << next), count + 1)) return true;
    }
    return false;
  };
  if (!required.empty()) return extend(start, std::uint64_t{1} << start, 1);
  for (start = 0; start < g.order(); ++start) {
    if (extend(start, std::uint64_t{1} << start, 1)) return true;
  }
  return false;
}

}  // namespace snakegraph
