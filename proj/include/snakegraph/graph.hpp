#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace snakegraph {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

/// Malformed graph input or a violated construction rule.
class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An exhaustive search was refused because the instance exceeds its ceiling.
class CeilingExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require_size(int n, int ceiling, const char* what) {
  if (n > ceiling) {
    throw CeilingExceeded(std::string(what) + ": instance has " + std::to_string(n) +
                          " vertices, limit is " + std::to_string(ceiling));
  }
}

struct Coord {
  int x = 0;
  int y = 0;
  auto operator<=>(const Coord&) const = default;
};

/// Immutable simple undirected graph on vertices 0..n-1.
///
/// Neighbor lists are sorted. Grid graphs additionally carry one integer
/// coordinate per vertex; for those, uv is an edge iff the coordinates are at
/// unit distance.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph from an edge list. Rejects self-loops, parallel edges and
  /// out-of-range endpoints.
  static Graph from_edges(int n, const std::vector<Edge>& edges) {
    if (n < 0) throw GraphError("vertex count must be non-negative");
    Graph g;
    g.n_ = n;
    g.adj_.assign(static_cast<std::size_t>(n), {});
    g.matrix_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
    for (auto [u, v] : edges) {
      if (u < 0 || v < 0 || u >= n || v >= n) {
        throw GraphError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                         ") has an endpoint outside 0.." + std::to_string(n - 1));
      }
      if (u == v) throw GraphError("self-loop at vertex " + std::to_string(u));
      if (g.adjacent(u, v)) {
        throw GraphError("parallel edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
      }
      g.matrix_[g.index(u, v)] = 1;
      g.matrix_[g.index(v, u)] = 1;
      g.adj_[u].push_back(v);
      g.adj_[v].push_back(u);
      ++g.m_;
    }
    for (auto& list : g.adj_) std::sort(list.begin(), list.end());
    return g;
  }

  /// Induced subgraph of the integer grid on the given cells.
  static Graph from_coords(const std::vector<Coord>& coords) {
    std::map<Coord, Vertex> index;
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (!index.emplace(coords[i], static_cast<Vertex>(i)).second) {
        throw GraphError("duplicate coordinate (" + std::to_string(coords[i].x) + "," +
                         std::to_string(coords[i].y) + ")");
      }
    }
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < coords.size(); ++i) {
      for (Coord step : {Coord{1, 0}, Coord{0, 1}}) {
        auto it = index.find(Coord{coords[i].x + step.x, coords[i].y + step.y});
        if (it != index.end()) edges.emplace_back(static_cast<Vertex>(i), it->second);
      }
    }
    Graph g = from_edges(static_cast<int>(coords.size()), edges);
    g.coords_ = coords;
    return g;
  }

  int order() const { return n_; }
  int size() const { return m_; }

  bool adjacent(Vertex u, Vertex v) const { return matrix_[index(u, v)] != 0; }
  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[static_cast<std::size_t>(v)]; }
  int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }
  bool contains(Vertex v) const { return v >= 0 && v < n_; }

  int min_degree() const {
    int best = n_ == 0 ? 0 : degree(0);
    for (Vertex v = 1; v < n_; ++v) best = std::min(best, degree(v));
    return best;
  }

  /// Neighbor set as a bit mask; only valid for graphs with at most 64 vertices.
  std::uint64_t neighbor_mask(Vertex v) const {
    std::uint64_t mask = 0;
    for (Vertex w : neighbors(v)) mask |= std::uint64_t{1} << w;
    return mask;
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(static_cast<std::size_t>(m_));
    for (Vertex u = 0; u < n_; ++u) {
      for (Vertex v : adj_[u]) {
        if (u < v) out.emplace_back(u, v);
      }
    }
    return out;
  }

  bool has_coords() const { return coords_.has_value(); }
  const std::optional<std::vector<Coord>>& coords() const { return coords_; }
  Coord coord(Vertex v) const { return coords_.value().at(static_cast<std::size_t>(v)); }

  std::optional<Vertex> vertex_at(Coord c) const {
    if (!coords_) return std::nullopt;
    auto it = std::find(coords_->begin(), coords_->end(), c);
    if (it == coords_->end()) return std::nullopt;
    return static_cast<Vertex>(it - coords_->begin());
  }

  bool is_connected() const {
    if (n_ == 0) return true;
    std::vector<char> seen(static_cast<std::size_t>(n_), 0);
    std::vector<Vertex> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      Vertex u = stack.back();
      stack.pop_back();
      for (Vertex w : adj_[u]) {
        if (!seen[w]) {
          seen[w] = 1;
          ++count;
          stack.push_back(w);
        }
      }
    }
    return count == n_;
  }

  bool operator==(const Graph& other) const {
    return n_ == other.n_ && adj_ == other.adj_ && coords_ == other.coords_;
  }

 private:
  std::size_t index(Vertex u, Vertex v) const {
    return static_cast<std::size_t>(u) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(v);
  }

  int n_ = 0;
  int m_ = 0;
  std::vector<std::vector<Vertex>> adj_;
  std::vector<char> matrix_;
  std::optional<std::vector<Coord>> coords_;
};

/// A subgraph together with the parent id of each of its vertices.
struct Subgraph {
  Graph graph;
  std::vector<Vertex> to_parent;
};

inline Subgraph induced_subgraph(const Graph& g, std::vector<Vertex> keep) {
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  std::vector<int> local(static_cast<std::size_t>(g.order()), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) local[keep[i]] = static_cast<int>(i);
  std::vector<Edge> edges;
  for (auto [u, v] : g.edges()) {
    if (local[u] >= 0 && local[v] >= 0) edges.emplace_back(local[u], local[v]);
  }
  Subgraph sub{Graph::from_edges(static_cast<int>(keep.size()), edges), keep};
  if (g.has_coords()) {
    std::vector<Coord> coords;
    for (Vertex v : keep) coords.push_back(g.coord(v));
    sub.graph = Graph::from_coords(coords);
  }
  return sub;
}

/// True iff every pair of the given vertices is adjacent.
inline bool is_clique(const Graph& g, const std::vector<Vertex>& vs) {
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      if (!g.adjacent(vs[i], vs[j])) return false;
    }
  }
  return true;
}

inline bool is_complete(const Graph& g) {
  return g.size() == g.order() * (g.order() - 1) / 2;
}

/// Breadth-first distances from `source`; unreachable vertices get -1.
inline std::vector<int> bfs_distances(const Graph& g, Vertex source) {
  std::vector<int> dist(static_cast<std::size_t>(g.order()), -1);
  std::queue<Vertex> queue;
  dist[source] = 0;
  queue.push(source);
  while (!queue.empty()) {
    Vertex u = queue.front();
    queue.pop();
    for (Vertex w : g.neighbors(u)) {
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        queue.push(w);
      }
    }
  }
  return dist;
}

// ---------------------------------------------------------------------------
// Constructors

inline Graph cycle_graph(int n) {
  if (n < 3) throw GraphError("a cycle needs at least 3 vertices");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return Graph::from_edges(n, edges);
}

inline Graph path_graph(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph::from_edges(n, edges);
}

inline Graph complete_graph(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  }
  return Graph::from_edges(n, edges);
}

inline Graph complete_bipartite(int a, int b) {
  std::vector<Edge> edges;
  for (int i = 0; i < a; ++i) {
    for (int j = 0; j < b; ++j) edges.emplace_back(i, a + j);
  }
  return Graph::from_edges(a + b, edges);
}

inline Graph star_graph(int leaves) { return complete_bipartite(1, leaves); }

/// Two cliques K_{a+1} and K_{b+1} glued at vertex 0.
inline Graph cliques_sharing_vertex(int a, int b) {
  std::vector<Edge> edges;
  auto clique = [&](int first, int count) {
    std::vector<Vertex> vs{0};
    for (int i = 0; i < count; ++i) vs.push_back(first + i);
    for (std::size_t i = 0; i < vs.size(); ++i) {
      for (std::size_t j = i + 1; j < vs.size(); ++j) edges.emplace_back(vs[i], vs[j]);
    }
  };
  clique(1, a);
  clique(1 + a, b);
  return Graph::from_edges(1 + a + b, edges);
}

/// Two triangles sharing vertex 0.
inline Graph bowtie() { return cliques_sharing_vertex(2, 2); }

/// Theta graph: junctions 0 and 1 joined by three internally disjoint paths of
/// lengths p, q and r. Internal vertices are numbered path by path.
inline Graph build_theta(int p, int q, int r) {
  const int lengths[3] = {p, q, r};
  int zeros = 0;
  int ones = 0;
  for (int len : lengths) {
    if (len < 0) throw GraphError("theta path lengths must be non-negative");
    zeros += len == 0;
    ones += len == 1;
  }
  if (zeros > 0) {
    throw GraphError("theta with a zero-length path identifies the junctions; not a simple game graph");
  }
  if (ones > 1) throw GraphError("theta with two paths of length 1 has a parallel edge");
  std::vector<Edge> edges;
  int next = 2;
  for (int len : lengths) {
    Vertex prev = 0;
    for (int step = 1; step < len; ++step) {
      edges.emplace_back(prev, next);
      prev = next++;
    }
    edges.emplace_back(prev, 1);
  }
  if (next < 3) throw GraphError("theta graph must have at least 3 vertices");
  return Graph::from_edges(next, edges);
}

/// rows x cols block of the integer grid; vertex id = y * cols + x.
inline Graph rectangular_grid(int rows, int cols) {
  if (rows <= 0 || cols <= 0) throw GraphError("grid dimensions must be positive");
  std::vector<Coord> coords;
  for (int y = 0; y < rows; ++y) {
    for (int x = 0; x < cols; ++x) coords.push_back({x, y});
  }
  return Graph::from_coords(coords);
}

inline Graph grid_from_coords(const std::vector<Coord>& coords) { return Graph::from_coords(coords); }

}  // namespace snakegraph
