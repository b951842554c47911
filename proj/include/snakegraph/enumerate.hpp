#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <tuple>
#include <vector>

#include "algorithms.hpp"
#include "graph.hpp"

namespace snakegraph {

namespace detail {

inline std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

/// Color refinement (1-WL). Colors are canonical: they depend only on the
/// isomorphism class, because each round renumbers the sorted signatures.
struct Refinement {
  std::vector<int> color;
  std::uint64_t invariant = 0;
};

inline Refinement refine(const Graph& g) {
  const int n = g.order();
  Refinement r;
  r.color.resize(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) r.color[v] = g.degree(v);
  int classes = -1;
  for (int round = 0; round <= n; ++round) {
    std::vector<std::vector<int>> sig(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) {
      sig[v].push_back(r.color[v]);
      std::vector<int> around;
      for (Vertex w : g.neighbors(v)) around.push_back(r.color[w]);
      std::sort(around.begin(), around.end());
      sig[v].insert(sig[v].end(), around.begin(), around.end());
    }
    std::vector<std::vector<int>> distinct = sig;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (const auto& s : distinct) {
      for (int c : s) r.invariant = mix(r.invariant, static_cast<std::uint64_t>(c));
      r.invariant = mix(r.invariant, 0xfeedULL);
    }
    for (Vertex v = 0; v < n; ++v) {
      r.color[v] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), sig[v]) - distinct.begin());
    }
    std::vector<int> counts(distinct.size(), 0);
    for (int c : r.color) ++counts[c];
    for (int c : counts) r.invariant = mix(r.invariant, static_cast<std::uint64_t>(c));
    if (static_cast<int>(distinct.size()) == classes) break;
    classes = static_cast<int>(distinct.size());
  }
  return r;
}

inline Graph disjoint_union(const Graph& a, const Graph& b) {
  std::vector<Edge> edges = a.edges();
  for (auto [u, v] : b.edges()) edges.emplace_back(u + a.order(), v + a.order());
  return Graph::from_edges(a.order() + b.order(), edges);
}

}  // namespace detail

/// Isomorphism-invariant hash; equal for isomorphic graphs.
inline std::uint64_t invariant_hash(const Graph& g) {
  std::uint64_t h = detail::refine(g).invariant;
  h = detail::mix(h, static_cast<std::uint64_t>(g.order()));
  return detail::mix(h, static_cast<std::uint64_t>(g.size()));
}

/// Exact isomorphism test: joint color refinement, then backtracking over
/// color-respecting vertex maps.
inline bool are_isomorphic(const Graph& a, const Graph& b) {
  if (a.order() != b.order() || a.size() != b.size()) return false;
  const int n = a.order();
  if (n == 0) return true;
  const auto joint = detail::refine(detail::disjoint_union(a, b));
  std::vector<int> ca(joint.color.begin(), joint.color.begin() + n);
  std::vector<int> cb(joint.color.begin() + n, joint.color.end());
  {
    auto sa = ca;
    auto sb = cb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
  }
  std::vector<int> class_size(static_cast<std::size_t>(2 * n), 0);
  for (int c : ca) ++class_size[c];
  // Map small classes first, then grow along edges so adjacency checks prune early.
  std::vector<Vertex> order;
  std::vector<char> placed(static_cast<std::size_t>(n), 0);
  while (static_cast<int>(order.size()) < n) {
    Vertex best = -1;
    auto key = [&](Vertex v) {
      int links = 0;
      for (Vertex w : a.neighbors(v)) links += placed[w];
      return std::tuple(-links, class_size[ca[v]], v);
    };
    for (Vertex v = 0; v < n; ++v) {
      if (!placed[v] && (best < 0 || key(v) < key(best))) best = v;
    }
    placed[best] = 1;
    order.push_back(best);
  }
  std::vector<Vertex> image(static_cast<std::size_t>(n), -1);
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  std::function<bool(std::size_t)> extend = [&](std::size_t depth) {
    if (depth == order.size()) return true;
    const Vertex v = order[depth];
    for (Vertex w = 0; w < n; ++w) {
      if (used[w] || cb[w] != ca[v] || b.degree(w) != a.degree(v)) continue;
      bool ok = true;
      for (std::size_t i = 0; i < depth && ok; ++i) {
        const Vertex p = order[i];
        ok = a.adjacent(v, p) == b.adjacent(w, image[p]);
      }
      if (!ok) continue;
      image[v] = w;
      used[w] = 1;
      if (extend(depth + 1)) return true;
      used[w] = 0;
    }
    image[v] = -1;
    return false;
  };
  return extend(0);
}

/// Restrictions for enumeration. Both are hereditary, so extending filtered
/// graphs one vertex at a time reaches every filtered graph.
struct EnumerationOptions {
  int min_girth = 0;          ///< keep graphs whose girth is at least this (forests always pass)
  bool bipartite_only = false;
  int max_vertices = 8;       ///< ceiling for unrestricted enumeration
  int max_vertices_sparse = 11;  ///< ceiling when min_girth >= 5
};

/// Isomorphism-free collection of graphs with exact deduplication.
class GraphCatalog {
 public:
  /// Inserts `g` unless an isomorphic graph is already present.
  bool insert(const Graph& g) {
    std::vector<int> degrees;
    for (Vertex v = 0; v < g.order(); ++v) degrees.push_back(g.degree(v));
    std::sort(degrees.begin(), degrees.end());
    auto& bucket = buckets_[{invariant_hash(g), degrees}];
    for (std::size_t idx : bucket) {
      if (are_isomorphic(graphs_[idx], g)) return false;
    }
    bucket.push_back(graphs_.size());
    graphs_.push_back(g);
    return true;
  }

  const std::vector<Graph>& graphs() const { return graphs_; }

 private:
  std::map<std::pair<std::uint64_t, std::vector<int>>, std::vector<std::size_t>> buckets_;
  std::vector<Graph> graphs_;
};

/// Every connected simple graph on n vertices, one representative per
/// isomorphism class, in a deterministic order.
inline std::vector<Graph> enumerate_connected_graphs(int n, const EnumerationOptions& opts = {}) {
  if (n < 1) throw GraphError("enumeration needs at least one vertex");
  const int ceiling = opts.min_girth >= 5 ? opts.max_vertices_sparse : opts.max_vertices;
  require_size(n, ceiling, "graph enumeration");
  auto keep = [&](const Graph& g) {
    if (opts.bipartite_only && !bipartition(g)) return false;
    if (opts.min_girth > 0) {
      auto gi = girth(g);
      if (gi && *gi < opts.min_girth) return false;
    }
    return true;
  };
  std::vector<Graph> level{Graph::from_edges(1, {})};
  for (int k = 2; k <= n; ++k) {
    GraphCatalog next;
    for (const Graph& h : level) {
      const auto base = h.edges();
      for (std::uint32_t subset = 1; subset < (1u << (k - 1)); ++subset) {
        auto edges = base;
        for (int i = 0; i < k - 1; ++i) {
          if (subset >> i & 1) edges.emplace_back(i, k - 1);
        }
        Graph g = Graph::from_edges(k, edges);
        if (keep(g)) next.insert(g);
      }
    }
    level = next.graphs();
  }
  return level;
}

/// Calls `visit` for each graph of enumerate_connected_graphs(n, opts).
inline void for_each_connected_graph(int n, const std::function<void(const Graph&)>& visit,
                                     const EnumerationOptions& opts = {}) {
  for (const Graph& g : enumerate_connected_graphs(n, opts)) visit(g);
}

}  // namespace snakegraph
