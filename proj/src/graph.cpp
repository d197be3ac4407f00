#include "twspin/graph.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <string>

#include "twspin/errors.hpp"

namespace twspin {

namespace {

// Vertices reachable from `start` when edge `skip` is removed (skip < 0: none).
std::vector<bool> reachable(const DualGraph& g, int start, int skip) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(g.num_vertices()));
  for (int e = 0; e < g.num_edges(); ++e) {
    if (e == skip) continue;
    const Edge& ed = g.edge(e);
    adj[static_cast<std::size_t>(ed.tail)].push_back(ed.head);
    adj[static_cast<std::size_t>(ed.head)].push_back(ed.tail);
  }
  std::vector<bool> seen(static_cast<std::size_t>(g.num_vertices()), false);
  std::vector<int> stack{start};
  seen[static_cast<std::size_t>(start)] = true;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[static_cast<std::size_t>(v)]) {
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = true;
        stack.push_back(w);
      }
    }
  }
  return seen;
}

}  // namespace

DualGraph::DualGraph(std::vector<Vertex> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  if (vertices_.empty()) throw Error(ErrorKind::InvalidGraph, "graph has no vertices");
  std::set<std::int64_t> markings;
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    if (vertices_[v].genus < 0) {
      throw Error(ErrorKind::InvalidGraph, "vertex " + std::to_string(v) + " has negative genus");
    }
    for (auto id : vertices_[v].legs) {
      if (!markings.insert(id).second) {
        throw Error(ErrorKind::InvalidGraph, "marking " + std::to_string(id) + " used twice");
      }
    }
  }
  const int n = static_cast<int>(vertices_.size());
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const Edge& ed = edges_[e];
    if (ed.tail < 0 || ed.tail >= n || ed.head < 0 || ed.head >= n) {
      throw Error(ErrorKind::BadIndex, "edge " + std::to_string(e) + " references a vertex outside 0.." +
                                           std::to_string(n - 1));
    }
    if (ed.stabilizer < 1) {
      throw Error(ErrorKind::InvalidGraph, "edge " + std::to_string(e) + " has stabilizer < 1");
    }
  }
  auto seen = reachable(*this, 0, -1);
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw Error(ErrorKind::DisconnectedGraph, "dual graph is not connected");
  }
}

int DualGraph::num_legs() const {
  int n = 0;
  for (const auto& v : vertices_) n += static_cast<int>(v.legs.size());
  return n;
}

int DualGraph::valence(int v) const {
  int d = 0;
  for (const auto& e : edges_) {
    if (e.tail == v) ++d;
    if (e.head == v) ++d;
  }
  return d;
}

std::vector<int> DualGraph::incident_edges(int v) const {
  std::vector<int> out;
  for (int e = 0; e < num_edges(); ++e) {
    if (edges_[static_cast<std::size_t>(e)].tail == v || edges_[static_cast<std::size_t>(e)].head == v) {
      out.push_back(e);
    }
  }
  return out;
}

DualGraph DualGraph::with_edge_flipped(int e) const {
  auto edges = edges_;
  auto& ed = edges.at(static_cast<std::size_t>(e));
  std::swap(ed.tail, ed.head);
  return DualGraph(vertices_, std::move(edges));
}

DualGraph DualGraph::with_stabilizers(std::span<const std::int64_t> stabilizers) const {
  if (stabilizers.size() != edges_.size()) {
    throw Error(ErrorKind::DimensionMismatch, "stabilizer list does not match edge count");
  }
  auto edges = edges_;
  for (std::size_t e = 0; e < edges.size(); ++e) edges[e].stabilizer = stabilizers[e];
  return DualGraph(vertices_, std::move(edges));
}

DualGraph DualGraph::without_edge(int e) const {
  auto edges = edges_;
  edges.erase(edges.begin() + e);
  return DualGraph(vertices_, std::move(edges));
}

DualGraph DualGraph::relabeled(std::span<const int> new_index) const {
  if (new_index.size() != vertices_.size()) {
    throw Error(ErrorKind::DimensionMismatch, "permutation size does not match vertex count");
  }
  std::vector<Vertex> vs(vertices_.size());
  for (std::size_t v = 0; v < vertices_.size(); ++v) vs[static_cast<std::size_t>(new_index[v])] = vertices_[v];
  auto es = edges_;
  for (auto& ed : es) {
    ed.tail = new_index[static_cast<std::size_t>(ed.tail)];
    ed.head = new_index[static_cast<std::size_t>(ed.head)];
  }
  return DualGraph(std::move(vs), std::move(es));
}

int betti_number(const DualGraph& g) { return 1 - g.num_vertices() + g.num_edges(); }

std::int64_t vertex_genus_sum(const DualGraph& g) {
  std::int64_t s = 0;
  for (const auto& v : g.vertices()) s += v.genus;
  return s;
}

std::int64_t genus(const DualGraph& g) { return betti_number(g) + vertex_genus_sum(g); }

bool all_rational(const DualGraph& g) {
  return std::all_of(g.vertices().begin(), g.vertices().end(), [](const Vertex& v) { return v.genus == 0; });
}

NodeType classify_node(const DualGraph& g, int e) {
  if (e < 0 || e >= g.num_edges()) throw Error(ErrorKind::BadIndex, "edge index out of range");
  const Edge& ed = g.edge(e);
  NodeType t;
  if (ed.is_loop()) return t;
  auto plus = reachable(g, ed.head, e);
  if (plus[static_cast<std::size_t>(ed.tail)]) return t;

  t.separating = true;
  std::int64_t plus_genus = 0, minus_genus = 0;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (plus[static_cast<std::size_t>(v)]) {
      t.plus_vertices.push_back(v);
      plus_genus += g.vertex(v).genus;
    } else {
      t.minus_vertices.push_back(v);
      minus_genus += g.vertex(v).genus;
    }
  }
  int plus_edges = 0, minus_edges = 0;
  for (int f = 0; f < g.num_edges(); ++f) {
    if (f == e) continue;
    if (plus[static_cast<std::size_t>(g.edge(f).tail)]) {
      t.plus_edges.push_back(f);
      ++plus_edges;
    } else {
      t.minus_edges.push_back(f);
      ++minus_edges;
    }
  }
  // Each side is connected, so its genus is b1(side) + sum of vertex genera.
  plus_genus += 1 - static_cast<std::int64_t>(t.plus_vertices.size()) + plus_edges;
  minus_genus += 1 - static_cast<std::int64_t>(t.minus_vertices.size()) + minus_edges;
  t.index = std::min(plus_genus, minus_genus);
  return t;
}

std::vector<bool> find_bridges(const DualGraph& g) {
  const auto n = static_cast<std::size_t>(g.num_vertices());
  std::vector<std::vector<std::pair<int, int>>> adj(n);  // (neighbor, edge)
  for (int e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    if (ed.is_loop()) continue;
    adj[static_cast<std::size_t>(ed.tail)].emplace_back(ed.head, e);
    adj[static_cast<std::size_t>(ed.head)].emplace_back(ed.tail, e);
  }
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<bool> bridge(static_cast<std::size_t>(g.num_edges()), false);
  int timer = 0;
  std::function<void(int, int)> dfs = [&](int v, int via) {
    disc[static_cast<std::size_t>(v)] = low[static_cast<std::size_t>(v)] = timer++;
    for (auto [w, e] : adj[static_cast<std::size_t>(v)]) {
      if (e == via) continue;  // parallel edges have distinct ids, so they still count as back edges
      if (disc[static_cast<std::size_t>(w)] < 0) {
        dfs(w, e);
        low[static_cast<std::size_t>(v)] = std::min(low[static_cast<std::size_t>(v)], low[static_cast<std::size_t>(w)]);
        if (low[static_cast<std::size_t>(w)] > disc[static_cast<std::size_t>(v)]) bridge[static_cast<std::size_t>(e)] = true;
      } else {
        low[static_cast<std::size_t>(v)] = std::min(low[static_cast<std::size_t>(v)], disc[static_cast<std::size_t>(w)]);
      }
    }
  };
  dfs(0, -1);
  return bridge;
}

bool is_stable(const DualGraph& g) {
  for (int v = 0; v < g.num_vertices(); ++v) {
    const auto& vx = g.vertex(v);
    if (2 * vx.genus - 2 + g.valence(v) + static_cast<std::int64_t>(vx.legs.size()) <= 0) return false;
  }
  return true;
}

bool is_l_stable(const DualGraph& g, const MultiIndex& l) {
  if (l.size() != multi_index_length(genus(g))) {
    throw Error(ErrorKind::MultiIndexLengthMismatch,
                "multi-index has length " + std::to_string(l.size()) + ", genus " + std::to_string(genus(g)) +
                    " needs " + std::to_string(multi_index_length(genus(g))));
  }
  if (!is_stable(g)) return false;
  for (int e = 0; e < g.num_edges(); ++e) {
    auto t = classify_node(g, e);
    if (g.edge(e).stabilizer != l[static_cast<std::size_t>(t.index)]) return false;
  }
  return true;
}

}  // namespace twspin
