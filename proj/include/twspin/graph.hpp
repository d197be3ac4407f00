#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace twspin {

struct Vertex {
  std::int64_t genus = 0;
  std::vector<std::int64_t> legs;  // marking identifiers

  friend bool operator==(const Vertex&, const Vertex&) = default;
};

/// A node of the curve. The stored (tail, head) orientation is the one used by
/// every chain map; the head branch is the "+" branch.
struct Edge {
  int tail = 0;
  int head = 0;
  std::int64_t stabilizer = 1;

  bool is_loop() const { return tail == head; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Decorated dual graph of a twisted nodal curve. Immutable once built; the
/// constructor enforces connectedness, index bounds, positive stabilizers and
/// globally distinct marking identifiers.
class DualGraph {
 public:
  DualGraph(std::vector<Vertex> vertices, std::vector<Edge> edges);

  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Vertex& vertex(int v) const { return vertices_.at(static_cast<std::size_t>(v)); }
  const Edge& edge(int e) const { return edges_.at(static_cast<std::size_t>(e)); }
  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_legs() const;

  /// Number of half-edges at v; loops count twice. Legs are not included.
  int valence(int v) const;

  /// Edge indices touching v (a loop is listed once).
  std::vector<int> incident_edges(int v) const;

  DualGraph with_edge_flipped(int e) const;
  DualGraph with_stabilizers(std::span<const std::int64_t> stabilizers) const;
  DualGraph without_edge(int e) const;
  /// new_index[v] is the position of old vertex v in the result.
  DualGraph relabeled(std::span<const int> new_index) const;

  friend bool operator==(const DualGraph&, const DualGraph&) = default;

 private:
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
};

/// Stability profile (l_0, ..., l_{floor(g/2)}) indexed by node type.
struct MultiIndex {
  std::vector<std::int64_t> entries;

  std::size_t size() const { return entries.size(); }
  std::int64_t operator[](std::size_t i) const { return entries.at(i); }
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
};

/// Result of normalizing the curve at one node. For a separating node the
/// "+" side is the component containing the head vertex.
struct NodeType {
  bool separating = false;
  std::int64_t index = 0;  // 0 when nonseparating, else min genus of the two sides
  std::vector<int> plus_vertices;
  std::vector<int> minus_vertices;
  std::vector<int> plus_edges;
  std::vector<int> minus_edges;
};

int betti_number(const DualGraph& g);
std::int64_t genus(const DualGraph& g);
std::int64_t vertex_genus_sum(const DualGraph& g);
bool all_rational(const DualGraph& g);

NodeType classify_node(const DualGraph& g, int e);

/// Bridges via Tarjan low-link; independent of classify_node.
std::vector<bool> find_bridges(const DualGraph& g);

bool is_stable(const DualGraph& g);
bool is_l_stable(const DualGraph& g, const MultiIndex& l);

/// Length of the multi-index used in genus g.
inline std::size_t multi_index_length(std::int64_t g) { return static_cast<std::size_t>(g / 2 + 1); }

}  // namespace twspin
