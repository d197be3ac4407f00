#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "twspin/graph.hpp"

namespace twspin {

inline constexpr int kDefaultMaxVertices = 8;

struct CanonicalLabel {
  std::string label;
  std::vector<int> new_index;  // vertex v of the input sits at new_index[v]
};

/// Isomorphism-invariant label of a decorated graph (genus, leg count and
/// stabilizer preserving; orientation and marking identifiers are ignored).
/// Vertices are first split by colour refinement, then the lexicographically
/// least edge encoding over all refinement-compatible orderings is taken.
CanonicalLabel canonical_labeling(const DualGraph& g, int max_vertices = kDefaultMaxVertices);
std::string canonical_form(const DualGraph& g, int max_vertices = kDefaultMaxVertices);

/// Representative in canonical position: vertices in canonical order, edges
/// sorted with tail <= head, markings renumbered 1..n in vertex order.
DualGraph canonicalize(const DualGraph& g, int max_vertices = kDefaultMaxVertices);

struct EnumerationLimits {
  std::int64_t max_genus = 4;
  int max_vertices = kDefaultMaxVertices;
  std::size_t max_candidates = 20'000'000;  // decorated candidates examined
};

/// All connected stable graphs of genus g with n legs and every stabilizer in
/// `stabilizer_choices`, one canonical representative per isomorphism class,
/// ordered by (edges, vertices, canonical label).
std::vector<DualGraph> enumerate_stable_graphs(std::int64_t g, int n_legs,
                                               std::span<const std::int64_t> stabilizer_choices,
                                               const EnumerationLimits& limits = {});

/// Undecorated shapes (every stabilizer 1); same ordering as above.
std::vector<DualGraph> enumerate_stable_shapes(std::int64_t g, int n_legs, const EnumerationLimits& limits = {});

/// Every l-stable graph: each shape with the stabilizer of a type-i node forced to l_i.
std::vector<DualGraph> enumerate_l_stable_graphs(std::int64_t g, int n_legs, const MultiIndex& l,
                                                 const EnumerationLimits& limits = {});

}  // namespace twspin
