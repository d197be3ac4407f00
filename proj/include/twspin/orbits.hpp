#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "twspin/arith.hpp"
#include "twspin/graph.hpp"
#include "twspin/picard.hpp"

namespace twspin {

/// Root of a bundle on a graph whose components are all rational: branch
/// multiplicities plus gluing parameters beta_e in Z/r, the latter modulo
/// coboundaries beta ~ beta + (alpha_head - alpha_tail). Stored normalized so
/// that beta vanishes on the BFS spanning tree rooted at vertex 0.
struct RootClass {
  GraphPtr graph;
  std::vector<std::int64_t> mult;
  std::vector<std::int64_t> gluing;

  friend bool operator==(const RootClass& a, const RootClass& b) {
    return a.mult == b.mult && a.gluing == b.gluing;
  }
  friend auto operator<=>(const RootClass& a, const RootClass& b) {
    if (auto c = a.mult <=> b.mult; c != 0) return c;
    return a.gluing <=> b.gluing;
  }
};

/// Spanning-tree membership per edge (first-found BFS from vertex 0).
std::vector<bool> spanning_tree_edges(const DualGraph& g);

/// Reduces gluing parameters modulo coboundaries into tree-normal form.
std::vector<std::int64_t> normalize_gluing(const DualGraph& g, std::span<const std::int64_t> gluing, std::int64_t r);

/// Order of the ghost automorphism group: product of the stabilizer orders.
BigInt ghost_group_order(const DualGraph& g);

/// Action of the ghost generator at edge e: beta_e += (r / l_e) * mult_e.
/// Requires r | l_e and (r * mult_e) divisible by l_e.
RootClass ghost_act(const RootClass& c, int e, std::int64_t r);

/// (mult, beta) -> (-mult, -beta).
RootClass involution_act(const RootClass& c, std::int64_t r);

std::vector<RootClass> enumerate_root_classes(const LineBundleData& F, std::int64_t r, const RootOptions& opts = {});

struct OrbitOptions {
  bool with_involution = false;
  bool exclude_trivial = false;  // drop the class with mult = 0, beta = 0
  std::int64_t max_group_work = 50'000'000;  // |group| * |classes| bound for the Burnside check
};

struct OrbitResult {
  std::vector<RootClass> classes;
  std::vector<std::vector<std::size_t>> orbits;  // indices into classes, each sorted
  std::size_t num_orbits = 0;
  BigInt group_order;
  BigInt burnside_count;
};

/// Orbits of the ghost group (and optionally the involution) on root classes,
/// found by closure under generators and checked against Burnside's count.
OrbitResult orbit_count(const LineBundleData& F, std::int64_t r, const OrbitOptions& orbit_opts = {},
                        const RootOptions& opts = {});

bool is_prime(std::int64_t n);

/// Orbits on nonzero vectors of (Z/r)^2 under the cyclic group of order 2, 4 or 6
/// generated by -I, [[0,-1],[1,0]] or [[0,-1],[1,1]].
std::int64_t elliptic_torsion_orbits(std::int64_t r, int aut_order);

std::int64_t riemann_hurwitz_chi(std::int64_t degree, std::span<const std::int64_t> fibre_point_counts);

struct NrReport {
  std::int64_t r = 0;
  std::int64_t degree = 0;
  std::int64_t n_j1728 = 0;
  std::int64_t n_j0 = 0;
  std::int64_t n_cusp = 0;
  std::int64_t euler = 0;
  std::int64_t genus_nr = 0;
};

/// The nodal genus-1 fixture with one marking and a loop of stabilizer r.
DualGraph nodal_elliptic_fixture(std::int64_t r);

NrReport nr_report(std::int64_t r);

/// r | l_0 and r | (2i-1) k l_i for i >= 1. Requires (2g-2)k == 0 mod r.
bool cond_check(std::int64_t g, std::int64_t r, const MultiIndex& l, std::int64_t k);

struct CondWitness {
  DualGraph graph;
  BigInt count;
};

struct CondReport {
  bool hypothesis = true;   // (2g-2)k == 0 mod r
  bool predicted = false;   // hypothesis && cond_check
  bool all_full = false;    // every l-stable graph has exactly r^(2g) roots
  bool equivalent = false;  // predicted == all_full
  std::size_t graphs_checked = 0;
  BigInt expected;          // r^(2g)
  std::vector<CondWitness> witnesses;  // graphs whose count differs from r^(2g)
};

/// Checks the torsor condition against root counts of omega^k on every
/// l-stable graph of genus g. When the degree hypothesis fails no graph can
/// carry roots, so the predicted side is false and witnesses have count 0.
CondReport verify_cond(std::int64_t g, std::int64_t r, const MultiIndex& l, std::int64_t k,
                       const RootOptions& opts = {}, std::size_t max_witnesses = 16);

BigRational aj_aut_ratio(std::int64_t r, std::span<const std::int64_t> node_stabilizers);

}  // namespace twspin
