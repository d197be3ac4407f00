#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "twspin/arith.hpp"
#include "twspin/exactalg.hpp"
#include "twspin/graph.hpp"

namespace twspin {

using GraphPtr = std::shared_ptr<const DualGraph>;

inline GraphPtr share(DualGraph g) { return std::make_shared<const DualGraph>(std::move(g)); }

/// Discrete class of a line bundle on a twisted curve: integer part per vertex
/// and head-branch multiplicity per edge, 0 <= mult[e] < l_e. The tail branch
/// carries the inverse character, (l_e - mult[e]) mod l_e. Bundles are tracked
/// modulo the (divisible) Jacobians of the components and the gluing torus.
class LineBundleData {
 public:
  LineBundleData(GraphPtr graph, std::vector<std::int64_t> int_part, std::vector<std::int64_t> mult);

  static LineBundleData trivial(GraphPtr graph);

  /// Bundle with the given exact vertex degrees and multiplicities; throws when
  /// a degree is incompatible with the branch fractions at its vertex.
  static LineBundleData from_degrees(GraphPtr graph, std::span<const Rational> degrees,
                                     std::vector<std::int64_t> mult);

  const DualGraph& graph() const { return *graph_; }
  const GraphPtr& graph_ptr() const { return graph_; }
  const std::vector<std::int64_t>& int_part() const { return int_part_; }
  const std::vector<std::int64_t>& mult() const { return mult_; }

  std::int64_t head_mult(int e) const { return mult_[static_cast<std::size_t>(e)]; }
  std::int64_t tail_mult(int e) const;

  /// Discrete-class equality: same graph, same multiplicities and degrees.
  friend bool operator==(const LineBundleData& a, const LineBundleData& b);

 private:
  GraphPtr graph_;
  std::vector<std::int64_t> int_part_;
  std::vector<std::int64_t> mult_;
};

/// Sum of branch fractions mult/l at v (head and tail incidences; loops give both).
Rational branch_fraction(const DualGraph& g, std::span<const std::int64_t> mult, int v);

Rational vertex_degree(const LineBundleData& L, int v);
std::vector<Rational> vertex_degrees(const LineBundleData& L);
std::int64_t total_degree(const LineBundleData& L);

/// omega^k(-sum h_i [sigma_i]) pulled back from the coarse curve; markings not
/// present in `twists` get 0.
LineBundleData omega_twisted(GraphPtr graph, std::int64_t k, const std::map<std::int64_t, std::int64_t>& twists = {});

LineBundleData tensor(const LineBundleData& a, const LineBundleData& b);
LineBundleData tensor_power(const LineBundleData& L, std::int64_t n);
LineBundleData rth_power(const LineBundleData& L, std::int64_t r);

/// Same class after reversing edge e (head and tail swap, mult becomes the tail mult).
LineBundleData flip_edge(const LineBundleData& L, int e);

/// Boundary map composed with the per-edge embeddings Z/h_e -> Z/r, x -> (r/h_e) x,
/// h_e = gcd(l_e, r); edge e goes to (r/h_e)([head] - [tail]).
CyclicHom delta_embed(const DualGraph& g, std::int64_t r);

/// r^(2 sum g_v + b_1): order of the r-torsion of the coarse Picard group.
BigInt coarse_torsion_count(const DualGraph& g, std::int64_t r);

BigInt torsion_count(const DualGraph& g, std::int64_t r);

struct RootOptions {
  std::int64_t max_domain = 1'000'000;  // cap on prod_e gcd(l_e, r)
};

/// Number of r-th roots of F, by direct search over the admissible branch
/// multiplicities of a root followed by the per-vertex integrality test.
BigInt count_roots(const LineBundleData& F, std::int64_t r, const RootOptions& opts = {});

/// Every discrete class R with R^r == F (same search as count_roots).
std::vector<LineBundleData> discrete_roots(const LineBundleData& F, std::int64_t r, const RootOptions& opts = {});

struct EdgeFailure {
  int edge = 0;
  bool separating = false;
  std::string reason;
};

struct CriterionReport {
  bool holds = true;
  std::vector<EdgeFailure> failures;
};

/// Numerical criterion for F to have exactly r^(2g) roots. Requires
/// total_degree(F) to be a multiple of r.
CriterionReport rootsnum_criterion(const LineBundleData& F, std::int64_t r);

/// Membership of t in the image of delta_embed via the separating-edge test.
/// Requires r | l_e on nonseparating edges and sum(t) == 0 mod r.
bool comb_membership(const DualGraph& g, std::int64_t r, std::span<const std::int64_t> t);

/// Preimage of t under delta_embed built by peeling separating edges; bridgeless
/// pieces are solved through the Smith form. nullopt when t is not in the image.
std::optional<std::vector<std::int64_t>> comb_lift(const DualGraph& g, std::int64_t r,
                                                   std::span<const std::int64_t> t);

/// Some R with R^r == F. Uses the explicit twist-and-lift construction when the
/// numerical criterion holds and falls back to search otherwise.
std::optional<LineBundleData> construct_root(const LineBundleData& F, std::int64_t r,
                                             const RootOptions& opts = {});

/// L1^(h2) (x) L2^(h1) with h1 r1 + h2 r2 = 1. L1 and L2 must be r1- and r2-roots of a common bundle.
LineBundleData combine_coprime(const LineBundleData& l1, const LineBundleData& l2, std::int64_t r1, std::int64_t r2);

/// (L^r2, L^r1).
std::pair<LineBundleData, LineBundleData> split_coprime(const LineBundleData& L, std::int64_t r1, std::int64_t r2);

}  // namespace twspin
