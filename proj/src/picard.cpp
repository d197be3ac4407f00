#include "twspin/picard.hpp"

#include <numeric>

#include "twspin/errors.hpp"

namespace twspin {

namespace {

void require_positive_r(std::int64_t r) {
  if (r < 1) throw Error(ErrorKind::InvalidArgument, "r must be >= 1");
}

void require_same_graph(const LineBundleData& a, const LineBundleData& b) {
  if (a.graph_ptr() != b.graph_ptr() && !(a.graph() == b.graph())) {
    throw Error(ErrorKind::GraphMismatch, "line bundles live on different graphs");
  }
}

}  // namespace

LineBundleData::LineBundleData(GraphPtr graph, std::vector<std::int64_t> int_part, std::vector<std::int64_t> mult)
    : graph_(std::move(graph)), int_part_(std::move(int_part)), mult_(std::move(mult)) {
  if (!graph_) throw Error(ErrorKind::InvalidArgument, "null graph");
  if (int_part_.size() != static_cast<std::size_t>(graph_->num_vertices())) {
    throw Error(ErrorKind::DimensionMismatch, "int_part has " + std::to_string(int_part_.size()) +
                                                  " entries for " + std::to_string(graph_->num_vertices()) +
                                                  " vertices");
  }
  if (mult_.size() != static_cast<std::size_t>(graph_->num_edges())) {
    throw Error(ErrorKind::DimensionMismatch, "mult has " + std::to_string(mult_.size()) + " entries for " +
                                                  std::to_string(graph_->num_edges()) + " edges");
  }
  for (int e = 0; e < graph_->num_edges(); ++e) {
    auto m = mult_[static_cast<std::size_t>(e)];
    if (m < 0 || m >= graph_->edge(e).stabilizer) {
      throw Error(ErrorKind::InvalidArgument, "multiplicity " + std::to_string(m) + " on edge " + std::to_string(e) +
                                                  " outside [0, " + std::to_string(graph_->edge(e).stabilizer) + ")");
    }
  }
}

LineBundleData LineBundleData::trivial(GraphPtr graph) {
  const auto nv = static_cast<std::size_t>(graph->num_vertices());
  const auto ne = static_cast<std::size_t>(graph->num_edges());
  return LineBundleData(std::move(graph), std::vector<std::int64_t>(nv, 0), std::vector<std::int64_t>(ne, 0));
}

LineBundleData LineBundleData::from_degrees(GraphPtr graph, std::span<const Rational> degrees,
                                            std::vector<std::int64_t> mult) {
  if (degrees.size() != static_cast<std::size_t>(graph->num_vertices())) {
    throw Error(ErrorKind::DimensionMismatch, "degree vector length mismatch");
  }
  std::vector<std::int64_t> phi(degrees.size());
  for (int v = 0; v < graph->num_vertices(); ++v) {
    Rational rest = degrees[static_cast<std::size_t>(v)] - branch_fraction(*graph, mult, v);
    if (!rest.is_integer()) {
      throw Error(ErrorKind::InvalidArgument, "degree " + degrees[static_cast<std::size_t>(v)].str() + " at vertex " +
                                                  std::to_string(v) + " is incompatible with its branch multiplicities");
    }
    phi[static_cast<std::size_t>(v)] = rest.num();
  }
  return LineBundleData(std::move(graph), std::move(phi), std::move(mult));
}

std::int64_t LineBundleData::tail_mult(int e) const {
  const auto l = graph_->edge(e).stabilizer;
  return mod_floor(l - mult_[static_cast<std::size_t>(e)], l);
}

bool operator==(const LineBundleData& a, const LineBundleData& b) {
  if (a.graph_ != b.graph_ && !(*a.graph_ == *b.graph_)) return false;
  return a.int_part_ == b.int_part_ && a.mult_ == b.mult_;
}

Rational branch_fraction(const DualGraph& g, std::span<const std::int64_t> mult, int v) {
  Rational f = 0;
  for (int e = 0; e < g.num_edges(); ++e) {
    const auto& ed = g.edge(e);
    const auto l = ed.stabilizer;
    const auto m = mult[static_cast<std::size_t>(e)];
    if (ed.head == v && m != 0) f += Rational(m, l);
    if (ed.tail == v && m != 0) f += Rational(l - m, l);
  }
  return f;
}

Rational vertex_degree(const LineBundleData& L, int v) {
  if (v < 0 || v >= L.graph().num_vertices()) throw Error(ErrorKind::BadIndex, "vertex index out of range");
  return Rational(L.int_part()[static_cast<std::size_t>(v)]) + branch_fraction(L.graph(), L.mult(), v);
}

std::vector<Rational> vertex_degrees(const LineBundleData& L) {
  std::vector<Rational> d;
  d.reserve(static_cast<std::size_t>(L.graph().num_vertices()));
  for (int v = 0; v < L.graph().num_vertices(); ++v) d.push_back(vertex_degree(L, v));
  return d;
}

std::int64_t total_degree(const LineBundleData& L) {
  Rational t = 0;
  for (const auto& d : vertex_degrees(L)) t += d;
  if (!t.is_integer()) throw Error(ErrorKind::NonIntegralTotal, "total degree " + t.str() + " is not an integer");
  return t.num();
}

LineBundleData omega_twisted(GraphPtr graph, std::int64_t k, const std::map<std::int64_t, std::int64_t>& twists) {
  const DualGraph& g = *graph;
  std::vector<std::int64_t> phi(static_cast<std::size_t>(g.num_vertices()));
  for (int v = 0; v < g.num_vertices(); ++v) {
    const auto& vx = g.vertex(v);
    std::int64_t d = checked_mul(k, 2 * vx.genus - 2 + g.valence(v));
    for (auto id : vx.legs) {
      if (auto it = twists.find(id); it != twists.end()) d = checked_sub(d, it->second);
    }
    phi[static_cast<std::size_t>(v)] = d;
  }
  for (const auto& [id, val] : twists) {
    bool found = false;
    for (const auto& vx : g.vertices()) {
      for (auto leg : vx.legs) found = found || leg == id;
    }
    if (!found) throw Error(ErrorKind::InvalidArgument, "twist refers to unknown marking " + std::to_string(id));
  }
  return LineBundleData(std::move(graph), std::move(phi), std::vector<std::int64_t>(static_cast<std::size_t>(g.num_edges()), 0));
}

LineBundleData tensor(const LineBundleData& a, const LineBundleData& b) {
  require_same_graph(a, b);
  const DualGraph& g = a.graph();
  std::vector<std::int64_t> mult(a.mult().size());
  for (int e = 0; e < g.num_edges(); ++e) {
    mult[static_cast<std::size_t>(e)] =
        mod_floor(a.mult()[static_cast<std::size_t>(e)] + b.mult()[static_cast<std::size_t>(e)], g.edge(e).stabilizer);
  }
  std::vector<Rational> deg(static_cast<std::size_t>(g.num_vertices()));
  for (int v = 0; v < g.num_vertices(); ++v) deg[static_cast<std::size_t>(v)] = vertex_degree(a, v) + vertex_degree(b, v);
  return LineBundleData::from_degrees(a.graph_ptr(), deg, std::move(mult));
}

LineBundleData tensor_power(const LineBundleData& L, std::int64_t n) {
  const DualGraph& g = L.graph();
  std::vector<std::int64_t> mult(L.mult().size());
  for (int e = 0; e < g.num_edges(); ++e) {
    const auto l = g.edge(e).stabilizer;
    mult[static_cast<std::size_t>(e)] = mod_floor(checked_mul(mod_floor(n, l), L.mult()[static_cast<std::size_t>(e)]), l);
  }
  std::vector<Rational> deg(static_cast<std::size_t>(g.num_vertices()));
  for (int v = 0; v < g.num_vertices(); ++v) deg[static_cast<std::size_t>(v)] = vertex_degree(L, v) * Rational(n);
  return LineBundleData::from_degrees(L.graph_ptr(), deg, std::move(mult));
}

LineBundleData rth_power(const LineBundleData& L, std::int64_t r) {
  require_positive_r(r);
  return tensor_power(L, r);
}

LineBundleData flip_edge(const LineBundleData& L, int e) {
  auto g = share(L.graph().with_edge_flipped(e));
  auto mult = L.mult();
  mult[static_cast<std::size_t>(e)] = L.tail_mult(e);
  return LineBundleData(std::move(g), L.int_part(), std::move(mult));
}

CyclicHom delta_embed(const DualGraph& g, std::int64_t r) {
  require_positive_r(r);
  const auto nv = static_cast<std::size_t>(g.num_vertices());
  const auto ne = static_cast<std::size_t>(g.num_edges());
  IntMatrix m(nv, ne);
  std::vector<std::int64_t> dom(ne);
  for (std::size_t e = 0; e < ne; ++e) {
    const auto& ed = g.edge(static_cast<int>(e));
    const auto h = std::gcd(ed.stabilizer, r);
    dom[e] = h;
    if (!ed.is_loop()) {
      m(static_cast<std::size_t>(ed.head), e) += r / h;
      m(static_cast<std::size_t>(ed.tail), e) -= r / h;
    }
  }
  return CyclicHom(std::move(m), std::move(dom), std::vector<std::int64_t>(nv, r));
}

BigInt coarse_torsion_count(const DualGraph& g, std::int64_t r) {
  require_positive_r(r);
  return big_pow(r, 2 * vertex_genus_sum(g) + betti_number(g));
}

BigInt torsion_count(const DualGraph& g, std::int64_t r) {
  return coarse_torsion_count(g, r) * hom_kernel_size(delta_embed(g, r));
}

namespace {

// Direct search for roots of F. For each edge the root multiplicity must solve
// r * mu == mult_F (mod l); the solutions are mu0 + (l/h) x, x in Z/h. A choice
// x is accepted when every deg_F(v)/r - frac_R(v) is an integer, which is
// tested in the integral form
//   s_v = phi_F(v) - sum_{head at v} (r mu_R - mu_F)/l - sum_{tail at v} (r t_R - t_F)/l == 0 (mod r),
// t_* being the tail multiplicities. Each accepted x gives one discrete root
// with integer part s_v / r.
class RootSearch {
 public:
  RootSearch(const LineBundleData& F, std::int64_t r, const RootOptions& opts) : F_(F), r_(r) {
    require_positive_r(r);
    const DualGraph& g = F.graph();
    const auto ne = static_cast<std::size_t>(g.num_edges());
    choices_.resize(ne);
    head_.resize(ne);
    tail_.resize(ne);
    std::int64_t domain = 1;
    for (std::size_t e = 0; e < ne; ++e) {
      const auto& ed = g.edge(static_cast<int>(e));
      const auto l = ed.stabilizer;
      const auto muF = F.head_mult(static_cast<int>(e));
      const auto tF = F.tail_mult(static_cast<int>(e));
      auto sol = solve_congruence(r, muF, l);
      if (!sol) {
        solvable_ = false;
        return;
      }
      const auto h = l / sol->step;
      domain = checked_mul(domain, h);
      if (domain > opts.max_domain) {
        throw Error(ErrorKind::DomainTooLarge, "search domain exceeds " + std::to_string(opts.max_domain));
      }
      for (std::int64_t x = 0; x < h; ++x) {
        const auto mu = sol->x0 + sol->step * x;
        const auto t = mod_floor(l - mu, l);
        const auto a = checked_sub(checked_mul(r, mu), muF);
        const auto b = checked_sub(checked_mul(r, t), tF);
        if (a % l != 0 || b % l != 0) throw Error(ErrorKind::Internal, "branch contribution not integral");
        choices_[e].push_back(mu);
        head_[e].push_back(a / l);
        tail_[e].push_back(b / l);
      }
    }
  }

  bool solvable() const { return solvable_; }

  // Calls visit(mu) for each accepted multiplicity vector; returns the count.
  template <class Visit>
  std::int64_t run(Visit&& visit) const {
    if (!solvable_) return 0;
    const DualGraph& g = F_.graph();
    const auto ne = static_cast<std::size_t>(g.num_edges());
    const auto nv = static_cast<std::size_t>(g.num_vertices());
    std::vector<std::int64_t> s(nv);
    for (std::size_t v = 0; v < nv; ++v) s[v] = F_.int_part()[v];
    for (std::size_t e = 0; e < ne; ++e) {
      const auto& ed = g.edge(static_cast<int>(e));
      s[static_cast<std::size_t>(ed.head)] -= head_[e][0];
      s[static_cast<std::size_t>(ed.tail)] -= tail_[e][0];
    }
    std::size_t bad = 0;
    for (auto& sv : s) {
      sv = mod_floor(sv, r_);
      if (sv != 0) ++bad;
    }
    auto bump = [&](std::size_t v, std::int64_t delta) {
      const bool was = s[v] == 0;
      s[v] = mod_floor(s[v] + delta, r_);
      const bool now = s[v] == 0;
      if (was && !now) ++bad;
      if (!was && now) --bad;
    };

    std::vector<std::size_t> x(ne, 0);
    std::int64_t accepted = 0;
    while (true) {
      if (bad == 0) {
        ++accepted;
        visit(x, s);
      }
      std::size_t e = 0;
      for (; e < ne; ++e) {
        const auto& ed = g.edge(static_cast<int>(e));
        const std::size_t from = x[e];
        const std::size_t to = from + 1 == choices_[e].size() ? 0 : from + 1;
        bump(static_cast<std::size_t>(ed.head), head_[e][from] - head_[e][to]);
        bump(static_cast<std::size_t>(ed.tail), tail_[e][from] - tail_[e][to]);
        x[e] = to;
        if (to != 0) break;
      }
      if (e == ne) break;
    }
    return accepted;
  }

  // Root class for an accepted choice; s holds the residues (all zero), so the
  // integer parts are recomputed exactly.
  LineBundleData root_for(const std::vector<std::size_t>& x) const {
    const DualGraph& g = F_.graph();
    std::vector<std::int64_t> mu(x.size());
    std::vector<std::int64_t> s(F_.int_part());
    for (std::size_t e = 0; e < x.size(); ++e) {
      const auto& ed = g.edge(static_cast<int>(e));
      mu[e] = choices_[e][x[e]];
      s[static_cast<std::size_t>(ed.head)] -= head_[e][x[e]];
      s[static_cast<std::size_t>(ed.tail)] -= tail_[e][x[e]];
    }
    for (auto& sv : s) {
      if (mod_floor(sv, r_) != 0) throw Error(ErrorKind::Internal, "accepted root has non-integral part");
      sv /= r_;
    }
    return LineBundleData(F_.graph_ptr(), std::move(s), std::move(mu));
  }

 private:
  const LineBundleData& F_;
  std::int64_t r_;
  bool solvable_ = true;
  std::vector<std::vector<std::int64_t>> choices_;
  std::vector<std::vector<std::int64_t>> head_;
  std::vector<std::vector<std::int64_t>> tail_;
};

}  // namespace

BigInt count_roots(const LineBundleData& F, std::int64_t r, const RootOptions& opts) {
  RootSearch search(F, r, opts);
  const auto accepted = search.run([](const auto&, const auto&) {});
  if (accepted == 0) return 0;
  return coarse_torsion_count(F.graph(), r) * accepted;
}

std::vector<LineBundleData> discrete_roots(const LineBundleData& F, std::int64_t r, const RootOptions& opts) {
  RootSearch search(F, r, opts);
  std::vector<LineBundleData> out;
  search.run([&](const std::vector<std::size_t>& x, const auto&) { out.push_back(search.root_for(x)); });
  return out;
}

CriterionReport rootsnum_criterion(const LineBundleData& F, std::int64_t r) {
  require_positive_r(r);
  const auto total = total_degree(F);
  if (mod_floor(total, r) != 0) {
    throw Error(ErrorKind::HypothesisViolated,
                "total degree " + std::to_string(total) + " is not a multiple of r=" + std::to_string(r));
  }
  const DualGraph& g = F.graph();
  const auto deg = vertex_degrees(F);
  CriterionReport rep;
  for (int e = 0; e < g.num_edges(); ++e) {
    const auto l = g.edge(e).stabilizer;
    const auto type = classify_node(g, e);
    if (!type.separating) {
      std::string why;
      if (l % r != 0) why += "r does not divide l=" + std::to_string(l) + "; ";
      if (F.head_mult(e) % r != 0) why += "r does not divide m1=" + std::to_string(F.head_mult(e)) + "; ";
      if (F.tail_mult(e) % r != 0) why += "r does not divide m2=" + std::to_string(F.tail_mult(e)) + "; ";
      if (!why.empty()) rep.failures.push_back({e, false, why});
      continue;
    }
    std::string why;
    for (const auto* side : {&type.plus_vertices, &type.minus_vertices}) {
      Rational d = 0;
      for (int v : *side) d += deg[static_cast<std::size_t>(v)];
      const Rational scaled = d * Rational(l);
      if (!scaled.is_integer()) {
        throw Error(ErrorKind::Internal, "side degree " + d.str() + " not in (1/l)Z at edge " + std::to_string(e));
      }
      if (scaled.num() % r != 0) {
        if (!why.empty()) why += "; ";
        why += std::string(side == &type.plus_vertices ? "head" : "tail") + " side: r does not divide d*l=" +
               std::to_string(scaled.num());
      }
    }
    if (!why.empty()) rep.failures.push_back({e, true, why});
  }
  rep.holds = rep.failures.empty();
  return rep;
}

namespace {

struct CombSetup {
  std::vector<NodeType> types;
};

CombSetup check_comb_hypotheses(const DualGraph& g, std::int64_t r, std::span<const std::int64_t> t) {
  require_positive_r(r);
  if (t.size() != static_cast<std::size_t>(g.num_vertices())) {
    throw Error(ErrorKind::DimensionMismatch, "target has " + std::to_string(t.size()) + " entries for " +
                                                  std::to_string(g.num_vertices()) + " vertices");
  }
  CombSetup s;
  for (int e = 0; e < g.num_edges(); ++e) {
    s.types.push_back(classify_node(g, e));
    if (!s.types.back().separating && g.edge(e).stabilizer % r != 0) {
      throw Error(ErrorKind::HypothesisViolated, "nonseparating edge " + std::to_string(e) + " has stabilizer " +
                                                     std::to_string(g.edge(e).stabilizer) + " not divisible by r=" +
                                                     std::to_string(r));
    }
  }
  std::int64_t sum = 0;
  for (auto x : t) sum = mod_floor(sum + mod_floor(x, r), r);
  if (sum != 0) throw Error(ErrorKind::AugmentationNonzero, "coordinates of t do not sum to 0 mod r");
  return s;
}

std::int64_t side_sum(std::span<const int> vertices, const std::vector<std::int64_t>& t, std::int64_t r) {
  std::int64_t s = 0;
  for (int v : vertices) s = mod_floor(s + t[static_cast<std::size_t>(v)], r);
  return s;
}

// Solves delta_embed restricted to a bridgeless connected piece.
bool lift_bridgeless(const DualGraph& g, std::int64_t r, const std::vector<int>& vertices, const std::vector<int>& edges,
                     const std::vector<std::int64_t>& t, std::vector<std::int64_t>& x) {
  if (edges.empty()) {
    for (int v : vertices) {
      if (mod_floor(t[static_cast<std::size_t>(v)], r) != 0) return false;
    }
    return true;
  }
  std::vector<int> row(static_cast<std::size_t>(g.num_vertices()), -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) row[static_cast<std::size_t>(vertices[i])] = static_cast<int>(i);
  IntMatrix m(vertices.size(), edges.size());
  std::vector<std::int64_t> dom(edges.size());
  for (std::size_t j = 0; j < edges.size(); ++j) {
    const auto& ed = g.edge(edges[j]);
    const auto h = std::gcd(ed.stabilizer, r);
    dom[j] = h;
    if (!ed.is_loop()) {
      m(static_cast<std::size_t>(row[static_cast<std::size_t>(ed.head)]), j) += r / h;
      m(static_cast<std::size_t>(row[static_cast<std::size_t>(ed.tail)]), j) -= r / h;
    }
  }
  CyclicHom piece(std::move(m), std::move(dom), std::vector<std::int64_t>(vertices.size(), r));
  std::vector<std::int64_t> target(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i) target[i] = mod_floor(t[static_cast<std::size_t>(vertices[i])], r);
  auto sol = hom_image_contains(piece, target);
  if (!sol) return false;
  for (std::size_t j = 0; j < edges.size(); ++j) x[static_cast<std::size_t>(edges[j])] = (*sol)[j];
  return true;
}

bool lift_rec(const DualGraph& g, std::int64_t r, const CombSetup& setup, const std::vector<int>& vertices,
              const std::vector<int>& edges, std::vector<std::int64_t>& t, std::vector<std::int64_t>& x) {
  int bridge = -1;
  for (int e : edges) {
    if (setup.types[static_cast<std::size_t>(e)].separating) {
      bridge = e;
      break;
    }
  }
  if (bridge < 0) return lift_bridgeless(g, r, vertices, edges, t, x);

  const auto& type = setup.types[static_cast<std::size_t>(bridge)];
  const auto& ed = g.edge(bridge);
  const auto h = std::gcd(ed.stabilizer, r);
  const auto unit = r / h;

  auto in = [](const std::vector<int>& set, int v) { return std::binary_search(set.begin(), set.end(), v); };
  std::vector<int> plus_v, minus_v, plus_e, minus_e;
  for (int v : vertices) (in(type.plus_vertices, v) ? plus_v : minus_v).push_back(v);
  for (int e : edges) {
    if (e == bridge) continue;
    (in(type.plus_edges, e) ? plus_e : minus_e).push_back(e);
  }

  const auto eps = side_sum(plus_v, t, r);
  if (eps % unit != 0) return false;
  const auto xe = mod_floor(eps / unit, h);
  x[static_cast<std::size_t>(bridge)] = xe;
  auto& th = t[static_cast<std::size_t>(ed.head)];
  auto& tt = t[static_cast<std::size_t>(ed.tail)];
  th = mod_floor(th - unit * xe, r);
  tt = mod_floor(tt + unit * xe, r);
  return lift_rec(g, r, setup, plus_v, plus_e, t, x) && lift_rec(g, r, setup, minus_v, minus_e, t, x);
}

}  // namespace

bool comb_membership(const DualGraph& g, std::int64_t r, std::span<const std::int64_t> t) {
  auto setup = check_comb_hypotheses(g, r, t);
  std::vector<std::int64_t> tv(t.begin(), t.end());
  for (int e = 0; e < g.num_edges(); ++e) {
    const auto& type = setup.types[static_cast<std::size_t>(e)];
    if (!type.separating) continue;
    const auto unit = r / std::gcd(g.edge(e).stabilizer, r);
    if (side_sum(type.plus_vertices, tv, r) % unit != 0) return false;
  }
  return true;
}

std::optional<std::vector<std::int64_t>> comb_lift(const DualGraph& g, std::int64_t r, std::span<const std::int64_t> t) {
  auto setup = check_comb_hypotheses(g, r, t);
  std::vector<int> vertices(static_cast<std::size_t>(g.num_vertices()));
  std::iota(vertices.begin(), vertices.end(), 0);
  std::vector<int> edges(static_cast<std::size_t>(g.num_edges()));
  std::iota(edges.begin(), edges.end(), 0);
  std::vector<std::int64_t> work(t.begin(), t.end());
  std::vector<std::int64_t> x(static_cast<std::size_t>(g.num_edges()), 0);
  if (!lift_rec(g, r, setup, vertices, edges, work, x)) return std::nullopt;

  auto image = delta_embed(g, r).apply(x);
  for (std::size_t v = 0; v < image.size(); ++v) {
    if (image[v] != mod_floor(t[v], r)) throw Error(ErrorKind::Internal, "comb_lift produced a wrong preimage");
  }
  return x;
}

std::optional<LineBundleData> construct_root(const LineBundleData& F, std::int64_t r, const RootOptions& opts) {
  require_positive_r(r);
  const DualGraph& g = F.graph();
  const auto total = total_degree(F);
  if (mod_floor(total, r) != 0) return std::nullopt;

  std::optional<LineBundleData> root;
  if (rootsnum_criterion(F, r).holds) {
    // M carries the twists k(e) on the "+" branches so that M^r and F agree on
    // the nodes; A = F (x) M^(-r) is then a pullback whose multidegree mod r is
    // lifted through delta_embed, which yields a root N of A. R = N (x) M.
    const auto deg = vertex_degrees(F);
    std::vector<std::int64_t> mult_m(static_cast<std::size_t>(g.num_edges()));
    for (int e = 0; e < g.num_edges(); ++e) {
      const auto l = g.edge(e).stabilizer;
      const auto type = classify_node(g, e);
      std::int64_t k;
      if (type.separating) {
        Rational d = 0;
        for (int v : type.plus_vertices) d += deg[static_cast<std::size_t>(v)];
        k = (d * Rational(l)).num() / r;
      } else {
        k = F.head_mult(e) / r;
      }
      mult_m[static_cast<std::size_t>(e)] = mod_floor(k, l);
    }
    LineBundleData M(F.graph_ptr(), std::vector<std::int64_t>(static_cast<std::size_t>(g.num_vertices()), 0), mult_m);
    LineBundleData A = tensor(F, tensor_power(M, -r));
    for (auto m : A.mult()) {
      if (m != 0) throw Error(ErrorKind::Internal, "twisted bundle is not a pullback");
    }
    std::vector<std::int64_t> t(static_cast<std::size_t>(g.num_vertices()));
    for (int v = 0; v < g.num_vertices(); ++v) t[static_cast<std::size_t>(v)] = mod_floor(A.int_part()[static_cast<std::size_t>(v)], r);
    auto x = comb_lift(g, r, t);
    if (!x) throw Error(ErrorKind::Internal, "criterion holds but the multidegree does not lift");
    std::vector<std::int64_t> mult_n(static_cast<std::size_t>(g.num_edges()));
    for (int e = 0; e < g.num_edges(); ++e) {
      const auto l = g.edge(e).stabilizer;
      mult_n[static_cast<std::size_t>(e)] = (l / std::gcd(l, r)) * (*x)[static_cast<std::size_t>(e)];
    }
    std::vector<Rational> deg_n(static_cast<std::size_t>(g.num_vertices()));
    for (int v = 0; v < g.num_vertices(); ++v) deg_n[static_cast<std::size_t>(v)] = Rational(A.int_part()[static_cast<std::size_t>(v)], r);
    auto N = LineBundleData::from_degrees(F.graph_ptr(), deg_n, std::move(mult_n));
    root = tensor(N, M);
  } else {
    RootSearch search(F, r, opts);
    bool found = false;
    std::vector<std::size_t> first;
    search.run([&](const std::vector<std::size_t>& x, const auto&) {
      if (!found) {
        first = x;
        found = true;
      }
    });
    if (!found) return std::nullopt;
    root = search.root_for(first);
  }
  if (!(rth_power(*root, r) == F)) throw Error(ErrorKind::Internal, "constructed root does not power to F");
  return root;
}

LineBundleData combine_coprime(const LineBundleData& l1, const LineBundleData& l2, std::int64_t r1, std::int64_t r2) {
  require_positive_r(r1);
  require_positive_r(r2);
  require_same_graph(l1, l2);
  auto eg = extended_gcd(r1, r2);
  if (eg.g != 1) throw Error(ErrorKind::NotCoprime, std::to_string(r1) + " and " + std::to_string(r2) + " are not coprime");
  if (!(rth_power(l1, r1) == rth_power(l2, r2))) {
    throw Error(ErrorKind::HypothesisViolated, "inputs are not roots of a common bundle");
  }
  // h1 r1 + h2 r2 = 1
  const auto h1 = eg.x, h2 = eg.y;
  return tensor(tensor_power(l1, h2), tensor_power(l2, h1));
}

std::pair<LineBundleData, LineBundleData> split_coprime(const LineBundleData& L, std::int64_t r1, std::int64_t r2) {
  require_positive_r(r1);
  require_positive_r(r2);
  if (std::gcd(r1, r2) != 1) {
    throw Error(ErrorKind::NotCoprime, std::to_string(r1) + " and " + std::to_string(r2) + " are not coprime");
  }
  return {rth_power(L, r2), rth_power(L, r1)};
}

}  // namespace twspin
