#include "twspin/orbits.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <numeric>

#include "twspin/enumerate.hpp"
#include "twspin/errors.hpp"
#include "twspin/sweep.hpp"

namespace twspin {

std::vector<bool> spanning_tree_edges(const DualGraph& g) {
  std::vector<bool> tree(static_cast<std::size_t>(g.num_edges()), false);
  std::vector<bool> seen(static_cast<std::size_t>(g.num_vertices()), false);
  std::deque<int> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int e = 0; e < g.num_edges(); ++e) {
      const auto& ed = g.edge(e);
      if (ed.is_loop() || (ed.tail != u && ed.head != u)) continue;
      const int w = ed.tail == u ? ed.head : ed.tail;
      if (seen[static_cast<std::size_t>(w)]) continue;
      seen[static_cast<std::size_t>(w)] = true;
      tree[static_cast<std::size_t>(e)] = true;
      queue.push_back(w);
    }
  }
  return tree;
}

std::vector<std::int64_t> normalize_gluing(const DualGraph& g, std::span<const std::int64_t> gluing, std::int64_t r) {
  if (gluing.size() != static_cast<std::size_t>(g.num_edges())) {
    throw Error(ErrorKind::DimensionMismatch, "gluing vector length mismatch");
  }
  // alpha chosen so that beta_e + alpha_head - alpha_tail vanishes on tree edges.
  std::vector<std::int64_t> alpha(static_cast<std::size_t>(g.num_vertices()), 0);
  std::vector<bool> seen(static_cast<std::size_t>(g.num_vertices()), false);
  std::deque<int> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int e = 0; e < g.num_edges(); ++e) {
      const auto& ed = g.edge(e);
      if (ed.is_loop() || (ed.tail != u && ed.head != u)) continue;
      const int w = ed.tail == u ? ed.head : ed.tail;
      if (seen[static_cast<std::size_t>(w)]) continue;
      seen[static_cast<std::size_t>(w)] = true;
      const auto b = gluing[static_cast<std::size_t>(e)];
      const auto au = alpha[static_cast<std::size_t>(u)];
      alpha[static_cast<std::size_t>(w)] = mod_floor(w == ed.head ? au - b : au + b, r);
      queue.push_back(w);
    }
  }
  std::vector<std::int64_t> out(gluing.size());
  for (int e = 0; e < g.num_edges(); ++e) {
    const auto& ed = g.edge(e);
    out[static_cast<std::size_t>(e)] = mod_floor(gluing[static_cast<std::size_t>(e)] +
                                                     alpha[static_cast<std::size_t>(ed.head)] -
                                                     alpha[static_cast<std::size_t>(ed.tail)],
                                                 r);
  }
  return out;
}

BigInt ghost_group_order(const DualGraph& g) {
  BigInt order = 1;
  for (const auto& e : g.edges()) order *= e.stabilizer;
  return order;
}

namespace {

void require_rational(const DualGraph& g) {
  if (!all_rational(g)) throw Error(ErrorKind::NotRational, "root classes need every vertex of genus 0");
}

// beta shift of the ghost generator at e, in Z/r.
std::int64_t ghost_shift(const DualGraph& g, int e, std::int64_t mult, std::int64_t r) {
  const auto l = g.edge(e).stabilizer;
  if (l % r != 0) {
    throw Error(ErrorKind::StabilizerNotDivisible,
                "ghost action at edge " + std::to_string(e) + " needs r | l (r=" + std::to_string(r) +
                    ", l=" + std::to_string(l) + ")");
  }
  if ((mult * r) % l != 0) {
    throw Error(ErrorKind::StabilizerNotDivisible, "ghost twist at edge " + std::to_string(e) + " is not r-torsion");
  }
  return mod_floor(mult * r / l, r);
}

}  // namespace

RootClass ghost_act(const RootClass& c, int e, std::int64_t r) {
  const auto& g = *c.graph;
  if (e < 0 || e >= g.num_edges()) throw Error(ErrorKind::BadIndex, "edge " + std::to_string(e) + " out of range");
  auto beta = c.gluing;
  auto& b = beta[static_cast<std::size_t>(e)];
  b = mod_floor(b + ghost_shift(g, e, c.mult[static_cast<std::size_t>(e)], r), r);
  return RootClass{c.graph, c.mult, normalize_gluing(g, beta, r)};
}

RootClass involution_act(const RootClass& c, std::int64_t r) {
  const auto& g = *c.graph;
  RootClass out{c.graph, c.mult, c.gluing};
  for (int e = 0; e < g.num_edges(); ++e) {
    auto& m = out.mult[static_cast<std::size_t>(e)];
    m = mod_floor(-m, g.edge(e).stabilizer);
    auto& b = out.gluing[static_cast<std::size_t>(e)];
    b = mod_floor(-b, r);
  }
  out.gluing = normalize_gluing(g, out.gluing, r);
  return out;
}

std::vector<RootClass> enumerate_root_classes(const LineBundleData& F, std::int64_t r, const RootOptions& opts) {
  const auto& g = F.graph();
  require_rational(g);
  const auto roots = discrete_roots(F, r, opts);
  const auto tree = spanning_tree_edges(g);
  std::vector<int> free_edges;
  for (int e = 0; e < g.num_edges(); ++e) {
    if (!tree[static_cast<std::size_t>(e)]) free_edges.push_back(e);
  }
  const auto per_root = big_pow(r, static_cast<std::int64_t>(free_edges.size()));
  if (per_root * roots.size() > opts.max_domain) {
    throw Error(ErrorKind::DomainTooLarge, to_string(per_root * roots.size()) + " root classes exceed the cap " +
                                               std::to_string(opts.max_domain));
  }
  std::vector<RootClass> out;
  for (const auto& R : roots) {
    std::vector<std::int64_t> beta(static_cast<std::size_t>(g.num_edges()), 0);
    while (true) {
      out.push_back(RootClass{F.graph_ptr(), R.mult(), beta});
      std::size_t i = 0;
      for (; i < free_edges.size(); ++i) {
        auto& b = beta[static_cast<std::size_t>(free_edges[i])];
        if (++b < r) break;
        b = 0;
      }
      if (i == free_edges.size()) break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

OrbitResult orbit_count(const LineBundleData& F, std::int64_t r, const OrbitOptions& orbit_opts,
                        const RootOptions& opts) {
  const auto& g = F.graph();
  OrbitResult res;
  res.classes = enumerate_root_classes(F, r, opts);
  if (orbit_opts.exclude_trivial) {
    std::erase_if(res.classes, [](const RootClass& c) {
      return std::all_of(c.mult.begin(), c.mult.end(), [](auto m) { return m == 0; }) &&
             std::all_of(c.gluing.begin(), c.gluing.end(), [](auto b) { return b == 0; });
    });
  }
  const auto n = res.classes.size();
  std::map<RootClass, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index.emplace(res.classes[i], i);
  auto lookup = [&](const RootClass& c) {
    auto it = index.find(c);
    if (it == index.end()) throw Error(ErrorKind::InvalidArgument, "group action leaves the set of root classes");
    return it->second;
  };

  std::vector<int> active;
  for (int e = 0; e < g.num_edges(); ++e) {
    if (g.edge(e).stabilizer % r == 0) active.push_back(e);
  }
  // shift[i][k]: beta shift of the generator at active[k] on class i.
  std::vector<std::vector<std::int64_t>> shift(n, std::vector<std::int64_t>(active.size()));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < active.size(); ++k) {
      const int e = active[k];
      shift[i][k] = ghost_shift(g, e, res.classes[i].mult[static_cast<std::size_t>(e)], r);
    }
  }

  // Direct orbits by closure under the generators.
  std::vector<std::size_t> orbit_of(n, n);
  for (std::size_t s = 0; s < n; ++s) {
    if (orbit_of[s] != n) continue;
    const auto id = res.orbits.size();
    res.orbits.emplace_back();
    std::deque<std::size_t> queue{s};
    orbit_of[s] = id;
    while (!queue.empty()) {
      const auto i = queue.front();
      queue.pop_front();
      res.orbits[id].push_back(i);
      std::vector<RootClass> images;
      for (auto e : active) images.push_back(ghost_act(res.classes[i], e, r));
      if (orbit_opts.with_involution) images.push_back(involution_act(res.classes[i], r));
      for (const auto& img : images) {
        const auto j = lookup(img);
        if (orbit_of[j] == n) {
          orbit_of[j] = id;
          queue.push_back(j);
        }
      }
    }
    std::sort(res.orbits[id].begin(), res.orbits[id].end());
  }
  res.num_orbits = res.orbits.size();

  // Burnside over the abelian group prod_{active} Z/l_e (x Z/2).
  BigInt group = 1;
  for (auto e : active) group *= g.edge(e).stabilizer;
  if (orbit_opts.with_involution) group *= 2;
  res.group_order = group;
  if (group * n > orbit_opts.max_group_work) {
    throw Error(ErrorKind::DomainTooLarge, "Burnside check needs " + to_string(group * n) + " evaluations");
  }
  BigInt fixed_total = 0;
  std::vector<std::int64_t> a(active.size(), 0);
  const int flips = orbit_opts.with_involution ? 2 : 1;
  while (true) {
    for (int s = 0; s < flips; ++s) {
      for (std::size_t i = 0; i < n; ++i) {
        const auto& c = res.classes[i];
        auto beta = c.gluing;
        for (std::size_t k = 0; k < active.size(); ++k) {
          auto& b = beta[static_cast<std::size_t>(active[k])];
          b = mod_floor(b + a[k] * shift[i][k], r);
        }
        RootClass img{c.graph, c.mult, normalize_gluing(g, beta, r)};
        if (s == 1) img = involution_act(img, r);
        if (img == c) fixed_total += 1;
      }
    }
    std::size_t k = 0;
    for (; k < active.size(); ++k) {
      if (++a[k] < g.edge(active[k]).stabilizer) break;
      a[k] = 0;
    }
    if (k == active.size()) break;
  }
  if (fixed_total % group != 0) throw Error(ErrorKind::Internal, "Burnside sum not divisible by the group order");
  res.burnside_count = fixed_total / group;
  if (res.burnside_count != res.num_orbits) {
    throw Error(ErrorKind::Internal, "Burnside count " + to_string(res.burnside_count) + " disagrees with " +
                                         std::to_string(res.num_orbits) + " direct orbits");
  }
  return res;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::int64_t elliptic_torsion_orbits(std::int64_t r, int aut_order) {
  if (!is_prime(r) || r < 5) throw Error(ErrorKind::BadR, "r must be a prime >= 5, got " + std::to_string(r));
  std::array<std::int64_t, 4> m{};
  switch (aut_order) {
    case 2: m = {-1, 0, 0, -1}; break;
    case 4: m = {0, -1, 1, 0}; break;
    case 6: m = {0, -1, 1, 1}; break;
    default: throw Error(ErrorKind::BadAutOrder, "automorphism order must be 2, 4 or 6");
  }
  auto apply = [&](std::int64_t x, std::int64_t y) {
    return std::pair{mod_floor(m[0] * x + m[1] * y, r), mod_floor(m[2] * x + m[3] * y, r)};
  };
  std::vector<bool> seen(static_cast<std::size_t>(r * r), false);
  std::int64_t orbits = 0;
  for (std::int64_t x = 0; x < r; ++x) {
    for (std::int64_t y = 0; y < r; ++y) {
      if ((x == 0 && y == 0) || seen[static_cast<std::size_t>(x * r + y)]) continue;
      ++orbits;
      auto p = std::pair{x, y};
      while (!seen[static_cast<std::size_t>(p.first * r + p.second)]) {
        seen[static_cast<std::size_t>(p.first * r + p.second)] = true;
        p = apply(p.first, p.second);
      }
    }
  }
  std::int64_t fixed = 0;
  for (std::int64_t x = 0; x < r; ++x) {
    for (std::int64_t y = 0; y < r; ++y) {
      if (x == 0 && y == 0) continue;
      auto p = std::pair{x, y};
      for (int k = 0; k < aut_order; ++k) {
        if (p == std::pair{x, y}) ++fixed;
        p = apply(p.first, p.second);
      }
      if (p != std::pair{x, y}) throw Error(ErrorKind::Internal, "matrix order mismatch");
    }
  }
  if (fixed % aut_order != 0 || fixed / aut_order != orbits) {
    throw Error(ErrorKind::Internal, "Burnside count disagrees with direct orbits");
  }
  return orbits;
}

std::int64_t riemann_hurwitz_chi(std::int64_t degree, std::span<const std::int64_t> fibre_point_counts) {
  if (degree < 1) throw Error(ErrorKind::InvalidArgument, "degree must be positive");
  std::int64_t chi = 2 * degree;
  for (auto n : fibre_point_counts) {
    if (n > degree) {
      throw Error(ErrorKind::FibreExceedsDegree,
                  "fibre with " + std::to_string(n) + " points over a degree " + std::to_string(degree) + " map");
    }
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "fibre point counts must be positive");
    chi -= degree - n;
  }
  return chi;
}

DualGraph nodal_elliptic_fixture(std::int64_t r) {
  return DualGraph({Vertex{0, {1}}}, {Edge{0, 0, r}});
}

NrReport nr_report(std::int64_t r) {
  if (!is_prime(r) || r < 5) throw Error(ErrorKind::BadR, "r must be a prime >= 5, got " + std::to_string(r));
  NrReport rep;
  rep.r = r;
  rep.degree = (r * r - 1) / 2;
  rep.n_j1728 = elliptic_torsion_orbits(r, 4);
  rep.n_j0 = elliptic_torsion_orbits(r, 6);
  const auto omega = omega_twisted(share(nodal_elliptic_fixture(r)), 1);
  const auto cusp = orbit_count(omega, r, OrbitOptions{.with_involution = true, .exclude_trivial = true});
  rep.n_cusp = static_cast<std::int64_t>(cusp.num_orbits);
  if (rep.n_cusp != r - 1) {
    throw Error(ErrorKind::Internal, "cusp fibre has " + std::to_string(rep.n_cusp) + " points, expected r-1");
  }
  const std::array<std::int64_t, 3> fibres{rep.n_j1728, rep.n_j0, rep.n_cusp};
  rep.euler = riemann_hurwitz_chi(rep.degree, fibres);
  if (rep.euler % 2 != 0) throw Error(ErrorKind::Internal, "odd Euler characteristic");
  rep.genus_nr = 1 - rep.euler / 2;
  if (rep.genus_nr != (r - 5) * (r - 7) / 24) {
    throw Error(ErrorKind::Internal, "genus " + std::to_string(rep.genus_nr) + " disagrees with (r-5)(r-7)/24");
  }
  return rep;
}

bool cond_check(std::int64_t g, std::int64_t r, const MultiIndex& l, std::int64_t k) {
  if (r < 1) throw Error(ErrorKind::InvalidArgument, "r must be >= 1");
  if (g < 2) throw Error(ErrorKind::UnsupportedGenus, "condition check needs g >= 2");
  if (l.entries.size() != multi_index_length(g)) {
    throw Error(ErrorKind::MultiIndexLengthMismatch, "multi-index of length " + std::to_string(l.entries.size()) +
                                                         " for genus " + std::to_string(g));
  }
  if (mod_floor(checked_mul(2 * g - 2, k), r) != 0) {
    throw Error(ErrorKind::HypothesisViolated, "(2g-2)k is not divisible by r");
  }
  if (l.entries[0] % r != 0) return false;
  for (std::size_t i = 1; i < l.entries.size(); ++i) {
    const auto v = checked_mul(checked_mul(2 * static_cast<std::int64_t>(i) - 1, k), l.entries[i]);
    if (mod_floor(v, r) != 0) return false;
  }
  return true;
}

CondReport verify_cond(std::int64_t g, std::int64_t r, const MultiIndex& l, std::int64_t k, const RootOptions& opts,
                       std::size_t max_witnesses) {
  if (g < 2 || g > 4) throw Error(ErrorKind::UnsupportedGenus, "verify_cond supports g in {2,3,4}");
  CondReport rep;
  rep.hypothesis = mod_floor(checked_mul(2 * g - 2, k), r) == 0;
  if (l.entries.size() != multi_index_length(g)) {
    throw Error(ErrorKind::MultiIndexLengthMismatch, "multi-index length mismatch");
  }
  rep.predicted = rep.hypothesis && cond_check(g, r, l, k);
  rep.expected = big_pow(r, 2 * g);
  const auto graphs = enumerate_l_stable_graphs(g, 0, l);
  rep.graphs_checked = graphs.size();
  std::vector<LineBundleData> bundles;
  bundles.reserve(graphs.size());
  for (const auto& G : graphs) bundles.push_back(omega_twisted(share(G), k));
  const auto counts = count_roots_batch(bundles, r, opts, Exec::parallel);
  rep.all_full = true;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    if (counts[i] == rep.expected) continue;
    rep.all_full = false;
    if (rep.witnesses.size() < max_witnesses) rep.witnesses.push_back(CondWitness{graphs[i], counts[i]});
  }
  rep.equivalent = rep.predicted == rep.all_full;
  return rep;
}

BigRational aj_aut_ratio(std::int64_t r, std::span<const std::int64_t> node_stabilizers) {
  if (r < 1) throw Error(ErrorKind::InvalidArgument, "r must be >= 1");
  BigInt den = 1;
  for (auto d : node_stabilizers) {
    if (d < 1) throw Error(ErrorKind::InvalidArgument, "node stabilizers must be >= 1");
    den *= d;
  }
  return BigRational(big_pow(r, static_cast<std::int64_t>(node_stabilizers.size())), den);
}

}  // namespace twspin
