#include <doctest.h>

#include <map>
#include <random>

#include "oracles.hpp"
#include "twspin/enumerate.hpp"
#include "twspin/errors.hpp"
#include "twspin/orbits.hpp"

using namespace twspin;

namespace {

GraphPtr loop_fixture(std::int64_t l) { return share(nodal_elliptic_fixture(l)); }

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Internal;
}

// Orbits on raw pairs (mult, beta in (Z/r)^E) under coboundaries, ghost
// generators and optionally the involution, by union-find. Returns
// (number of coboundary classes, number of orbits).
std::pair<std::size_t, std::size_t> raw_orbits(const LineBundleData& F, std::int64_t r, bool involution,
                                                bool exclude_trivial) {
  const auto& g = F.graph();
  const auto roots = oracle::roots(F, r);
  const auto betas = oracle::all_elements(std::vector<std::int64_t>(static_cast<std::size_t>(g.num_edges()), r));
  std::map<std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>>, std::size_t> id;
  std::vector<std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>>> items;
  for (const auto& R : roots) {
    for (const auto& b : betas) {
      id[{R.mult(), b}] = items.size();
      items.emplace_back(R.mult(), b);
    }
  }
  std::vector<std::size_t> parent(items.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  auto unite = [&](std::size_t a, std::size_t b) { parent[find(a)] = find(b); };
  auto classes_only = [&] {
    std::set<std::size_t> s;
    for (std::size_t i = 0; i < items.size(); ++i) s.insert(find(i));
    return s;
  };
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& [mu, b] = items[i];
    for (int v = 0; v < g.num_vertices(); ++v) {
      auto c = b;
      for (int e = 0; e < g.num_edges(); ++e) {
        const auto& ed = g.edge(e);
        c[static_cast<std::size_t>(e)] =
            mod_floor(c[static_cast<std::size_t>(e)] + (ed.head == v) - (ed.tail == v), r);
      }
      unite(i, id.at({mu, c}));
    }
  }
  const auto trivial_class = items.empty() ? 0 : find(0);
  bool has_trivial = false;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& [mu, b] = items[i];
    if (std::all_of(mu.begin(), mu.end(), [](auto x) { return x == 0; }) &&
        std::all_of(b.begin(), b.end(), [](auto x) { return x == 0; }))
      has_trivial = true;
  }
  (void)trivial_class;
  const auto n_classes = classes_only().size();
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& [mu, b] = items[i];
    for (int e = 0; e < g.num_edges(); ++e) {
      const auto l = g.edge(e).stabilizer;
      if (l % r != 0) continue;
      auto c = b;
      c[static_cast<std::size_t>(e)] = mod_floor(c[static_cast<std::size_t>(e)] + r * mu[static_cast<std::size_t>(e)] / l, r);
      unite(i, id.at({mu, c}));
    }
    if (involution) {
      auto m2 = mu;
      for (int e = 0; e < g.num_edges(); ++e)
        m2[static_cast<std::size_t>(e)] = mod_floor(-m2[static_cast<std::size_t>(e)], g.edge(e).stabilizer);
      auto c = b;
      for (auto& x : c) x = mod_floor(-x, r);
      unite(i, id.at({m2, c}));
    }
  }
  auto orbits = classes_only().size();
  if (exclude_trivial && has_trivial) return {n_classes - 1, orbits - 1};
  return {n_classes, orbits};
}

}  // namespace

TEST_CASE("ghost group order") {
  CHECK(ghost_group_order(DualGraph({Vertex{2, {}}}, {})) == 1);
  CHECK(ghost_group_order(*loop_fixture(2)) == 2);
  CHECK(ghost_group_order(DualGraph({Vertex{0, {}}, Vertex{0, {}}}, {Edge{0, 1, 2}, Edge{0, 1, 3}, Edge{0, 1, 1}})) == 6);
}

TEST_CASE("ghost action examples") {
  const auto G = loop_fixture(2);
  CHECK(ghost_act(RootClass{G, {0}, {1}}, 0, 2) == RootClass{G, {0}, {1}});
  CHECK(ghost_act(RootClass{G, {1}, {0}}, 0, 2) == RootClass{G, {1}, {1}});
  const auto G3 = loop_fixture(3);
  for (std::int64_t b = 0; b < 3; ++b) {
    RootClass c{G3, {1}, {b}};
    CHECK(ghost_act(ghost_act(ghost_act(c, 0, 3), 0, 3), 0, 3) == c);
  }
  CHECK(kind_of([] { ghost_act(RootClass{loop_fixture(3), {0}, {0}}, 0, 2); }) == ErrorKind::StabilizerNotDivisible);
}

TEST_CASE("gluing normalization quotients by coboundaries") {
  const DualGraph theta({Vertex{0, {}}, Vertex{0, {}}}, {Edge{0, 1, 2}, Edge{0, 1, 2}, Edge{0, 1, 2}});
  const auto tree = spanning_tree_edges(theta);
  CHECK(tree == std::vector<bool>{true, false, false});
  // adding the coboundary of vertex 1 changes nothing
  CHECK(normalize_gluing(theta, std::vector<std::int64_t>{1, 1, 0}, 3) ==
        normalize_gluing(theta, std::vector<std::int64_t>{0, 0, 2}, 3));
  CHECK(normalize_gluing(theta, std::vector<std::int64_t>{1, 1, 0}, 3)[0] == 0);
}

TEST_CASE("root class enumeration examples") {
  const auto G = loop_fixture(2);
  const auto cls = enumerate_root_classes(LineBundleData::trivial(G), 2);
  REQUIRE(cls.size() == 4);
  CHECK(cls[0] == RootClass{G, {0}, {0}});
  CHECK(cls[1] == RootClass{G, {0}, {1}});
  CHECK(cls[2] == RootClass{G, {1}, {0}});
  CHECK(cls[3] == RootClass{G, {1}, {1}});

  const auto theta = share(DualGraph({Vertex{0, {}}, Vertex{0, {}}}, {Edge{0, 1, 1}, Edge{0, 1, 1}, Edge{0, 1, 1}}));
  CHECK(enumerate_root_classes(LineBundleData::trivial(theta), 2).size() == 4);

  // rational graph whose bridge fails: two loop vertices with a stabilizer-1 bridge
  const auto db = share(DualGraph({Vertex{0, {}}, Vertex{0, {}}}, {Edge{0, 0, 1}, Edge{0, 1, 1}, Edge{1, 1, 1}}));
  CHECK(enumerate_root_classes(omega_twisted(db, 1), 2).empty());

  CHECK(kind_of([] {
          enumerate_root_classes(LineBundleData::trivial(share(DualGraph({Vertex{1, {1}}}, {}))), 2);
        }) == ErrorKind::NotRational);
}

TEST_CASE("orbit examples") {
  const auto res = orbit_count(LineBundleData::trivial(loop_fixture(2)), 2);
  CHECK(res.num_orbits == 3);
  std::vector<std::size_t> sizes;
  for (const auto& o : res.orbits) sizes.push_back(o.size());
  CHECK(sizes == std::vector<std::size_t>{1, 1, 2});
  CHECK(res.orbits[2] == std::vector<std::size_t>{2, 3});

  for (std::int64_t r : {5, 7, 11, 13}) {
    const auto F = LineBundleData::trivial(loop_fixture(r));
    CHECK(orbit_count(F, r, OrbitOptions{.with_involution = true, .exclude_trivial = true}).num_orbits ==
          static_cast<std::size_t>(r - 1));
    CHECK(orbit_count(F, r, OrbitOptions{.with_involution = false, .exclude_trivial = true}).num_orbits ==
          static_cast<std::size_t>(2 * r - 2));
  }
  // unique class
  const auto single = share(DualGraph({Vertex{0, {1, 2, 3}}}, {}));
  CHECK(orbit_count(LineBundleData::trivial(single), 3).num_orbits == 1);
}

TEST_CASE("orbit counts agree with the raw union-find oracle") {
  std::mt19937_64 rng(31);
  int checked = 0;
  while (checked < 120) {
    const std::int64_t r = 2 + static_cast<std::int64_t>(rng() % 3);
    const auto G = share(oracle::random_graph(rng, 3, 2, {r, 2 * r, 1}, 0));
    std::int64_t domain = 1;
    for (const auto& e : G->edges()) domain *= r * e.stabilizer;
    if (domain > 20'000) continue;
    const auto F = LineBundleData::trivial(G);
    for (bool inv : {false, true}) {
      for (bool excl : {false, true}) {
        const auto res = orbit_count(F, r, OrbitOptions{.with_involution = inv, .exclude_trivial = excl});
        const auto [n_classes, n_orbits] = raw_orbits(F, r, inv, excl);
        CHECK(res.classes.size() == n_classes);
        CHECK(res.num_orbits == n_orbits);
        CHECK(res.burnside_count == res.num_orbits);
        std::size_t total = 0;
        for (const auto& o : res.orbits) total += o.size();
        CHECK(total == res.classes.size());
      }
    }
    CHECK(enumerate_root_classes(F, r).size() == count_roots(F, r));
    ++checked;
  }
}

TEST_CASE("ghost action laws on root classes") {
  std::mt19937_64 rng(37);
  for (int t = 0; t < 60; ++t) {
    const std::int64_t r = 2 + static_cast<std::int64_t>(rng() % 3);
    const auto G = share(oracle::random_graph(rng, 3, 2, {r, 2 * r}, 0));
    const auto classes = enumerate_root_classes(LineBundleData::trivial(G), r);
    for (const auto& c : classes) {
      for (int e = 0; e < G->num_edges(); ++e) {
        auto x = c;
        for (std::int64_t k = 0; k < G->edge(e).stabilizer; ++k) x = ghost_act(x, e, r);
        CHECK(x == c);
        for (int f = 0; f < G->num_edges(); ++f) {
          CHECK(ghost_act(ghost_act(c, e, r), f, r) == ghost_act(ghost_act(c, f, r), e, r));
        }
        CHECK(involution_act(ghost_act(c, e, r), r) == ghost_act(involution_act(c, r), e, r));
        if (std::all_of(c.mult.begin(), c.mult.end(), [](auto m) { return m == 0; })) {
          CHECK(ghost_act(c, e, r) == c);
        }
      }
    }
  }
}

TEST_CASE("elliptic torsion orbits") {
  CHECK(elliptic_torsion_orbits(11, 2) == 60);
  CHECK(elliptic_torsion_orbits(11, 4) == 30);
  CHECK(elliptic_torsion_orbits(11, 6) == 20);
  CHECK(elliptic_torsion_orbits(5, 2) == 12);
  for (std::int64_t r : {5, 7, 11, 13, 17, 19, 23}) {
    for (int a : {2, 4, 6}) CHECK(elliptic_torsion_orbits(r, a) == (r * r - 1) / a);
  }
  CHECK(kind_of([] { elliptic_torsion_orbits(11, 3); }) == ErrorKind::BadAutOrder);
  CHECK(kind_of([] { elliptic_torsion_orbits(9, 2); }) == ErrorKind::BadR);
  CHECK(kind_of([] { elliptic_torsion_orbits(3, 2); }) == ErrorKind::BadR);
}

TEST_CASE("Riemann-Hurwitz") {
  CHECK(riemann_hurwitz_chi(60, std::vector<std::int64_t>{30, 20, 10}) == 0);
  for (std::int64_t d = 1; d < 10; ++d) CHECK(riemann_hurwitz_chi(d, std::vector<std::int64_t>{}) == 2 * d);
  CHECK(riemann_hurwitz_chi(12, std::vector<std::int64_t>{6, 4, 4}) == 2);
  CHECK(kind_of([] { riemann_hurwitz_chi(5, std::vector<std::int64_t>{6}); }) == ErrorKind::FibreExceedsDegree);
}

TEST_CASE("spin curve report") {
  const auto rep = nr_report(11);
  CHECK(rep.degree == 60);
  CHECK(rep.n_j1728 == 30);
  CHECK(rep.n_j0 == 20);
  CHECK(rep.n_cusp == 10);
  CHECK(rep.euler == 0);
  CHECK(rep.genus_nr == 1);
  for (std::int64_t r : {5, 7, 11, 13, 17, 19, 23}) {
    const auto x = nr_report(r);
    CHECK(x.genus_nr == (r - 5) * (r - 7) / 24);
    CHECK(x.euler == -x.degree + x.n_j1728 + x.n_j0 + x.n_cusp);
    CHECK(x.genus_nr == 1 - x.euler / 2);
  }
  CHECK(nr_report(13).genus_nr == 2);
  CHECK(kind_of([] { nr_report(9); }) == ErrorKind::BadR);
  CHECK(kind_of([] { nr_report(3); }) == ErrorKind::BadR);
}

TEST_CASE("cond_check") {
  CHECK(cond_check(2, 2, MultiIndex{{2, 2}}, 1));
  CHECK_FALSE(cond_check(2, 2, MultiIndex{{2, 1}}, 1));
  for (std::int64_t g = 2; g <= 4; ++g) {
    for (std::int64_t r = 2; r <= 6; ++r) {
      if ((2 * g - 2) % r) continue;
      CHECK_FALSE(cond_check(g, r, MultiIndex{std::vector<std::int64_t>(multi_index_length(g), 1)}, 1));
    }
  }
  CHECK(kind_of([] { cond_check(2, 3, MultiIndex{{3, 3}}, 1); }) == ErrorKind::HypothesisViolated);
  CHECK(kind_of([] { cond_check(2, 2, MultiIndex{{2}}, 1); }) == ErrorKind::MultiIndexLengthMismatch);
  // k = 0 reduces to r | l_0
  CHECK(cond_check(3, 3, MultiIndex{{3, 1}}, 0));
  CHECK_FALSE(cond_check(3, 3, MultiIndex{{1, 3}}, 0));
}

TEST_CASE("verify_cond examples") {
  const auto ok = verify_cond(2, 2, MultiIndex{{2, 2}}, 1);
  CHECK(ok.equivalent);
  CHECK(ok.all_full);
  CHECK(ok.witnesses.empty());
  CHECK(ok.graphs_checked == 7);

  const auto bridge = verify_cond(2, 2, MultiIndex{{2, 1}}, 1);
  CHECK(bridge.equivalent);
  const DualGraph g11({Vertex{1, {}}, Vertex{1, {}}}, {Edge{0, 1, 1}});
  bool found = false;
  for (const auto& w : bridge.witnesses) {
    if (canonical_form(w.graph) == canonical_form(g11)) {
      found = true;
      CHECK(w.count == 0);
    }
  }
  CHECK(found);

  const auto dm = verify_cond(2, 2, MultiIndex{{1, 1}}, 1);
  CHECK(dm.equivalent);
  const DualGraph loop({Vertex{1, {}}}, {Edge{0, 0, 1}});
  found = false;
  for (const auto& w : dm.witnesses) {
    if (canonical_form(w.graph) == canonical_form(loop)) {
      found = true;
      CHECK(w.count == 8);
    }
  }
  CHECK(found);
}

TEST_CASE("automorphism ratio") {
  CHECK(aj_aut_ratio(5, std::vector<std::int64_t>{}) == 1);
  CHECK(aj_aut_ratio(4, std::vector<std::int64_t>{2, 2}) == 4);
  CHECK(aj_aut_ratio(2, std::vector<std::int64_t>{2}) == 1);
  CHECK(aj_aut_ratio(3, std::vector<std::int64_t>{2}) == BigRational(3, 2));
  CHECK_THROWS_AS(aj_aut_ratio(3, std::vector<std::int64_t>{0}), Error);
}
