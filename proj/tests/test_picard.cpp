#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "twspin/enumerate.hpp"
#include "twspin/errors.hpp"
#include "twspin/picard.hpp"
#include "twspin/sweep.hpp"

using namespace twspin;

namespace {

GraphPtr loop_fixture(std::int64_t l) { return share(DualGraph({Vertex{0, {1}}}, {Edge{0, 0, l}})); }

GraphPtr bridge(std::int64_t g_minus, std::int64_t g_plus, std::int64_t l) {
  return share(DualGraph({Vertex{g_minus, {}}, Vertex{g_plus, {}}}, {Edge{0, 1, l}}));
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Internal;
}

LineBundleData flip_all(const LineBundleData& L, std::mt19937_64& rng) {
  auto out = L;
  for (int e = 0; e < L.graph().num_edges(); ++e) {
    if (rng() % 2) out = flip_edge(out, e);
  }
  return out;
}

}  // namespace

TEST_CASE("omega_twisted examples") {
  const auto w = omega_twisted(loop_fixture(2), 1);
  CHECK(w.int_part() == std::vector<std::int64_t>{0});
  CHECK(w.mult() == std::vector<std::int64_t>{0});
  for (std::int64_t g = 2; g <= 5; ++g) {
    const auto b = omega_twisted(bridge(g - 1, 1, 1), 1);
    CHECK(b.int_part() == std::vector<std::int64_t>{2 * g - 3, 1});
    CHECK(total_degree(b) == 2 * g - 2);
  }
  std::mt19937_64 rng(1);
  for (int t = 0; t < 50; ++t) {
    const auto G = share(oracle::random_graph(rng));
    const auto O = omega_twisted(G, 0);
    CHECK(O == LineBundleData::trivial(G));
    CHECK(total_degree(omega_twisted(G, 3)) == 3 * (2 * genus(*G) - 2));
  }
  const auto twisted = omega_twisted(loop_fixture(1), 1, {{1, 3}});
  CHECK(twisted.int_part() == std::vector<std::int64_t>{-3});
  CHECK(kind_of([] { omega_twisted(loop_fixture(1), 1, {{9, 1}}); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("degree examples") {
  const LineBundleData a(loop_fixture(2), {0}, {1});
  CHECK(vertex_degree(a, 0) == 1);
  CHECK(total_degree(a) == 1);
  const LineBundleData b(bridge(0, 0, 3), {0, 0}, {1});
  CHECK(vertex_degree(b, 1) == Rational(1, 3));
  CHECK(vertex_degree(b, 0) == Rational(2, 3));
  CHECK(total_degree(b) == 1);
  CHECK(kind_of([] { LineBundleData(loop_fixture(2), {0}, {2}); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { LineBundleData(loop_fixture(2), {0, 0}, {1}); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("degree invariants on random bundles") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 300; ++t) {
    const auto G = share(oracle::random_graph(rng));
    const auto L = random_bundle(G, 1 + static_cast<std::int64_t>(rng() % 6), rng);
    Rational sum = 0;
    for (int v = 0; v < G->num_vertices(); ++v) {
      const auto d = vertex_degree(L, v);
      CHECK((d - branch_fraction(*G, L.mult(), v)).is_integer());
      sum += d;
    }
    CHECK(sum.is_integer());
    CHECK(sum.num() == total_degree(L));
  }
}

TEST_CASE("rth_power examples and functoriality") {
  const auto p = rth_power(LineBundleData(loop_fixture(2), {0}, {1}), 2);
  CHECK(p.mult() == std::vector<std::int64_t>{0});
  CHECK(p.int_part() == std::vector<std::int64_t>{2});
  const auto q = rth_power(LineBundleData(bridge(0, 0, 3), {0, 0}, {1}), 3);
  CHECK(q.mult() == std::vector<std::int64_t>{0});
  CHECK(q.int_part() == std::vector<std::int64_t>{2, 1});

  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    const auto G = share(oracle::random_graph(rng));
    const auto L = random_bundle(G, 2, rng);
    CHECK(rth_power(L, 1) == L);
    const std::int64_t a = 1 + static_cast<std::int64_t>(rng() % 4), b = 1 + static_cast<std::int64_t>(rng() % 4);
    CHECK(rth_power(rth_power(L, a), b) == rth_power(L, a * b));
    const auto P = rth_power(L, a);
    for (int v = 0; v < G->num_vertices(); ++v) CHECK(vertex_degree(P, v) == vertex_degree(L, v) * Rational(a));
    CHECK(tensor(L, tensor_power(L, -1)) == LineBundleData::trivial(G));
  }
}

TEST_CASE("delta_embed examples") {
  const auto loop = delta_embed(*loop_fixture(4), 6);
  CHECK(loop.matrix()(0, 0) == 0);
  CHECK(loop.domain_moduli() == std::vector<std::int64_t>{2});
  for (std::int64_t r = 2; r <= 6; ++r) {
    const auto d = delta_embed(*bridge(1, 1, r), r);
    CHECK(d.matrix()(0, 0) == -1);
    CHECK(d.matrix()(1, 0) == 1);
    CHECK(d.domain_moduli() == std::vector<std::int64_t>{r});
  }
  const auto d = delta_embed(*bridge(1, 1, 2), 4);
  CHECK(d.matrix()(0, 0) == -2);
  CHECK(d.matrix()(1, 0) == 2);
  CHECK(d.domain_moduli() == std::vector<std::int64_t>{2});
}

TEST_CASE("torsion_count examples") {
  for (std::int64_t g = 1; g <= 4; ++g) {
    for (std::int64_t r = 2; r <= 5; ++r) {
      CHECK(torsion_count(DualGraph({Vertex{g, {}}}, {}), r) == big_pow(r, 2 * g));
      CHECK(torsion_count(DualGraph({Vertex{g - 1, {}}}, {Edge{0, 0, 1}}), r) == big_pow(r, 2 * g - 1));
    }
  }
  CHECK(torsion_count(*loop_fixture(2), 2) == 4);
}

TEST_CASE("count_roots examples") {
  for (std::int64_t g = 2; g <= 4; ++g) {
    for (std::int64_t r = 2; r <= 6; ++r) {
      CHECK(count_roots(omega_twisted(bridge(g - 1, 1, 1), 1), r) == 0);
      if ((2 * g - 2) % r == 0) CHECK(count_roots(omega_twisted(bridge(g - 1, 1, r), 1), r) == big_pow(r, 2 * g));
    }
  }
  for (std::int64_t r : {2, 3, 5}) CHECK(count_roots(omega_twisted(loop_fixture(r), 1), r) == r * r);
  // total degree not divisible by r gives no roots
  CHECK(count_roots(LineBundleData(loop_fixture(1), {1}, {0}), 2) == 0);
}

TEST_CASE("count_roots matches the scan-everything oracle and the torsor property") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 400; ++t) {
    const auto G = share(oracle::random_graph(rng, 4, 2));
    const std::int64_t r = 2 + static_cast<std::int64_t>(rng() % 5);
    const auto F = random_bundle(G, r, rng);
    const auto n = count_roots(F, r);
    CHECK(n == oracle::root_count(F, r));
    CHECK((n == 0 || n == torsion_count(*G, r)));
    const auto roots = discrete_roots(F, r);
    for (const auto& R : roots) CHECK(rth_power(R, r) == F);
    CHECK(roots.size() == oracle::roots(F, r).size());
  }
}

TEST_CASE("torsion count equals the number of roots of the trivial bundle") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    const auto G = share(oracle::random_graph(rng, 4, 3));
    const std::int64_t r = 2 + static_cast<std::int64_t>(rng() % 5);
    CHECK(torsion_count(*G, r) == oracle::root_count(LineBundleData::trivial(G), r));
  }
}

TEST_CASE("count_roots respects the domain cap") {
  std::vector<Edge> es;
  for (int i = 0; i < 8; ++i) es.push_back(Edge{0, 0, 6});
  const auto G = share(DualGraph({Vertex{0, {}}}, es));
  CHECK(kind_of([&] { count_roots(LineBundleData::trivial(G), 6); }) == ErrorKind::DomainTooLarge);
  CHECK(count_roots(LineBundleData::trivial(G), 6, RootOptions{.max_domain = 2'000'000}) == big_pow(6, 16));
}

TEST_CASE("criterion examples") {
  CHECK(rootsnum_criterion(LineBundleData::trivial(loop_fixture(3)), 3).holds);
  const auto fail = rootsnum_criterion(omega_twisted(bridge(1, 1, 1), 1), 2);
  CHECK_FALSE(fail.holds);
  REQUIRE(fail.failures.size() == 1);
  CHECK(fail.failures[0].separating);
  for (std::int64_t g = 2; g <= 4; ++g) {
    for (std::int64_t r = 2; r <= 6; ++r) {
      if ((2 * g - 2) % r) continue;
      for (std::int64_t i = 1; i <= g / 2; ++i) CHECK(rootsnum_criterion(omega_twisted(bridge(g - i, i, r), 1), r).holds);
    }
  }
  CHECK(kind_of([] { rootsnum_criterion(LineBundleData(loop_fixture(1), {1}, {0}), 2); }) ==
        ErrorKind::HypothesisViolated);
}

TEST_CASE("criterion is equivalent to a full root count on genus-2 graphs") {
  std::mt19937_64 rng(6);
  const auto graphs = enumerate_stable_graphs(2, 0, std::vector<std::int64_t>{1, 2, 3, 4, 6});
  for (std::int64_t r : {2, 3, 4, 6}) {
    for (const auto& g : graphs) {
      const auto G = share(g);
      std::vector<LineBundleData> fs{omega_twisted(G, 1), omega_twisted(G, 2), LineBundleData::trivial(G)};
      for (int s = 0; s < 5; ++s) fs.push_back(random_bundle(G, r, rng));
      for (const auto& F : fs) {
        if (mod_floor(total_degree(F), r) != 0) continue;
        CHECK(rootsnum_criterion(F, r).holds == (count_roots(F, r) == big_pow(r, 4)));
      }
    }
  }
}

TEST_CASE("comb examples") {
  const auto b2 = bridge(0, 0, 2);
  CHECK(comb_membership(*b2, 2, std::vector<std::int64_t>{0, 0}));
  CHECK(comb_lift(*b2, 2, std::vector<std::int64_t>{0, 0}) == std::vector<std::int64_t>{0});
  CHECK(comb_membership(*b2, 2, std::vector<std::int64_t>{1, 1}));
  CHECK(comb_lift(*b2, 2, std::vector<std::int64_t>{1, 1}) == std::vector<std::int64_t>{1});
  const auto b1 = bridge(0, 0, 1);
  CHECK_FALSE(comb_membership(*b1, 2, std::vector<std::int64_t>{1, 1}));
  CHECK_FALSE(comb_lift(*b1, 2, std::vector<std::int64_t>{1, 1}));
  CHECK(kind_of([&] { comb_membership(*b1, 2, std::vector<std::int64_t>{1, 0}); }) == ErrorKind::AugmentationNonzero);
  CHECK(kind_of([] { comb_membership(*loop_fixture(3), 2, std::vector<std::int64_t>{0}); }) ==
        ErrorKind::HypothesisViolated);
}

TEST_CASE("comb membership agrees with image membership and lifts are preimages") {
  std::mt19937_64 rng(8);
  int tested = 0;
  while (tested < 300) {
    const std::int64_t r = 2 + static_cast<std::int64_t>(rng() % 5);
    auto G = oracle::random_graph(rng, 5, 3, {1, 2, 3, 4, 6, 12});
    // raise nonseparating stabilizers to multiples of r
    std::vector<std::int64_t> stabs;
    const auto bridges = find_bridges(G);
    for (int e = 0; e < G.num_edges(); ++e) {
      auto l = G.edge(e).stabilizer;
      if (!bridges[static_cast<std::size_t>(e)] && l % r) l *= r / std::gcd(l, r);
      stabs.push_back(l);
    }
    G = G.with_stabilizers(stabs);
    std::vector<std::int64_t> t(static_cast<std::size_t>(G.num_vertices()));
    std::int64_t sum = 0;
    for (auto& x : t) sum += (x = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(r)));
    t[0] = mod_floor(t[0] - sum, r);
    const auto member = comb_membership(G, r, t);
    CHECK(member == hom_image_contains(delta_embed(G, r), t).has_value());
    const auto x = comb_lift(G, r, t);
    CHECK(x.has_value() == member);
    if (x) CHECK(delta_embed(G, r).apply(*x) == t);
    ++tested;
  }
}

TEST_CASE("construct_root") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 300; ++t) {
    const auto G = share(oracle::random_graph(rng, 4, 2));
    const std::int64_t r = 2 + static_cast<std::int64_t>(rng() % 5);
    const auto F = rth_power(random_bundle(G, r, rng), r);
    const auto R = construct_root(F, r);
    REQUIRE(R);
    CHECK(rth_power(*R, r) == F);
    const auto F2 = random_bundle(G, r, rng);
    const auto R2 = construct_root(F2, r);
    CHECK(R2.has_value() == (count_roots(F2, r) > 0));
  }
  for (std::int64_t g = 2; g <= 4; ++g) CHECK_FALSE(construct_root(omega_twisted(bridge(g - 1, 1, 1), 1), 2));
  const auto R = construct_root(LineBundleData::trivial(loop_fixture(2)), 2);
  REQUIRE(R);
  const bool a = R->mult() == std::vector<std::int64_t>{0} && R->int_part() == std::vector<std::int64_t>{0};
  const bool b = R->mult() == std::vector<std::int64_t>{1} && R->int_part() == std::vector<std::int64_t>{-1};
  CHECK((a || b));
}

TEST_CASE("coprime split and combine are inverse") {
  std::mt19937_64 rng(10);
  for (auto [r1, r2] : {std::pair<std::int64_t, std::int64_t>{2, 3}, {3, 4}, {2, 5}}) {
    for (int t = 0; t < 40; ++t) {
      const auto G = share(oracle::random_graph(rng, 3, 2));
      std::int64_t dom = 1;
      for (const auto& e : G->edges()) dom *= std::gcd(e.stabilizer, r1 * r2);
      if (dom > 1000) continue;
      const auto F = rth_power(random_bundle(G, r1 * r2, rng), r1 * r2);
      for (const auto& L : discrete_roots(F, r1 * r2, RootOptions{.max_domain = 1000})) {
        const auto [l1, l2] = split_coprime(L, r1, r2);
        CHECK(rth_power(l1, r1) == F);
        CHECK(rth_power(l2, r2) == F);
        CHECK(combine_coprime(l1, l2, r1, r2) == L);
      }
    }
  }
  const auto G = loop_fixture(6);
  const auto I = LineBundleData::trivial(G);
  CHECK(combine_coprime(I, I, 2, 3) == I);
  CHECK(kind_of([&] { split_coprime(I, 2, 4); }) == ErrorKind::NotCoprime);
  CHECK(kind_of([&] { combine_coprime(I, LineBundleData::trivial(loop_fixture(3)), 2, 3); }) == ErrorKind::GraphMismatch);
}

TEST_CASE("orientation independence") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 200; ++t) {
    const auto G = share(oracle::random_graph(rng, 4, 3));
    const std::int64_t r = 2 + static_cast<std::int64_t>(rng() % 5);
    const auto F = random_bundle(G, r, rng);
    const auto H = flip_all(F, rng);
    CHECK(vertex_degrees(F) == vertex_degrees(H));
    CHECK(total_degree(F) == total_degree(H));
    CHECK(torsion_count(F.graph(), r) == torsion_count(H.graph(), r));
    CHECK(count_roots(F, r) == count_roots(H, r));
    CHECK(rootsnum_criterion(F, r).holds == rootsnum_criterion(H, r).holds);
  }
}

TEST_CASE("full-divisibility regime identities") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 100; ++t) {
    const std::int64_t r = 2 + static_cast<std::int64_t>(rng() % 4);
    const auto G = oracle::random_graph(rng, 4, 3, {r, 2 * r});
    const auto d = delta_embed(G, r);
    CHECK(oracle::image(d).size() == big_pow(r, G.num_vertices() - 1));
    CHECK(torsion_count(G, r) == big_pow(r, 2 * vertex_genus_sum(G) + 2 * betti_number(G)));
  }
}
