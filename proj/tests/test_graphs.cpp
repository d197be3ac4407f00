#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "twspin/enumerate.hpp"
#include "twspin/errors.hpp"
#include "twspin/graph.hpp"

using namespace twspin;

namespace {

DualGraph theta() { return DualGraph({Vertex{0, {}}, Vertex{0, {}}}, {Edge{0, 1, 1}, Edge{0, 1, 1}, Edge{0, 1, 1}}); }

DualGraph dumbbell() {
  return DualGraph({Vertex{0, {}}, Vertex{0, {}}}, {Edge{0, 0, 1}, Edge{0, 1, 1}, Edge{1, 1, 1}});
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Internal;
}

}  // namespace

TEST_CASE("genus examples") {
  CHECK(genus(DualGraph({Vertex{2, {}}}, {})) == 2);
  for (std::int64_t g0 = 0; g0 < 4; ++g0) CHECK(genus(DualGraph({Vertex{g0, {}}}, {Edge{0, 0, 1}})) == g0 + 1);
  CHECK(genus(theta()) == 2);
  CHECK(betti_number(theta()) == 2);
}

TEST_CASE("construction rejects invalid graphs") {
  CHECK(kind_of([] { DualGraph({Vertex{0, {}}, Vertex{0, {}}}, {}); }) == ErrorKind::DisconnectedGraph);
  CHECK(kind_of([] { DualGraph({Vertex{0, {}}, Vertex{0, {}}}, {Edge{0, 5, 1}}); }) == ErrorKind::BadIndex);
  CHECK(kind_of([] { DualGraph({Vertex{0, {}}}, {Edge{0, 0, 0}}); }) != ErrorKind::Internal);
  CHECK(kind_of([] { DualGraph({Vertex{0, {1}}, Vertex{0, {1}}}, {Edge{0, 1, 1}}); }) != ErrorKind::Internal);
  CHECK(kind_of([] { DualGraph({}, {}); }) != ErrorKind::Internal);
  CHECK(kind_of([] { DualGraph({Vertex{-1, {}}}, {}); }) != ErrorKind::Internal);
}

TEST_CASE("classify_node examples") {
  const DualGraph loop({Vertex{1, {}}}, {Edge{0, 0, 1}});
  CHECK_FALSE(classify_node(loop, 0).separating);
  CHECK(classify_node(loop, 0).index == 0);

  for (std::int64_t g = 2; g <= 5; ++g) {
    const DualGraph b({Vertex{g - 1, {}}, Vertex{1, {}}}, {Edge{0, 1, 1}});
    const auto t = classify_node(b, 0);
    CHECK(t.separating);
    CHECK(t.index == 1);
    CHECK(t.plus_vertices == std::vector<int>{1});
    CHECK(t.minus_vertices == std::vector<int>{0});
  }
  const auto mid = classify_node(dumbbell(), 1);
  CHECK(mid.separating);
  CHECK(mid.index == 1);
  CHECK(mid.plus_edges == std::vector<int>{2});
  CHECK(mid.minus_edges == std::vector<int>{0});
}

TEST_CASE("is_stable examples") {
  CHECK(is_stable(DualGraph({Vertex{0, {1}}}, {Edge{0, 0, 1}})));
  CHECK_FALSE(is_stable(DualGraph({Vertex{0, {}}, Vertex{2, {}}}, {Edge{0, 1, 1}})));
  CHECK_FALSE(is_stable(DualGraph({Vertex{1, {}}}, {})));
}

TEST_CASE("is_l_stable examples") {
  CHECK(is_l_stable(theta(), MultiIndex{{1, 1}}));
  const DualGraph loop2({Vertex{0, {1}}}, {Edge{0, 0, 2}});
  CHECK(is_l_stable(loop2, MultiIndex{{2}}));
  CHECK_FALSE(is_l_stable(loop2, MultiIndex{{3}}));
  CHECK(kind_of([&] { is_l_stable(loop2, MultiIndex{{2, 2}}); }) == ErrorKind::MultiIndexLengthMismatch);
  const DualGraph bridge({Vertex{1, {}}, Vertex{1, {}}}, {Edge{0, 1, 2}});
  CHECK(is_l_stable(bridge, MultiIndex{{5, 2}}));
  CHECK_FALSE(is_l_stable(bridge, MultiIndex{{2, 1}}));
}

TEST_CASE("generated graphs have the requested genus, are stable, and bridges match side partitions") {
  for (std::int64_t g : {2, 3}) {
    for (const auto& G : enumerate_stable_graphs(g, 0, std::vector<std::int64_t>{1, 2})) {
      CHECK(genus(G) == g);
      CHECK(genus(G) == 1 - G.num_vertices() + G.num_edges() + vertex_genus_sum(G));
      CHECK(is_stable(G));
      const auto bridges = find_bridges(G);
      for (int e = 0; e < G.num_edges(); ++e) {
        const auto t = classify_node(G, e);
        CHECK(t.separating == bridges[static_cast<std::size_t>(e)]);
        if (t.separating) {
          CHECK(t.plus_edges.size() + t.minus_edges.size() + 1 == static_cast<std::size_t>(G.num_edges()));
          CHECK(t.plus_vertices.size() + t.minus_vertices.size() == static_cast<std::size_t>(G.num_vertices()));
        }
      }
    }
  }
}

TEST_CASE("classify_node is orientation independent") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto G = oracle::random_graph(rng, 5, 3);
    for (int e = 0; e < G.num_edges(); ++e) {
      const auto a = classify_node(G, e);
      const auto b = classify_node(G.with_edge_flipped(e), e);
      CHECK(a.separating == b.separating);
      CHECK(a.index == b.index);
      if (a.separating && !G.edge(e).is_loop()) {
        CHECK(a.plus_vertices == b.minus_vertices);
        CHECK(a.minus_vertices == b.plus_vertices);
      }
    }
  }
}
