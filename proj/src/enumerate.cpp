#include "twspin/enumerate.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include "twspin/errors.hpp"

namespace twspin {

namespace {

using EdgeKey = std::tuple<int, int, std::int64_t>;

std::vector<int> refine_colors(const DualGraph& g) {
  const int n = g.num_vertices();
  using Sig = std::vector<std::int64_t>;
  std::vector<Sig> sig(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    const auto& vx = g.vertex(v);
    Sig s{vx.genus, static_cast<std::int64_t>(vx.legs.size())};
    std::vector<std::int64_t> loops;
    for (const auto& e : g.edges()) {
      if (e.is_loop() && e.tail == v) loops.push_back(e.stabilizer);
    }
    std::sort(loops.begin(), loops.end());
    s.push_back(static_cast<std::int64_t>(loops.size()));
    s.insert(s.end(), loops.begin(), loops.end());
    sig[static_cast<std::size_t>(v)] = std::move(s);
  }

  auto assign = [&](const std::vector<Sig>& sigs) {
    std::vector<Sig> distinct = sigs;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::vector<int> color(sigs.size());
    for (std::size_t v = 0; v < sigs.size(); ++v) {
      color[v] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), sigs[v]) - distinct.begin());
    }
    return std::make_pair(color, distinct.size());
  };

  auto [color, classes] = assign(sig);
  while (true) {
    std::vector<Sig> next(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
      std::vector<std::pair<std::int64_t, std::int64_t>> nbrs;
      for (const auto& e : g.edges()) {
        if (e.is_loop()) continue;
        if (e.tail == v) nbrs.emplace_back(color[static_cast<std::size_t>(e.head)], e.stabilizer);
        if (e.head == v) nbrs.emplace_back(color[static_cast<std::size_t>(e.tail)], e.stabilizer);
      }
      std::sort(nbrs.begin(), nbrs.end());
      Sig s{color[static_cast<std::size_t>(v)]};
      for (auto [c, l] : nbrs) {
        s.push_back(c);
        s.push_back(l);
      }
      next[static_cast<std::size_t>(v)] = std::move(s);
    }
    auto [c2, k2] = assign(next);
    color = std::move(c2);
    if (k2 == classes) break;
    classes = k2;
  }
  return color;
}

std::vector<EdgeKey> encode(const DualGraph& g, const std::vector<int>& pos) {
  std::vector<EdgeKey> out;
  out.reserve(g.edges().size());
  for (const auto& e : g.edges()) {
    int a = pos[static_cast<std::size_t>(e.tail)], b = pos[static_cast<std::size_t>(e.head)];
    if (a > b) std::swap(a, b);
    out.emplace_back(a, b, e.stabilizer);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string label_string(const DualGraph& g, const std::vector<int>& pos, const std::vector<EdgeKey>& enc) {
  std::vector<int> at(pos.size());
  for (std::size_t v = 0; v < pos.size(); ++v) at[static_cast<std::size_t>(pos[v])] = static_cast<int>(v);
  std::string s = "E" + std::to_string(g.num_edges()) + "V" + std::to_string(g.num_vertices()) + ":";
  for (int old : at) {
    const auto& vx = g.vertex(old);
    s += "(" + std::to_string(vx.genus) + "," + std::to_string(vx.legs.size()) + ")";
  }
  s += "|";
  for (const auto& [a, b, l] : enc) {
    s += std::to_string(a) + "-" + std::to_string(b) + ":" + std::to_string(l) + ";";
  }
  return s;
}

}  // namespace

CanonicalLabel canonical_labeling(const DualGraph& g, int max_vertices) {
  if (g.num_vertices() > max_vertices) {
    throw Error(ErrorKind::SizeLimitExceeded, "graph has " + std::to_string(g.num_vertices()) +
                                                  " vertices, canonical form bound is " + std::to_string(max_vertices));
  }
  const auto color = refine_colors(g);
  const auto n = static_cast<std::size_t>(g.num_vertices());

  // Blocks of vertices sharing a colour, in colour order.
  int num_colors = *std::max_element(color.begin(), color.end()) + 1;
  std::vector<std::vector<int>> blocks(static_cast<std::size_t>(num_colors));
  for (std::size_t v = 0; v < n; ++v) blocks[static_cast<std::size_t>(color[v])].push_back(static_cast<int>(v));

  std::vector<int> pos(n);
  std::vector<EdgeKey> best;
  std::vector<int> best_pos;
  bool have = false;

  std::function<void(std::size_t, int)> search = [&](std::size_t b, int offset) {
    if (b == blocks.size()) {
      auto enc = encode(g, pos);
      if (!have || enc < best) {
        best = std::move(enc);
        best_pos = pos;
        have = true;
      }
      return;
    }
    auto& block = blocks[b];
    std::sort(block.begin(), block.end());
    do {
      for (std::size_t i = 0; i < block.size(); ++i) pos[static_cast<std::size_t>(block[i])] = offset + static_cast<int>(i);
      search(b + 1, offset + static_cast<int>(block.size()));
    } while (std::next_permutation(block.begin(), block.end()));
  };
  search(0, 0);

  return {label_string(g, best_pos, best), best_pos};
}

std::string canonical_form(const DualGraph& g, int max_vertices) { return canonical_labeling(g, max_vertices).label; }

DualGraph canonicalize(const DualGraph& g, int max_vertices) {
  auto lab = canonical_labeling(g, max_vertices);
  const auto n = static_cast<std::size_t>(g.num_vertices());
  std::vector<Vertex> vs(n);
  for (std::size_t v = 0; v < n; ++v) {
    vs[static_cast<std::size_t>(lab.new_index[v])].genus = g.vertex(static_cast<int>(v)).genus;
    vs[static_cast<std::size_t>(lab.new_index[v])].legs.resize(g.vertex(static_cast<int>(v)).legs.size());
  }
  std::int64_t next_leg = 1;
  for (auto& vx : vs) {
    for (auto& id : vx.legs) id = next_leg++;
  }
  std::vector<Edge> es;
  for (const auto& [a, b, l] : encode(g, lab.new_index)) es.push_back(Edge{a, b, l});
  return DualGraph(std::move(vs), std::move(es));
}

namespace {

bool vertex_stable(std::int64_t genus, int valence, std::size_t legs) {
  return 2 * genus - 2 + valence + static_cast<std::int64_t>(legs) > 0;
}

// All stable one-edge degenerations of g.
std::vector<DualGraph> degenerations(const DualGraph& g) {
  std::vector<DualGraph> out;
  const int n = g.num_vertices();
  for (int v = 0; v < n; ++v) {
    const auto& vx = g.vertex(v);
    if (vx.genus >= 1) {
      auto vs = g.vertices();
      vs[static_cast<std::size_t>(v)].genus -= 1;
      auto es = g.edges();
      es.push_back(Edge{v, v, 1});
      out.emplace_back(std::move(vs), std::move(es));
    }

    // Half-edges at v: (edge index, is_head_end).
    std::vector<std::pair<int, bool>> halves;
    for (int e = 0; e < g.num_edges(); ++e) {
      if (g.edge(e).tail == v) halves.emplace_back(e, false);
      if (g.edge(e).head == v) halves.emplace_back(e, true);
    }
    const std::size_t nh = halves.size();
    const std::size_t nl = vx.legs.size();
    for (std::uint64_t hmask = 0; hmask < (1ULL << nh); ++hmask) {
      for (std::uint64_t lmask = 0; lmask < (1ULL << nl); ++lmask) {
        for (std::int64_t g1 = 0; g1 <= vx.genus; ++g1) {
          auto vs = g.vertices();
          auto es = g.edges();
          Vertex keep{g1, {}}, moved{vx.genus - g1, {}};
          for (std::size_t i = 0; i < nl; ++i) ((lmask >> i) & 1 ? moved : keep).legs.push_back(vx.legs[i]);
          for (std::size_t i = 0; i < nh; ++i) {
            if (((hmask >> i) & 1) == 0) continue;
            auto [e, head_end] = halves[i];
            (head_end ? es[static_cast<std::size_t>(e)].head : es[static_cast<std::size_t>(e)].tail) = n;
          }
          es.push_back(Edge{v, n, 1});
          vs[static_cast<std::size_t>(v)] = keep;
          vs.push_back(moved);
          int val_keep = 0, val_moved = 0;
          for (const auto& ed : es) {
            val_keep += (ed.tail == v) + (ed.head == v);
            val_moved += (ed.tail == n) + (ed.head == n);
          }
          if (!vertex_stable(keep.genus, val_keep, keep.legs.size()) ||
              !vertex_stable(moved.genus, val_moved, moved.legs.size())) {
            continue;
          }
          out.emplace_back(std::move(vs), std::move(es));
        }
      }
    }
  }
  return out;
}

void check_request(std::int64_t g, int n_legs, const EnumerationLimits& limits) {
  if (n_legs < 0) throw Error(ErrorKind::InvalidArgument, "negative leg count");
  if (g <= 0 || (g == 1 && n_legs < 1)) {
    throw Error(ErrorKind::UnsupportedGenus,
                "enumeration needs g >= 2, or g = 1 with at least one leg (got g=" + std::to_string(g) +
                    ", n=" + std::to_string(n_legs) + ")");
  }
  if (g > limits.max_genus) {
    throw Error(ErrorKind::SizeLimitExceeded, "genus " + std::to_string(g) + " above bound " +
                                                  std::to_string(limits.max_genus));
  }
  if (2 * g - 2 + n_legs > limits.max_vertices) {
    throw Error(ErrorKind::SizeLimitExceeded, "graphs of genus " + std::to_string(g) + " with " +
                                                  std::to_string(n_legs) + " legs can exceed " +
                                                  std::to_string(limits.max_vertices) + " vertices");
  }
}

bool ordered_before(const std::pair<std::string, DualGraph>& a, const std::pair<std::string, DualGraph>& b) {
  const auto ka = std::make_tuple(a.second.num_edges(), a.second.num_vertices());
  const auto kb = std::make_tuple(b.second.num_edges(), b.second.num_vertices());
  if (ka != kb) return ka < kb;
  return a.first < b.first;
}

}  // namespace

std::vector<DualGraph> enumerate_stable_shapes(std::int64_t g, int n_legs, const EnumerationLimits& limits) {
  check_request(g, n_legs, limits);
  std::vector<Vertex> smooth{Vertex{g, {}}};
  for (int i = 1; i <= n_legs; ++i) smooth[0].legs.push_back(i);

  std::vector<std::pair<std::string, DualGraph>> all;
  std::map<std::string, DualGraph> level;
  {
    DualGraph s(smooth, {});
    level.emplace(canonical_form(s, limits.max_vertices), canonicalize(s, limits.max_vertices));
  }
  while (!level.empty()) {
    for (const auto& [lab, gr] : level) all.emplace_back(lab, gr);
    std::map<std::string, DualGraph> next;
    for (const auto& [lab, gr] : level) {
      for (auto& d : degenerations(gr)) {
        auto key = canonical_form(d, limits.max_vertices);
        if (!next.count(key)) next.emplace(std::move(key), canonicalize(d, limits.max_vertices));
      }
    }
    level = std::move(next);
  }
  std::sort(all.begin(), all.end(), ordered_before);
  std::vector<DualGraph> out;
  out.reserve(all.size());
  for (auto& [lab, gr] : all) out.push_back(std::move(gr));
  return out;
}

std::vector<DualGraph> enumerate_stable_graphs(std::int64_t g, int n_legs,
                                               std::span<const std::int64_t> stabilizer_choices,
                                               const EnumerationLimits& limits) {
  if (stabilizer_choices.empty()) throw Error(ErrorKind::InvalidArgument, "no stabilizer choices");
  std::vector<std::int64_t> choices(stabilizer_choices.begin(), stabilizer_choices.end());
  std::sort(choices.begin(), choices.end());
  choices.erase(std::unique(choices.begin(), choices.end()), choices.end());
  if (choices.front() < 1) throw Error(ErrorKind::InvalidArgument, "stabilizers must be >= 1");

  auto shapes = enumerate_stable_shapes(g, n_legs, limits);
  std::size_t budget = 0;
  for (const auto& s : shapes) {
    std::size_t c = 1;
    for (int e = 0; e < s.num_edges(); ++e) c *= choices.size();
    budget += c;
  }
  if (budget > limits.max_candidates) {
    throw Error(ErrorKind::SizeLimitExceeded, std::to_string(budget) + " decorated candidates exceed the bound " +
                                                  std::to_string(limits.max_candidates));
  }

  std::vector<std::pair<std::string, DualGraph>> all;
  for (const auto& shape : shapes) {
    const auto ne = static_cast<std::size_t>(shape.num_edges());
    std::vector<std::size_t> digit(ne, 0);
    std::vector<std::int64_t> stab(ne);
    std::map<std::string, DualGraph> seen;
    while (true) {
      for (std::size_t e = 0; e < ne; ++e) stab[e] = choices[digit[e]];
      auto dec = shape.with_stabilizers(stab);
      auto lab = canonical_labeling(dec, limits.max_vertices);
      if (!seen.count(lab.label)) seen.emplace(lab.label, canonicalize(dec, limits.max_vertices));
      std::size_t i = 0;
      while (i < ne && ++digit[i] == choices.size()) digit[i++] = 0;
      if (i == ne) break;
    }
    for (auto& kv : seen) all.emplace_back(kv.first, std::move(kv.second));
  }
  std::sort(all.begin(), all.end(), ordered_before);
  std::vector<DualGraph> out;
  out.reserve(all.size());
  for (auto& [lab, gr] : all) out.push_back(std::move(gr));
  return out;
}

std::vector<DualGraph> enumerate_l_stable_graphs(std::int64_t g, int n_legs, const MultiIndex& l,
                                                 const EnumerationLimits& limits) {
  if (l.size() != multi_index_length(g)) {
    throw Error(ErrorKind::MultiIndexLengthMismatch, "multi-index length does not match genus");
  }
  for (auto x : l.entries) {
    if (x < 1) throw Error(ErrorKind::InvalidArgument, "multi-index entries must be >= 1");
  }
  std::vector<DualGraph> out;
  for (const auto& shape : enumerate_stable_shapes(g, n_legs, limits)) {
    std::vector<std::int64_t> stab(static_cast<std::size_t>(shape.num_edges()));
    for (int e = 0; e < shape.num_edges(); ++e) {
      stab[static_cast<std::size_t>(e)] = l[static_cast<std::size_t>(classify_node(shape, e).index)];
    }
    out.push_back(shape.with_stabilizers(stab));
  }
  return out;
}

}  // namespace twspin
