#include "twspin/sweep.hpp"

#include <numeric>

#include <omp.h>

#include "twspin/errors.hpp"

namespace twspin {

namespace {

LineBundleData random_raw(const GraphPtr& graph, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> phi(-3, 3);
  std::vector<std::int64_t> int_part(static_cast<std::size_t>(graph->num_vertices()));
  for (auto& p : int_part) p = phi(rng);
  std::vector<std::int64_t> mult(static_cast<std::size_t>(graph->num_edges()));
  for (int e = 0; e < graph->num_edges(); ++e) {
    std::uniform_int_distribution<std::int64_t> mu(0, graph->edge(e).stabilizer - 1);
    mult[static_cast<std::size_t>(e)] = mu(rng);
  }
  return LineBundleData(graph, std::move(int_part), std::move(mult));
}

}  // namespace

LineBundleData random_bundle(GraphPtr graph, std::int64_t r, std::mt19937_64& rng) {
  const auto kind = std::uniform_int_distribution<int>(0, 2)(rng);
  if (kind == 0) {
    auto L = random_raw(graph, rng);
    auto int_part = L.int_part();
    int_part[0] -= mod_floor(total_degree(L), r);
    return LineBundleData(graph, std::move(int_part), L.mult());
  }
  auto power = rth_power(random_raw(graph, rng), r);
  if (kind == 1) return power;
  std::uniform_int_distribution<std::int64_t> phi(-2, 2);
  std::vector<std::int64_t> pull(static_cast<std::size_t>(graph->num_vertices()));
  std::int64_t sum = 0;
  for (auto& p : pull) sum += (p = phi(rng));
  pull[0] -= sum;
  return tensor(power, LineBundleData(graph, std::move(pull),
                                      std::vector<std::int64_t>(static_cast<std::size_t>(graph->num_edges()), 0)));
}

void set_worker_count(int jobs) {
  if (jobs < 1) throw Error(ErrorKind::InvalidArgument, "--jobs must be >= 1");
  omp_set_num_threads(jobs);
}

int worker_count() { return omp_get_max_threads(); }

std::vector<BigInt> count_roots_batch(std::span<const LineBundleData> bundles, std::int64_t r,
                                      const RootOptions& opts, Exec exec) {
  return parallel_map(
      bundles.size(), [&](std::size_t i) { return count_roots(bundles[i], r, opts); }, exec);
}

std::vector<RootsnumOutcome> rootsnum_sweep(std::span<const RootsnumCase> cases, const RootOptions& opts,
                                            Exec exec) {
  return parallel_map(
      cases.size(),
      [&](std::size_t i) {
        const auto& c = cases[i];
        RootsnumOutcome out;
        out.count = count_roots(c.bundle, c.r, opts);
        out.full = out.count == big_pow(c.r, 2 * genus(c.bundle.graph()));
        out.applicable = mod_floor(total_degree(c.bundle), c.r) == 0;
        if (out.applicable) out.criterion = rootsnum_criterion(c.bundle, c.r).holds;
        return out;
      },
      exec);
}

namespace {

// delta_embed restricted to the edges other than `removed_edge`, same vertex set.
CyclicHom delta_minus_edge(const DualGraph& g, std::int64_t r, int removed_edge) {
  const auto full = delta_embed(g, r);
  const auto nv = full.matrix().rows();
  const auto ne = full.matrix().cols();
  IntMatrix m(nv, ne - 1);
  std::vector<std::int64_t> dom;
  for (std::size_t e = 0, k = 0; e < ne; ++e) {
    if (static_cast<int>(e) == removed_edge) continue;
    for (std::size_t v = 0; v < nv; ++v) m(v, k) = full.matrix()(v, e);
    dom.push_back(full.domain_moduli()[e]);
    ++k;
  }
  return CyclicHom(std::move(m), std::move(dom), full.codomain_moduli());
}

}  // namespace

BigInt delta_kernel_without_edge(const DualGraph& g, std::int64_t r, int removed_edge) {
  if (removed_edge < 0 || removed_edge >= g.num_edges()) throw Error(ErrorKind::BadIndex, "edge out of range");
  return hom_kernel_size(delta_minus_edge(g, r, removed_edge));
}

std::vector<KernelOutcome> kernel_law_sweep(std::span<const KernelCase> cases, Exec exec) {
  return parallel_map(
      cases.size(),
      [&](std::size_t i) {
        const auto& g = cases[i].graph;
        const auto r = cases[i].r;
        KernelOutcome out;
        const auto delta = delta_embed(g, r);
        out.kernel = hom_kernel_size(delta);
        const auto bridges = find_bridges(g);
        bool divisible = true;
        for (int e = 0; e < g.num_edges(); ++e) {
          if (!bridges[static_cast<std::size_t>(e)] && g.edge(e).stabilizer % r != 0) divisible = false;
        }
        out.claim_holds = (out.kernel == big_pow(r, betti_number(g))) == divisible;
        out.torsion_closed_form = torsion_count(g, r) == coarse_torsion_count(g, r) * out.kernel;
        for (int e = 0; e < g.num_edges(); ++e) {
          if (bridges[static_cast<std::size_t>(e)]) continue;
          const auto h = std::gcd(g.edge(e).stabilizer, r);
          const auto rest = delta_minus_edge(g, r, e);
          const auto rest_kernel = hom_kernel_size(rest);
          if (out.kernel > rest_kernel * h) out.deletion_bound = false;
          if (out.kernel != rest_kernel * h) out.deletion_exact = false;
          std::int64_t admissible = 0;
          for (std::int64_t x = 0; x < h; ++x) {
            std::vector<std::int64_t> x_full(static_cast<std::size_t>(g.num_edges()), 0);
            x_full[static_cast<std::size_t>(e)] = x;
            auto col = delta.apply(x_full);
            for (auto& c : col) c = mod_floor(-c, r);
            if (rest.domain_moduli().empty()) {
              bool zero = true;
              for (auto c : col) zero = zero && c == 0;
              if (zero) ++admissible;
            } else if (hom_image_contains(rest, col)) {
              ++admissible;
            }
          }
          if (out.kernel != rest_kernel * admissible) out.deletion_refined = false;
        }
        return out;
      },
      exec);
}

}  // namespace twspin
