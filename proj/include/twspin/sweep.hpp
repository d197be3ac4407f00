#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <random>
#include <span>
#include <vector>

#include "twspin/arith.hpp"
#include "twspin/graph.hpp"
#include "twspin/picard.hpp"

namespace twspin {

enum class Exec { serial, parallel };

/// out[i] = fn(i) for i < n. The parallel path uses a dynamic OpenMP schedule;
/// the first exception by index is rethrown after the loop so both paths fail
/// identically.
template <class Fn>
auto parallel_map(std::size_t n, Fn&& fn, Exec exec) -> std::vector<decltype(fn(std::size_t{}))> {
  using T = decltype(fn(std::size_t{}));
  std::vector<T> out(n);
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<std::int64_t>(n);
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < count; ++i) {
      try {
        out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  } else {
    for (std::int64_t i = 0; i < count; ++i) {
      try {
        out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

/// Random test bundle with total degree divisible by r: either fully random
/// data, an r-th power, or an r-th power twisted by a degree-0 pullback.
LineBundleData random_bundle(GraphPtr graph, std::int64_t r, std::mt19937_64& rng);

void set_worker_count(int jobs);
int worker_count();

std::vector<BigInt> count_roots_batch(std::span<const LineBundleData> bundles, std::int64_t r,
                                      const RootOptions& opts, Exec exec);

struct RootsnumCase {
  LineBundleData bundle;
  std::int64_t r = 2;
};

struct RootsnumOutcome {
  bool applicable = false;  // total degree divisible by r
  bool criterion = false;
  bool full = false;        // count == r^(2g)
  BigInt count;
  bool agrees() const { return !applicable || criterion == full; }
};

std::vector<RootsnumOutcome> rootsnum_sweep(std::span<const RootsnumCase> cases, const RootOptions& opts, Exec exec);

struct KernelCase {
  DualGraph graph;
  std::int64_t r = 2;
};

struct KernelOutcome {
  BigInt kernel;
  bool claim_holds = false;         // (|ker| == r^b1) <=> r | l_e on every nonseparating e
  bool deletion_bound = true;       // |ker G| <= |ker G-e| * gcd(r, l_e) on every nonseparating e
  bool deletion_exact = true;       // the bound is attained on every nonseparating e
  bool deletion_refined = true;     // |ker G| == |ker G-e| * #{x : column multiple lies in im(G-e)}
  bool torsion_closed_form = true;  // torsion_count == coarse count * |ker|
};

/// Deletion of an edge keeps the vertex set; the result may be disconnected,
/// so kernels are taken on the raw boundary map rather than a DualGraph.
BigInt delta_kernel_without_edge(const DualGraph& g, std::int64_t r, int removed_edge);

std::vector<KernelOutcome> kernel_law_sweep(std::span<const KernelCase> cases, Exec exec);

}  // namespace twspin
