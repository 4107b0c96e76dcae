#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "fixedsum/constraints.hpp"
#include "fixedsum/drs.hpp"
#include "fixedsum/drsc.hpp"

namespace fixedsum {

enum class Algo { Drs, Drsc, Reject };

// Everything a sampling run needs. Drs takes the bounds route; Drsc and
// Reject take the constraint-set route (family computed once up front).
struct SamplerSpec {
  Algo algo = Algo::Drs;
  std::optional<BoundsSpec> bounds;
  std::optional<ConstraintSet> constraints;
  std::optional<InducedSimplexFamily> family;  // filled lazily for Drsc
  int max_iters = kDrsDefaultMaxIters;
  long long max_restarts = kDrscDefaultMaxRestarts;
  std::vector<int> theta_order;  // optional override for compute_thetas

  static SamplerSpec drs(BoundsSpec bounds);
  static SamplerSpec drsc(ConstraintSet cs);
  static SamplerSpec reject(ConstraintSet cs);

  size_t dimension() const;
  void prepare();  // compute the induced-simplex family if needed
};

struct RunStats {
  DrscStats drsc;                   // aggregated over workers (drsc/reject draws)
  long long drs_rescale_total = 0;  // aggregated rescale steps (drs)
  long long emitted = 0;
};

// Generates `count` vectors split across `threads` workers with independent
// (seed, worker) streams. sink(worker, x) runs on the worker's thread;
// workers never share a sink index, so per-worker accumulators need no
// locking. Deterministic for fixed (seed, threads).
RunStats generate_stream(SamplerSpec& spec, size_t count, uint64_t seed, int threads,
                         const std::function<void(int, const std::vector<double>&)>& sink);

// Convenience: materialize the sample in worker order.
std::vector<SimplexVector> generate(SamplerSpec& spec, size_t count, uint64_t seed, int threads,
                                    RunStats* stats = nullptr);

}  // namespace fixedsum
