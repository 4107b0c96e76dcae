#include "fixedsum/runner.hpp"

#include <exception>
#include <mutex>
#include <thread>

#include "fixedsum/error.hpp"

namespace fixedsum {

SamplerSpec SamplerSpec::drs(BoundsSpec bounds) {
  SamplerSpec spec;
  spec.algo = Algo::Drs;
  spec.bounds = std::move(bounds);
  return spec;
}

SamplerSpec SamplerSpec::drsc(ConstraintSet cs) {
  SamplerSpec spec;
  spec.algo = Algo::Drsc;
  spec.constraints = std::move(cs);
  return spec;
}

SamplerSpec SamplerSpec::reject(ConstraintSet cs) {
  SamplerSpec spec;
  spec.algo = Algo::Reject;
  spec.constraints = std::move(cs);
  return spec;
}

size_t SamplerSpec::dimension() const {
  if (algo == Algo::Drs) return bounds ? bounds->dimension() : 0;
  return constraints ? constraints->dimension() : 0;
}

void SamplerSpec::prepare() {
  if (algo == Algo::Drs) {
    if (!bounds) throw InputError("drs sampling needs bound vectors");
    return;
  }
  if (!constraints) throw InputError("constraint-based sampling needs a constraint set");
  if (algo == Algo::Drsc && !family) family = compute_thetas(*constraints, theta_order);
}

namespace {

struct WorkerOutcome {
  DrscStats drsc;
  long long drs_rescales = 0;
  std::exception_ptr error;
};

void run_worker(SamplerSpec& spec, int worker, uint64_t seed, size_t count,
                const std::function<void(int, const std::vector<double>&)>& sink,
                WorkerOutcome& out) {
  try {
    RngState rng(seed, static_cast<uint64_t>(worker));
    for (size_t k = 0; k < count; ++k) {
      switch (spec.algo) {
        case Algo::Drs: {
          DrsResult r = drs_sample(*spec.bounds, rng, spec.max_iters);
          out.drs_rescales += r.rescale_steps;
          sink(worker, r.x.entries());
          break;
        }
        case Algo::Drsc: {
          DrscResult r = drsc_sample(*spec.constraints, *spec.family, rng, spec.max_restarts);
          out.drsc.restarts += r.stats.restarts;
          out.drsc.rescales += r.stats.rescales;
          out.drsc.dirichlet_draws += r.stats.dirichlet_draws;
          sink(worker, r.x.entries());
          break;
        }
        case Algo::Reject: {
          long long tries = 0;
          SimplexVector x = rejection_sample(*spec.constraints, rng, spec.max_restarts, &tries);
          out.drsc.dirichlet_draws += tries;
          out.drsc.restarts += tries - 1;
          sink(worker, x.entries());
          break;
        }
      }
    }
  } catch (...) {
    out.error = std::current_exception();
  }
}

}  // namespace

RunStats generate_stream(SamplerSpec& spec, size_t count, uint64_t seed, int threads,
                         const std::function<void(int, const std::vector<double>&)>& sink) {
  if (threads < 1) throw InputError("thread count must be >= 1");
  spec.prepare();

  std::vector<size_t> quota(threads, count / threads);
  for (int w = 0; w < static_cast<int>(count % threads); ++w) ++quota[w];

  std::vector<WorkerOutcome> outcomes(threads);
  if (threads == 1) {
    run_worker(spec, 0, seed, quota[0], sink, outcomes[0]);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back(run_worker, std::ref(spec), w, seed, quota[w], std::cref(sink),
                        std::ref(outcomes[w]));
    }
    for (std::thread& t : pool) t.join();
  }

  RunStats stats;
  for (const WorkerOutcome& o : outcomes) {
    if (o.error) std::rethrow_exception(o.error);
    stats.drsc.restarts += o.drsc.restarts;
    stats.drsc.rescales += o.drsc.rescales;
    stats.drsc.dirichlet_draws += o.drsc.dirichlet_draws;
    stats.drs_rescale_total += o.drs_rescales;
  }
  stats.emitted = static_cast<long long>(count);
  return stats;
}

std::vector<SimplexVector> generate(SamplerSpec& spec, size_t count, uint64_t seed, int threads,
                                    RunStats* stats) {
  spec.prepare();
  if (threads < 1) throw InputError("thread count must be >= 1");

  // Workers write into disjoint slots, so the output order is fixed by
  // (seed, threads) regardless of scheduling.
  std::vector<size_t> quota(threads, count / threads);
  for (int w = 0; w < static_cast<int>(count % threads); ++w) ++quota[w];
  std::vector<size_t> offset(threads, 0);
  for (int w = 1; w < threads; ++w) offset[w] = offset[w - 1] + quota[w - 1];

  std::vector<std::vector<double>> raw(count);
  std::vector<size_t> cursor = offset;
  RunStats local = generate_stream(spec, count, seed, threads,
                                   [&](int worker, const std::vector<double>& x) {
                                     raw[cursor[worker]++] = x;
                                   });
  if (stats) *stats = local;

  std::vector<SimplexVector> out;
  out.reserve(count);
  for (std::vector<double>& x : raw) out.emplace_back(std::move(x));
  return out;
}

}  // namespace fixedsum
