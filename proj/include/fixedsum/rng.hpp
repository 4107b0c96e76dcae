#pragma once

#include <cstdint>

namespace fixedsum {

// Seeded xoshiro256++ generator with splitmix64 state initialisation.
//
// The standard library's distributions are implementation-defined, so all
// variates are derived here from the raw bit stream; identical (seed, stream)
// pairs produce identical sample streams on every platform. Parallel workers
// get decorrelated streams by passing their worker index as `stream`.
class RngState {
 public:
  explicit RngState(uint64_t seed, uint64_t stream = 0);

  uint64_t next_u64();

  // Uniform on [0, 1), 53-bit resolution.
  double next_unit();

  // Unit-rate exponential variate.
  double next_exponential();

  uint64_t seed() const { return seed_; }
  uint64_t stream() const { return stream_; }

 private:
  uint64_t seed_ = 0;
  uint64_t stream_ = 0;
  uint64_t s_[4] = {};
};

}  // namespace fixedsum
