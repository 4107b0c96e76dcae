#include "fixedsum/rng.hpp"

#include <cmath>

namespace fixedsum {

namespace {

uint64_t splitmix64(uint64_t& x) {
  x += 0x9E3779B97F4A7C15ull;
  uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

uint64_t rotl(uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

}  // namespace

RngState::RngState(uint64_t seed, uint64_t stream) : seed_(seed), stream_(stream) {
  // Fold the stream index through splitmix64 before mixing it into the seed
  // so that streams 0, 1, 2, ... start far apart in state space.
  uint64_t t = stream + 0x632BE59BD9B4E019ull;
  uint64_t x = seed ^ splitmix64(t);
  s_[0] = splitmix64(x);
  s_[1] = splitmix64(x);
  s_[2] = splitmix64(x);
  s_[3] = splitmix64(x);
  if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;  // all-zero state is invalid
}

uint64_t RngState::next_u64() {
  // xoshiro256++
  const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double RngState::next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double RngState::next_exponential() { return -std::log1p(-next_unit()); }

}  // namespace fixedsum
