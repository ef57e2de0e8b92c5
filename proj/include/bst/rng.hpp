#pragma once

#include <cstdint>
#include <map>

#include "bst/group.hpp"
#include "bst/perm.hpp"

namespace bst {

uint64_t splitmix64(uint64_t& state);

// Deterministic, platform-independent random stream (xoshiro256**), seeded by
// a (seed, stream) pair so parallel workers can draw from disjoint streams
// while single-stream runs stay byte-for-byte reproducible.
class RandomSource {
 public:
  RandomSource(uint64_t seed, uint64_t stream = 0);

  uint64_t seed() const { return seed_; }
  uint64_t stream() const { return stream_; }
  uint64_t next_u64();
  uint64_t below(uint64_t n);  // uniform-enough for n << 2^64

  // Product-replacement walk: 10 accumulators, 60 initial mixing steps.
  // Walk state is kept per group handle inside this source.
  Permutation random_element(const GeneratedGroup& g);

 private:
  struct Walk {
    std::vector<Permutation> slots;
  };
  uint64_t seed_ = 0, stream_ = 0;
  uint64_t s_[4];
  std::map<uint64_t, Walk> walks_;
  Permutation step(Walk& w);
};

}  // namespace bst
