#include "bst/rng.hpp"

namespace bst {

uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

RandomSource::RandomSource(uint64_t seed, uint64_t stream) : seed_(seed), stream_(stream) {
  uint64_t st = seed ^ (0xbf58476d1ce4e5b9ULL * (stream + 1));
  for (auto& w : s_) w = splitmix64(st);
  if (!(s_[0] | s_[1] | s_[2] | s_[3])) s_[0] = 1;
}

static inline uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

uint64_t RandomSource::next_u64() {
  const uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

uint64_t RandomSource::below(uint64_t n) { return next_u64() % n; }

Permutation RandomSource::step(Walk& w) {
  const size_t k = w.slots.size();
  const size_t i = below(k);
  size_t j = below(k - 1);
  if (j >= i) ++j;
  const bool inv = next_u64() & 1;
  w.slots[i] =
      inv ? compose(w.slots[i], invert(w.slots[j])) : compose(w.slots[i], w.slots[j]);
  return w.slots[i];
}

Permutation RandomSource::random_element(const GeneratedGroup& g) {
  if (g.generators().empty()) return Permutation::identity(g.degree());
  auto [it, fresh] = walks_.try_emplace(g.key());
  Walk& w = it->second;
  if (fresh) {
    const auto& gens = g.generators();
    for (size_t i = 0; i < 10; ++i) w.slots.push_back(gens[i % gens.size()]);
    for (int i = 0; i < 60; ++i) step(w);
  }
  return step(w);
}

}  // namespace bst
