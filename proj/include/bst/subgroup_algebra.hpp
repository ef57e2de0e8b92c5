#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "bst/group.hpp"
#include "bst/rng.hpp"

namespace bst {

GeneratedGroup conjugate_subgroup(const GeneratedGroup& h, const Permutation& x);

// Exact intersection, computed as the stabilizer of the coset k*1 under the
// h-action on cosets of k (Schreier generators, canonical-representative
// coset identification). Cost is one canonicalization per coset of h∩k in h.
GeneratedGroup intersect(const GeneratedGroup& h, const GeneratedGroup& k);

// True iff every generator of h lies in g.
bool is_subgroup(const GeneratedGroup& g, const GeneratedGroup& h);

// Largest normal subgroup of g contained in h (requires h <= g).
GeneratedGroup core_in(const GeneratedGroup& g, const GeneratedGroup& h);

GeneratedGroup derived_subgroup(const GeneratedGroup& g);
bool is_soluble(const GeneratedGroup& g);

GeneratedGroup sylow_subgroup(const GeneratedGroup& g, unsigned long p,
                              RandomSource* r = nullptr);

GeneratedGroup normalizer(const GeneratedGroup& g, const GeneratedGroup& h);

// K-orbit of the coset k*x in the coset space of k, as the set of canonical
// coset representatives. Identifies the double coset KxK exactly (its
// minimal representative is *begin()); size |KxK| = |K| * set size.
std::set<Permutation> coset_orbit(const GeneratedGroup& k, const Permutation& x);

struct DoubleCosetCensus {
  struct Entry {
    Permutation rep;  // canonical representative of the coset k*rep
    mpz_class size;   // |K rep K|
  };
  mpz_class ambient_order;
  mpz_class subgroup_order;
  std::vector<Entry> entries;
  bool complete = false;

  mpz_class covered() const;
  bool has_regular_entry() const;  // some entry of size |K|^2
};

// (K,K) double cosets of g, realized as K-orbits on the coset space of K.
// With no budget (or a budget covering the whole index) the census is
// complete and entries appear in breadth-first discovery order. Otherwise a
// partial census is gathered by random sampling; entries stay pairwise
// distinct (orbit-probe deduplication) and the census is promoted to
// complete if the covered mass reaches |G|.
DoubleCosetCensus double_cosets(const GeneratedGroup& g, const GeneratedGroup& k,
                                std::optional<long> budget = std::nullopt,
                                long max_index = 10000000);

// Orbit of `start` under the action `act(key, generator)` together with the
// exact stabilizer of `start` (Schreier generators). seed_stab holds known
// stabilizing elements (e.g. h itself when normalizing h).
template <class Key, class Act>
std::pair<mpz_class, GeneratedGroup> orbit_stabilizer(const GeneratedGroup& g, Key start,
                                                      Act act,
                                                      std::vector<Permutation> seed_stab = {},
                                                      size_t orbit_cap = 2000000) {
  std::map<Key, int> index;
  std::vector<Key> keys{start};
  std::vector<Permutation> trans{Permutation::identity(g.degree())};
  index.emplace(std::move(start), 0);

  std::vector<Permutation> sgens;
  for (auto& s : seed_stab)
    if (!s.is_identity()) sgens.push_back(std::move(s));
  StabilizerChain chain = StabilizerChain::build(sgens, g.degree());
  auto absorb = [&](Permutation u) {
    if (u.is_identity() || chain.contains(u)) return;
    sgens.push_back(std::move(u));
    chain = StabilizerChain::build(sgens, g.degree());
  };

  for (size_t qi = 0; qi < keys.size(); ++qi) {
    for (const auto& s : g.generators()) {
      Key next = act(keys[qi], s);
      auto it = index.find(next);
      if (it == index.end()) {
        if (keys.size() >= orbit_cap) throw std::runtime_error("orbit cap exceeded");
        index.emplace(std::move(next), static_cast<int>(keys.size()));
        trans.push_back(compose(trans[qi], s));
        keys.push_back(act(keys[qi], s));
      } else {
        absorb(compose(compose(trans[qi], s), invert(trans[it->second])));
      }
    }
  }
  const mpz_class orbit_size = static_cast<unsigned long>(keys.size());
  if (orbit_size * chain.order() != g.order())
    throw std::logic_error("orbit-stabilizer mismatch");
  return {orbit_size, GeneratedGroup::make(sgens, g.degree())};
}

}  // namespace bst
