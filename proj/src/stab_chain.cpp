#include "bst/stab_chain.hpp"

#include <cassert>
#include <stdexcept>

namespace bst {
namespace {

// Small deterministic generator for the verified randomized build path.
struct SplitMix {
  uint64_t s;
  uint64_t next() {
    uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  uint64_t below(uint64_t n) { return next() % n; }
};

}  // namespace

std::vector<int> StabilizerChain::base() const {
  std::vector<int> b;
  for (const auto& lv : levels_)
    if (lv.orbit.size() > 1) b.push_back(lv.base_point);
  return b;
}

void StabilizerChain::recompute_order() {
  order_ = 1;
  for (const auto& lv : levels_) order_ *= static_cast<unsigned long>(lv.orbit.size());
}

void StabilizerChain::rebuild_orbit(int level) {
  Level& lv = levels_[level];
  lv.parent.assign(degree_, -1);
  lv.via.assign(degree_, -1);
  lv.orbit.clear();
  lv.orbit.push_back(lv.base_point);
  lv.parent[lv.base_point] = lv.base_point;
  for (size_t qi = 0; qi < lv.orbit.size(); ++qi) {
    const int p = lv.orbit[qi];
    for (int gi : lv.gen_indices) {
      const int q = gens_[gi](p);
      if (lv.parent[q] < 0) {
        lv.parent[q] = p;
        lv.via[q] = gi;
        lv.orbit.push_back(q);
      }
    }
  }
}

Permutation StabilizerChain::transversal(int level, int point) const {
  const Level& lv = levels_[level];
  if (point == lv.base_point) return Permutation::identity(degree_);
  if (!in_orbit(level, point)) throw std::invalid_argument("point not in orbit");
  // Collect the generator path base <- ... <- point, then compose forwards.
  std::vector<int> path;
  for (int p = point; p != lv.base_point; p = lv.parent[p]) path.push_back(lv.via[p]);
  Permutation u = Permutation::identity(degree_);
  for (auto it = path.rbegin(); it != path.rend(); ++it) u = compose(u, gens_[*it]);
  return u;
}

Permutation StabilizerChain::sift(const Permutation& a, int from, int* drop_level) const {
  Permutation g = a;
  for (int l = from; l < static_cast<int>(levels_.size()); ++l) {
    const int p = g(levels_[l].base_point);
    if (p == levels_[l].base_point) continue;
    if (!in_orbit(l, p)) {
      if (drop_level) *drop_level = l;
      return g;
    }
    g = compose(g, invert(transversal(l, p)));
  }
  if (drop_level) *drop_level = static_cast<int>(levels_.size());
  return g;
}

bool StabilizerChain::contains(const Permutation& a) const {
  if (a.degree() != degree_) throw std::invalid_argument("degree mismatch");
  int drop = 0;
  Permutation r = sift(a, 0, &drop);
  return drop == static_cast<int>(levels_.size()) && r.is_identity();
}

void StabilizerChain::add_generator(const Permutation& g) {
  if (g.is_identity()) return;
  // Depth: number of leading base points fixed by g.
  int d = 0;
  while (d < static_cast<int>(levels_.size()) && g(levels_[d].base_point) == levels_[d].base_point)
    ++d;
  if (d == static_cast<int>(levels_.size())) {
    assert(!canonical_base_ && "canonical base covers all points");
    Level lv;
    lv.base_point = g.smallest_moved_point();
    lv.orbit.push_back(lv.base_point);
    levels_.push_back(lv);
  }
  const int gi = static_cast<int>(gens_.size());
  gens_.push_back(g);
  gen_invs_.push_back(invert(g));
  gen_depth_.push_back(d);
  for (int l = 0; l <= d; ++l) levels_[l].gen_indices.push_back(gi);
  for (int l = 0; l <= d; ++l)
    if (l == d || !levels_[l].parent.empty()) rebuild_orbit(l);
  recompute_order();
}

void StabilizerChain::deterministic_close() {
  bool dirty = true;
  while (dirty) {
    dirty = false;
    for (int l = static_cast<int>(levels_.size()) - 1; l >= 0 && !dirty; --l) {
      if (levels_[l].orbit.size() <= 1) continue;
      const Level lv = levels_[l];  // snapshot
      for (size_t qi = 0; qi < lv.orbit.size() && !dirty; ++qi) {
        const int p = lv.orbit[qi];
        const Permutation up = transversal(l, p);
        for (int gi : lv.gen_indices) {
          const int q = gens_[gi](p);
          if (p == lv.base_point && q == p) continue;  // Schreier gen is a deeper strong gen
          const Permutation sg = compose(compose(up, gens_[gi]), invert(transversal(l, q)));
          if (sg.is_identity()) continue;
          int drop = 0;
          const Permutation r = sift(sg, l + 1, &drop);
          if (!r.is_identity()) {
            add_generator(r);
            dirty = true;
            break;
          }
        }
      }
    }
  }
}

StabilizerChain StabilizerChain::build(const std::vector<Permutation>& gens, int degree,
                                       bool canonical_base,
                                       const std::optional<mpz_class>& known_order) {
  StabilizerChain c;
  c.degree_ = degree;
  c.canonical_base_ = canonical_base;
  if (canonical_base) {
    c.levels_.resize(degree);
    for (int l = 0; l < degree; ++l) {
      c.levels_[l].base_point = l;
      c.levels_[l].orbit.push_back(l);
    }
  }
  for (const auto& g : gens) {
    if (g.degree() != degree) throw std::invalid_argument("degree mismatch");
    c.add_generator(g);
  }
  if (known_order) {
    if (c.order_ > *known_order) throw std::logic_error("chain exceeds known order");
    if (c.order_ == *known_order) return c;
    // Verified randomized completion: add sifted random words until the
    // orbit-size product reaches the known order (the product divides |G|,
    // with equality iff the chain is complete).
    SplitMix rng{0x5eed5eed5eed5eedULL};
    std::vector<Permutation> slots;
    const size_t kSlots = 10;
    if (gens.empty()) throw std::invalid_argument("empty generator list");
    for (size_t i = 0; i < kSlots; ++i) slots.push_back(gens[i % gens.size()]);
    auto step = [&]() -> const Permutation& {
      const size_t i = rng.below(kSlots);
      size_t j = rng.below(kSlots - 1);
      if (j >= i) ++j;
      slots[i] = rng.next() & 1 ? compose(slots[i], slots[j]) : compose(slots[i], invert(slots[j]));
      return slots[i];
    };
    for (int it = 0; it < 200000 && c.order_ != *known_order; ++it) {
      const Permutation w = step();
      const Permutation r = c.sift(w);
      if (!r.is_identity()) c.add_generator(r);
      if (c.order_ > *known_order) throw std::logic_error("chain exceeds known order");
    }
    if (c.order_ != *known_order) {
      c.deterministic_close();
      if (c.order_ != *known_order) throw std::logic_error("known order not reached");
    }
    return c;
  }
  c.deterministic_close();
  return c;
}

std::vector<Permutation> StabilizerChain::elements(unsigned long cap) const {
  if (order_ > cap) throw std::invalid_argument("group too large to enumerate");
  std::vector<Permutation> elems{Permutation::identity(degree_)};
  for (int l = static_cast<int>(levels_.size()) - 1; l >= 0; --l) {
    if (levels_[l].orbit.size() <= 1) continue;
    std::vector<Permutation> next;
    next.reserve(elems.size() * levels_[l].orbit.size());
    for (int p : levels_[l].orbit) {
      const Permutation u = transversal(l, p);
      for (const auto& d : elems) next.push_back(compose(d, u));
    }
    elems = std::move(next);
  }
  return elems;
}

Permutation StabilizerChain::min_coset_rep(const Permutation& g) const {
  assert(canonical_base_ && "min_coset_rep requires canonical-base chain");
  Permutation cur = g;
  for (int l = 0; l < static_cast<int>(levels_.size()); ++l) {
    const Level& lv = levels_[l];
    if (lv.orbit.size() <= 1) continue;
    int best = lv.base_point;
    for (int p : lv.orbit)
      if (cur(p) < cur(best)) best = p;
    if (best != lv.base_point) cur = compose(transversal(l, best), cur);
  }
  return cur;
}

}  // namespace bst
