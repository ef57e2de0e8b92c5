#pragma once

#include <optional>
#include <vector>

#include <gmpxx.h>

#include "bst/perm.hpp"

namespace bst {

// Base-and-strong-generating-set structure. In canonical-base mode the base
// is the full point sequence 0,1,...,n-1 (singleton levels cost O(1) space),
// so level l is exactly the pointwise stabilizer of {0,...,l-1}; this is what
// makes the greedy minimal-coset-representative computation correct.
class StabilizerChain {
 public:
  struct Level {
    int base_point = -1;
    std::vector<int> orbit;            // BFS order; orbit[0] == base_point
    std::vector<int> parent;           // Schreier tree; -1 outside orbit, self at base
    std::vector<int> via;              // index into gens_ used to reach point
    std::vector<int> gen_indices;      // strong generators active at this level
  };

  StabilizerChain() = default;

  // Deterministic incremental Schreier–Sims. If known_order is given, the
  // construction instead adds sifted random words until the chain order
  // matches (verified result, much faster at large degree). canonical_base
  // fixes the base to 0..n-1; pass false for large-degree groups where only
  // membership/order is needed.
  static StabilizerChain build(const std::vector<Permutation>& gens, int degree,
                               bool canonical_base = true,
                               const std::optional<mpz_class>& known_order = std::nullopt);

  int degree() const { return degree_; }
  const mpz_class& order() const { return order_; }
  const std::vector<Level>& levels() const { return levels_; }
  std::vector<int> base() const;
  const std::vector<Permutation>& strong_generators() const { return gens_; }

  bool contains(const Permutation& a) const;
  // Sift a through levels [from, end); returns residue, sets drop_level to
  // the level where sifting stopped (levels_.size() if it ran through).
  Permutation sift(const Permutation& a, int from = 0, int* drop_level = nullptr) const;
  // Transversal element mapping base_point of `level` to `point`.
  Permutation transversal(int level, int point) const;
  bool in_orbit(int level, int point) const {
    const Level& lv = levels_[level];
    return point == lv.base_point || (!lv.parent.empty() && lv.parent[point] >= 0);
  }

  // All group elements, in a deterministic order. Throws if order > cap.
  std::vector<Permutation> elements(unsigned long cap = 4000000) const;

  // Lexicographically minimal element of the right coset (this)*g under
  // "apply chain element, then g". Requires canonical-base mode (asserted).
  Permutation min_coset_rep(const Permutation& g) const;

 private:
  void add_generator(const Permutation& g);
  void rebuild_orbit(int level);
  void deterministic_close();

  bool canonical_base_ = true;
  int degree_ = 0;
  mpz_class order_ = 1;
  std::vector<Permutation> gens_;      // strong generators
  std::vector<Permutation> gen_invs_;
  std::vector<int> gen_depth_;         // gens_[i] fixes base[0..depth-1]
  std::vector<Level> levels_;
  void recompute_order();
};

}  // namespace bst
