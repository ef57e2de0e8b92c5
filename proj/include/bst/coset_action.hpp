#pragma once

#include <map>
#include <vector>

#include "bst/group.hpp"

namespace bst {

// Action of g on the right cosets of h, with cosets enumerated breadth-first
// from the identity coset and identified by their canonical (lex-minimal)
// representatives.
struct CosetAction {
  GeneratedGroup group;    // the acting group g
  GeneratedGroup sub;      // h
  GeneratedGroup kernel;   // core of h in g
  GeneratedGroup image;    // permutation image on the cosets
  std::vector<Permutation> reps;       // reps[i] = canonical rep of coset i; reps[0] = id
  std::map<Permutation, int> index_of; // canonical rep -> coset index

  long degree() const { return static_cast<long>(reps.size()); }
  // Coset index of h*x (x need not be a generator).
  int point_of(const Permutation& x) const;
  // Image of coset i under x.
  int apply(int i, const Permutation& x) const { return point_of(compose(reps[i], x)); }
  // Full image permutation of an arbitrary element of g.
  Permutation image_of(const Permutation& x) const;
};

// Requires h <= g (checked). Throws if the index exceeds max_index.
CosetAction coset_action(const GeneratedGroup& g, const GeneratedGroup& h,
                         long max_index = 10000000);

}  // namespace bst
