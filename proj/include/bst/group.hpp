#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "bst/perm.hpp"
#include "bst/stab_chain.hpp"

namespace bst {

// Immutable permutation group handle: generators plus a stabilizer chain,
// cheap to copy. Identity and duplicate generators are dropped on creation.
class GeneratedGroup {
 public:
  GeneratedGroup() = default;

  // canonical_chain selects the full 0..n-1 base (required by coset
  // canonicalization); pass false for large-degree action images where only
  // order and membership are needed. known_order switches the chain build to
  // the verified randomized path.
  static GeneratedGroup make(std::vector<Permutation> gens, int degree, std::string name = "",
                             bool canonical_chain = true,
                             const std::optional<mpz_class>& known_order = std::nullopt);
  static GeneratedGroup trivial(int degree, std::string name = "1");

  const std::string& name() const { return impl_->name; }
  GeneratedGroup renamed(std::string name) const;
  int degree() const { return impl_->degree; }
  const mpz_class& order() const { return impl_->chain.order(); }
  const std::vector<Permutation>& generators() const { return impl_->gens; }
  const StabilizerChain& chain() const { return impl_->chain; }

  bool is_trivial() const { return impl_->chain.order() == 1; }
  bool contains(const Permutation& p) const { return impl_->chain.contains(p); }
  std::vector<int> orbit(int point) const;
  std::vector<Permutation> elements(unsigned long cap = 4000000) const {
    return impl_->chain.elements(cap);
  }

  // Stable identity token (used to key per-group random-walk state). Unique
  // per construction — never reused, unlike a heap address.
  uint64_t key() const { return impl_->uid; }

 private:
  struct Impl {
    std::string name;
    int degree = 0;
    uint64_t uid = 0;
    std::vector<Permutation> gens;
    StabilizerChain chain;
  };
  std::shared_ptr<const Impl> impl_;
};

}  // namespace bst
