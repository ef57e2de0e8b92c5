#include "bst/group.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>

namespace bst {

namespace {
std::atomic<uint64_t> next_uid{1};
}

GeneratedGroup GeneratedGroup::make(std::vector<Permutation> gens, int degree, std::string name,
                                    bool canonical_chain,
                                    const std::optional<mpz_class>& known_order) {
  std::vector<Permutation> kept;
  for (auto& g : gens) {
    if (g.degree() != degree) throw std::invalid_argument("generator degree mismatch");
    if (g.is_identity()) continue;
    if (std::find(kept.begin(), kept.end(), g) == kept.end()) kept.push_back(std::move(g));
  }
  auto impl = std::make_shared<Impl>();
  impl->name = std::move(name);
  impl->degree = degree;
  impl->uid = next_uid.fetch_add(1);
  impl->chain = StabilizerChain::build(kept, degree, canonical_chain, known_order);
  impl->gens = std::move(kept);
  GeneratedGroup g;
  g.impl_ = std::move(impl);
  return g;
}

GeneratedGroup GeneratedGroup::trivial(int degree, std::string name) {
  return make({}, degree, std::move(name));
}

GeneratedGroup GeneratedGroup::renamed(std::string name) const {
  auto impl = std::make_shared<Impl>(*impl_);
  impl->name = std::move(name);
  GeneratedGroup g;
  g.impl_ = std::move(impl);
  return g;
}

std::vector<int> GeneratedGroup::orbit(int point) const {
  std::vector<int> orb{point};
  std::vector<char> seen(degree(), 0);
  seen[point] = 1;
  for (size_t i = 0; i < orb.size(); ++i)
    for (const auto& g : impl_->gens) {
      const int q = g(orb[i]);
      if (!seen[q]) {
        seen[q] = 1;
        orb.push_back(q);
      }
    }
  return orb;
}

}  // namespace bst
