#include "bst/coset_action.hpp"

#include <stdexcept>

#include "bst/subgroup_algebra.hpp"

namespace bst {

int CosetAction::point_of(const Permutation& x) const {
  const auto it = index_of.find(sub.chain().min_coset_rep(x));
  if (it == index_of.end()) throw std::logic_error("coset not in enumeration");
  return it->second;
}

Permutation CosetAction::image_of(const Permutation& x) const {
  std::vector<int> img(reps.size());
  for (size_t i = 0; i < reps.size(); ++i) img[i] = apply(static_cast<int>(i), x);
  return Permutation(std::move(img));
}

CosetAction coset_action(const GeneratedGroup& g, const GeneratedGroup& h, long max_index) {
  if (g.degree() != h.degree()) throw std::invalid_argument("degree mismatch");
  if (!is_subgroup(g, h)) throw std::invalid_argument("h is not a subgroup of g");
  const mpz_class index = g.order() / h.order();
  if (index > max_index) throw std::runtime_error("coset index exceeds cap");

  CosetAction ca;
  ca.group = g;
  ca.sub = h;
  ca.reps.push_back(Permutation::identity(g.degree()));
  ca.index_of.emplace(ca.reps[0], 0);
  const auto& gens = g.generators();
  std::vector<std::vector<int>> images(gens.size());
  for (size_t i = 0; i < ca.reps.size(); ++i) {
    for (size_t s = 0; s < gens.size(); ++s) {
      Permutation rep = h.chain().min_coset_rep(compose(ca.reps[i], gens[s]));
      auto [it, fresh] = ca.index_of.try_emplace(std::move(rep), static_cast<int>(ca.reps.size()));
      if (fresh) ca.reps.push_back(it->first);
      images[s].push_back(it->second);
    }
  }
  if (mpz_class(static_cast<unsigned long>(ca.reps.size())) != index)
    throw std::logic_error("coset enumeration incomplete");

  ca.kernel = core_in(g, h);
  const mpz_class image_order = g.order() / ca.kernel.order();
  const int deg = static_cast<int>(ca.reps.size());
  std::vector<Permutation> image_gens;
  for (auto& img : images) image_gens.push_back(Permutation(std::move(img)));
  // The image on >10^3 points only needs order/membership, so skip the
  // canonical base; its order is known exactly from the kernel.
  ca.image = GeneratedGroup::make(std::move(image_gens), deg,
                                  g.name().empty() ? "image" : g.name() + "-cosets",
                                  deg <= 1000, image_order);
  return ca;
}

}  // namespace bst
