#include "bst/subgroup_algebra.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "bst/coset_action.hpp"

namespace bst {

GeneratedGroup conjugate_subgroup(const GeneratedGroup& h, const Permutation& x) {
  if (h.degree() != x.degree()) throw std::invalid_argument("degree mismatch");
  std::vector<Permutation> gens;
  gens.reserve(h.generators().size());
  for (const auto& g : h.generators()) gens.push_back(conjugate_perm(g, x));
  auto c = GeneratedGroup::make(std::move(gens), h.degree(), h.name());
  if (c.order() != h.order()) throw std::logic_error("conjugation changed order");
  return c;
}

bool is_subgroup(const GeneratedGroup& g, const GeneratedGroup& h) {
  if (g.degree() != h.degree()) return false;
  for (const auto& x : h.generators())
    if (!g.contains(x)) return false;
  return true;
}

GeneratedGroup intersect(const GeneratedGroup& h, const GeneratedGroup& k) {
  if (h.degree() != k.degree()) throw std::invalid_argument("degree mismatch");
  const int deg = h.degree();
  // h-orbit of the coset k*1; stabilizer = h ∩ k by Schreier's lemma.
  std::map<Permutation, int> index;
  std::vector<Permutation> trans{Permutation::identity(deg)};
  index.emplace(Permutation::identity(deg), 0);

  std::vector<Permutation> igens;
  StabilizerChain chain = StabilizerChain::build({}, deg);
  auto absorb = [&](Permutation u) {
    if (u.is_identity() || chain.contains(u)) return;
    igens.push_back(std::move(u));
    chain = StabilizerChain::build(igens, deg);
  };

  for (size_t qi = 0; qi < trans.size(); ++qi) {
    for (const auto& s : h.generators()) {
      const Permutation t = compose(trans[qi], s);
      Permutation rep = k.chain().min_coset_rep(t);
      auto [it, fresh] = index.try_emplace(std::move(rep), static_cast<int>(trans.size()));
      if (fresh)
        trans.push_back(t);
      else
        absorb(compose(t, invert(trans[it->second])));
    }
  }
  auto result = GeneratedGroup::make(std::move(igens), deg);
  if (result.order() * static_cast<unsigned long>(trans.size()) != h.order())
    throw std::logic_error("intersection orbit mismatch");
  return result;
}

GeneratedGroup core_in(const GeneratedGroup& g, const GeneratedGroup& h) {
  if (!is_subgroup(g, h)) throw std::invalid_argument("h is not a subgroup of g");
  GeneratedGroup n = h;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& s : g.generators()) {
      const auto m = intersect(n, conjugate_subgroup(n, s));
      if (m.order() < n.order()) {
        n = m;
        changed = true;
      }
    }
  }
  return n.renamed("core");
}

GeneratedGroup derived_subgroup(const GeneratedGroup& g) {
  const int deg = g.degree();
  std::vector<Permutation> dgens;
  StabilizerChain chain = StabilizerChain::build({}, deg);
  auto absorb = [&](Permutation u) {
    if (u.is_identity() || chain.contains(u)) return false;
    dgens.push_back(std::move(u));
    chain = StabilizerChain::build(dgens, deg);
    return true;
  };
  std::vector<Permutation> queue;
  const auto& gens = g.generators();
  for (const auto& a : gens)
    for (const auto& b : gens) {
      Permutation c = compose(compose(invert(a), invert(b)), compose(a, b));
      if (absorb(c)) queue.push_back(std::move(c));
    }
  // Normal closure under g.
  for (size_t i = 0; i < queue.size(); ++i)
    for (const auto& s : gens) {
      Permutation c = conjugate_perm(queue[i], s);
      if (absorb(c)) queue.push_back(std::move(c));
    }
  return GeneratedGroup::make(std::move(dgens), deg, g.name() + "'");
}

bool is_soluble(const GeneratedGroup& g) {
  GeneratedGroup d = g;
  while (!d.is_trivial()) {
    const auto next = derived_subgroup(d);
    if (next.order() == d.order()) return false;
    d = next;
  }
  return true;
}

namespace {

mpz_class p_part(mpz_class n, unsigned long p) {
  mpz_class m = 1;
  while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
    n /= p;
    m *= p;
  }
  return m;
}

// x^(o/p-part(o)); identity when p does not divide o.
Permutation p_element(const Permutation& x, unsigned long p) {
  const mpz_class o = element_order(x);
  return perm_power(x, o / p_part(o, p));
}

std::vector<Permutation> sorted_elements(const GeneratedGroup& h, unsigned long cap) {
  auto e = h.elements(cap);
  std::sort(e.begin(), e.end());
  return e;
}

}  // namespace

GeneratedGroup normalizer(const GeneratedGroup& g, const GeneratedGroup& h) {
  if (!is_subgroup(g, h)) throw std::invalid_argument("h is not a subgroup of g");
  auto act = [](const std::vector<Permutation>& key, const Permutation& s) {
    std::vector<Permutation> out;
    out.reserve(key.size());
    for (const auto& x : key) out.push_back(conjugate_perm(x, s));
    std::sort(out.begin(), out.end());
    return out;
  };
  auto [orb, stab] =
      orbit_stabilizer(g, sorted_elements(h, 200000), act, h.generators(), 500000);
  (void)orb;
  return stab.renamed("N(" + h.name() + ")");
}

GeneratedGroup sylow_subgroup(const GeneratedGroup& g, unsigned long p, RandomSource* r) {
  const mpz_class target = p_part(g.order(), p);
  if (target == 1) throw std::invalid_argument("p does not divide the group order");
  RandomSource local(0x53594c4f57ULL, p);
  if (!r) r = &local;

  GeneratedGroup pg = GeneratedGroup::trivial(g.degree(), "P" + std::to_string(p));
  for (int it = 0; it < 100000 && pg.order() < target; ++it) {
    // Inside N(P) the p-part of any element extends P to a larger p-group.
    const GeneratedGroup& pool = pg.is_trivial() ? g : normalizer(g, pg);
    const Permutation y = p_element(r->random_element(pool), p);
    if (y.is_identity() || pg.contains(y)) continue;
    auto gens = pg.generators();
    gens.push_back(y);
    pg = GeneratedGroup::make(std::move(gens), g.degree(), pg.name());
    if (p_part(pg.order(), p) != pg.order()) throw std::logic_error("non-p-element absorbed");
  }
  if (pg.order() != target) throw std::runtime_error("sylow construction stalled");
  return pg;
}

mpz_class DoubleCosetCensus::covered() const {
  mpz_class s = 0;
  for (const auto& e : entries) s += e.size;
  return s;
}

bool DoubleCosetCensus::has_regular_entry() const {
  const mpz_class sq = subgroup_order * subgroup_order;
  for (const auto& e : entries)
    if (e.size == sq) return true;
  return false;
}

std::set<Permutation> coset_orbit(const GeneratedGroup& k, const Permutation& x) {
  std::set<Permutation> seen;
  std::vector<Permutation> queue{k.chain().min_coset_rep(x)};
  seen.insert(queue[0]);
  for (size_t i = 0; i < queue.size(); ++i)
    for (const auto& s : k.generators()) {
      Permutation rep = k.chain().min_coset_rep(compose(queue[i], s));
      if (seen.insert(rep).second) queue.push_back(std::move(rep));
    }
  return seen;
}

DoubleCosetCensus double_cosets(const GeneratedGroup& g, const GeneratedGroup& k,
                                std::optional<long> budget, long max_index) {
  if (!is_subgroup(g, k)) throw std::invalid_argument("k is not a subgroup of g");
  DoubleCosetCensus census;
  census.ambient_order = g.order();
  census.subgroup_order = k.order();
  const mpz_class index = g.order() / k.order();

  if (!budget || index <= *budget) {
    // Complete census: K-orbits on the full coset enumeration.
    const CosetAction ca = coset_action(g, k, max_index);
    const long n = ca.degree();
    std::vector<Permutation> kimages;
    for (const auto& s : k.generators()) kimages.push_back(ca.image_of(s));
    std::vector<char> seen(n, 0);
    for (long start = 0; start < n; ++start) {
      if (seen[start]) continue;
      std::vector<int> orb{static_cast<int>(start)};
      seen[start] = 1;
      for (size_t i = 0; i < orb.size(); ++i)
        for (const auto& s : kimages) {
          const int q = s(orb[i]);
          if (!seen[q]) {
            seen[q] = 1;
            orb.push_back(q);
          }
        }
      census.entries.push_back(
          {ca.reps[start], k.order() * static_cast<unsigned long>(orb.size())});
    }
    census.complete = true;
    if (census.covered() != g.order()) throw std::logic_error("census does not cover G");
    return census;
  }

  // Partial census by random sampling; double cosets identified by their
  // minimal coset representative, never merely by size.
  RandomSource r(0xDC0DC0ULL, 0);
  std::set<Permutation> known;
  for (long t = 0; t < *budget; ++t) {
    const Permutation x = r.random_element(g);
    const auto orbit = coset_orbit(k, x);
    const Permutation& drep = *orbit.begin();
    if (!known.insert(drep).second) continue;
    const mpz_class size = k.order() * static_cast<unsigned long>(orbit.size());
    const mpz_class check = k.order() * k.order() / intersect(k, conjugate_subgroup(k, x)).order();
    if (size != check) throw std::logic_error("double-coset size mismatch");
    census.entries.push_back({drep, size});
    if (census.covered() == g.order()) {
      census.complete = true;
      break;
    }
  }
  std::sort(census.entries.begin(), census.entries.end(),
            [](const auto& a, const auto& b) { return a.rep < b.rep; });
  return census;
}

}  // namespace bst
