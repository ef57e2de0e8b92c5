#include "bst/base_engine.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <stdexcept>
#include <thread>

#include "bst/coset_action.hpp"

namespace bst {

namespace {

BaseSizeCertificate stamp(BaseSizeCertificate cert, const GeneratedGroup& g,
                          const GeneratedGroup& h) {
  cert.group_name = g.name();
  cert.group_order = g.order();
  cert.sub_name = h.name();
  cert.sub_order = h.order();
  return cert;
}

}  // namespace

bool verify_witness(const GeneratedGroup& g, const GeneratedGroup& h,
                    const std::vector<Permutation>& xs) {
  for (const auto& x : xs)
    if (!g.contains(x)) throw std::invalid_argument("conjugator outside g");
  GeneratedGroup meet = h;
  for (const auto& x : xs) {
    if (meet.is_trivial()) break;
    meet = intersect(meet, conjugate_subgroup(h, x));
  }
  return meet.is_trivial();
}

int lower_bound(const mpz_class& order_g, const mpz_class& index_n) {
  if (index_n < 2 || order_g < index_n) throw std::invalid_argument("need order >= index >= 2");
  mpz_class pow = index_n;
  int k = 1;
  while (pow < order_g) {
    pow *= index_n;
    ++k;
  }
  return k;
}

std::optional<BaseSizeCertificate> witness_search(const GeneratedGroup& g,
                                                  const GeneratedGroup& h, int target_c,
                                                  long trials, RandomSource& r) {
  BaseSizeCertificate cert;
  cert.kind = CertKind::witness;
  cert.rel = Rel::le;
  cert.seed = r.seed();
  cert.stream = r.stream();
  if (h.is_trivial()) {
    cert.value = 1;
    return stamp(cert, g, h);
  }
  if (target_c < 2) throw std::invalid_argument("target_c must be >= 2 for nontrivial h");
  const int k = target_c - 1;
  for (long t = 0; t < trials; ++t) {
    std::vector<Permutation> xs;
    xs.reserve(k);
    for (int i = 0; i < k; ++i) xs.push_back(r.random_element(g));
    if (verify_witness(g, h, xs)) {
      cert.value = target_c;
      cert.conjugators = std::move(xs);
      return stamp(cert, g, h);
    }
  }
  return std::nullopt;
}

std::optional<BaseSizeCertificate> witness_search_parallel(const GeneratedGroup& g,
                                                           const GeneratedGroup& h, int target_c,
                                                           long trials, uint64_t seed,
                                                           uint64_t stream, int workers) {
  if (workers <= 1) {
    RandomSource r(seed, stream);
    return witness_search(g, h, target_c, trials, r);
  }
  std::vector<std::optional<BaseSizeCertificate>> results(workers);
  std::atomic<int> best{workers};
  const long share = (trials + workers - 1) / workers;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      RandomSource r(seed, stream + static_cast<uint64_t>(w));
      // Search in small slices so a lower-numbered success cancels us.
      long done = 0;
      while (done < share && w < best.load()) {
        const long step = std::min<long>(32, share - done);
        auto res = witness_search(g, h, target_c, step, r);
        done += step;
        if (res) {
          results[w] = std::move(res);
          int cur = best.load();
          while (w < cur && !best.compare_exchange_weak(cur, w)) {
          }
          return;
        }
      }
    });
  for (auto& t : pool) t.join();
  for (int w = 0; w < workers; ++w)
    if (results[w]) return results[w];
  return std::nullopt;
}

std::pair<bool, BaseSizeCertificate> has_regular_orbit(const GeneratedGroup& g,
                                                       const GeneratedGroup& h, long max_index) {
  const auto census = double_cosets(g, h, std::nullopt, max_index);
  const mpz_class sq = census.subgroup_order * census.subgroup_order;
  BaseSizeCertificate cert;
  for (const auto& e : census.entries)
    if (e.size == sq) {
      cert.kind = CertKind::regular_orbit;
      cert.rel = Rel::le;
      cert.value = 2;
      cert.conjugators = {e.rep};
      return {true, stamp(cert, g, h)};
    }
  cert.kind = CertKind::no_regular_orbit;
  cert.rel = Rel::ge;
  cert.value = 3;
  for (const auto& e : census.entries) cert.conjugators.push_back(e.rep);
  return {false, stamp(cert, g, h)};
}

std::optional<BaseSizeCertificate> partial_certificate_search(const GeneratedGroup& g,
                                                              const GeneratedGroup& h,
                                                              RandomSource& r, long budget) {
  if (h.is_trivial()) return std::nullopt;
  const mpz_class sq = h.order() * h.order();
  const mpz_class need = g.order() - sq;  // covered mass must exceed this
  BaseSizeCertificate cert;
  cert.kind = CertKind::partial_certificate;
  cert.rel = Rel::ge;
  cert.value = 3;
  cert.seed = r.seed();
  cert.stream = r.stream();

  mpz_class covered = 0;
  std::set<Permutation> known;
  while (covered <= need && budget-- > 0) {
    const Permutation x = r.random_element(g);
    const auto orbit = coset_orbit(h, x);
    const mpz_class size = h.order() * static_cast<unsigned long>(orbit.size());
    if (size == sq) continue;  // condition (i) excludes regular cosets
    const Permutation& drep = *orbit.begin();
    if (!known.insert(drep).second) continue;
    covered += size;
    cert.conjugators.push_back(drep);
  }
  if (covered > need) return stamp(cert, g, h);
  return std::nullopt;
}

bool verify_certificate(const GeneratedGroup& g, const GeneratedGroup& h,
                        const BaseSizeCertificate& cert) {
  if (cert.group_order != 0 && cert.group_order != g.order()) return false;
  if (cert.sub_order != 0 && cert.sub_order != h.order()) return false;
  switch (cert.kind) {
    case CertKind::witness:
    case CertKind::regular_orbit: {
      if (cert.rel != Rel::le) return false;
      if (h.is_trivial()) return cert.value >= 1;
      if (static_cast<int>(cert.conjugators.size()) + 1 != cert.value) return false;
      return verify_witness(g, h, cert.conjugators);
    }
    case CertKind::no_regular_orbit:
    case CertKind::partial_certificate: {
      if (cert.rel != Rel::ge || cert.value != 3 || h.is_trivial()) return false;
      const mpz_class sq = h.order() * h.order();
      mpz_class covered = 0;
      std::set<Permutation> seen;
      for (const auto& x : cert.conjugators) {
        if (!g.contains(x)) return false;
        const auto orbit = coset_orbit(h, x);
        if (!seen.insert(*orbit.begin()).second) return false;  // not pairwise distinct
        const mpz_class size = h.order() * static_cast<unsigned long>(orbit.size());
        if (size >= sq) return false;  // condition (i)
        covered += size;
      }
      if (cert.kind == CertKind::no_regular_orbit) return covered == g.order();
      return covered > g.order() - sq;  // condition (ii)
    }
    case CertKind::lower_bound: {
      if (cert.rel != Rel::ge) return false;
      return lower_bound(g.order(), g.order() / h.order()) == cert.value;
    }
    case CertKind::exhaustive: {
      if (cert.rel != Rel::eq) return false;
      return exhaustive_base_size(g, h) == cert.value;
    }
  }
  return false;
}

namespace {

std::vector<int> orbit_reps(const GeneratedGroup& s) {
  std::vector<char> seen(s.degree(), 0);
  std::vector<int> reps;
  for (int p = 0; p < s.degree(); ++p) {
    if (seen[p]) continue;
    reps.push_back(p);
    for (int q : s.orbit(p)) seen[q] = 1;
  }
  return reps;
}

GeneratedGroup point_stabilizer(const GeneratedGroup& s, int p) {
  auto act = [](int q, const Permutation& x) { return x(q); };
  return orbit_stabilizer(s, p, act).second;
}

bool base_of_size(const GeneratedGroup& s, int k) {
  if (s.is_trivial()) return true;
  if (k == 0) return false;
  mpz_class cap, maxorb = 1;
  std::vector<int> reps;
  for (int p : orbit_reps(s)) {
    const mpz_class osz = static_cast<unsigned long>(s.orbit(p).size());
    if (osz > 1) reps.push_back(p);
    maxorb = std::max(maxorb, osz);
  }
  mpz_pow_ui(cap.get_mpz_t(), maxorb.get_mpz_t(), static_cast<unsigned long>(k));
  if (cap < s.order()) return false;  // cannot shrink fast enough
  for (int p : reps)
    if (base_of_size(point_stabilizer(s, p), k - 1)) return true;
  return false;
}

}  // namespace

int exhaustive_base_size(const GeneratedGroup& g, const GeneratedGroup& h) {
  if (g.order() > 1000000) throw std::runtime_error("exhaustive cap: |G| > 10^6");
  const mpz_class index = g.order() / h.order();
  if (index > 500) throw std::runtime_error("exhaustive cap: index > 500");
  const auto ca = coset_action(g, h, 500);
  if (!ca.kernel.is_trivial()) throw std::invalid_argument("h is not core-free");
  for (int k = 1; k <= 64; ++k)
    if (base_of_size(ca.image, k)) return k;
  throw std::logic_error("no base found");
}

BaseSizeResult exact_base_size(const GeneratedGroup& g, const GeneratedGroup& h,
                               const BasePolicy& policy) {
  if (!is_subgroup(g, h)) throw std::invalid_argument("h is not a subgroup of g");
  if (!core_in(g, h).is_trivial()) throw std::invalid_argument("h is not core-free");

  BaseSizeResult res;
  if (h.is_trivial()) {
    BaseSizeCertificate cert;
    cert.kind = CertKind::witness;
    cert.rel = Rel::le;
    cert.value = 1;
    res.lower = 1;
    res.upper = 1;
    res.exact = true;
    res.certificates.push_back(stamp(cert, g, h));
    return res;
  }

  const mpz_class index = g.order() / h.order();
  res.lower = lower_bound(g.order(), index);
  {
    BaseSizeCertificate lc;
    lc.kind = CertKind::lower_bound;
    lc.rel = Rel::ge;
    lc.value = res.lower;
    res.certificates.push_back(stamp(lc, g, h));
  }

  // Decide b = 2 vs b >= 3 by double cosets when the index permits.
  if (index <= policy.census_index_cap) {
    auto [regular, cert] = has_regular_orbit(g, h, policy.census_index_cap);
    res.certificates.push_back(cert);
    if (regular) {
      res.upper = 2;
      res.lower = std::max(res.lower, 2);
      res.exact = (res.lower == 2);
      return res;
    }
    res.lower = std::max(res.lower, 3);
  } else {
    RandomSource r(policy.seed, 1000000);  // reserved stream for census sampling
    if (auto pc = partial_certificate_search(g, h, r, policy.partial_budget)) {
      res.certificates.push_back(*pc);
      res.lower = std::max(res.lower, 3);
    }
  }

  for (int c = std::max(res.lower, 2); c <= policy.max_c; ++c) {
    auto w = witness_search_parallel(g, h, c, policy.trials, policy.seed, 0, policy.workers);
    if (w) {
      res.certificates.push_back(*w);
      res.upper = c;
      break;
    }
  }

  if (policy.exhaustive) {
    const int b = exhaustive_base_size(g, h);
    BaseSizeCertificate ec;
    ec.kind = CertKind::exhaustive;
    ec.rel = Rel::eq;
    ec.value = b;
    res.certificates.push_back(stamp(ec, g, h));
    res.lower = b;
    res.upper = b;
  }

  res.exact = res.upper.has_value() && *res.upper == res.lower;
  return res;
}

std::optional<BaseSizeCertificate> descend_bound(const GeneratedGroup& g,
                                                 const std::vector<GeneratedGroup>& chain,
                                                 int target_c, long trials, RandomSource& r) {
  for (const auto& j : chain)
    if (auto cert = witness_search(g, j, target_c, trials, r)) return cert;
  return std::nullopt;
}

SurveyTable survey(const GeneratedGroup& g, const std::vector<GeneratedGroup>& catalog,
                   const BasePolicy& policy) {
  struct Item {
    GeneratedGroup grp;
    SurveyRow row;
  };
  std::vector<Item> items;
  for (const auto& h : catalog) {
    Item it{h, {}};
    it.row.name = h.name();
    it.row.order = h.order();
    it.row.soluble = is_soluble(h);
    it.row.corefree = core_in(g, h).is_trivial();
    items.push_back(std::move(it));
  }
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    if (a.row.order != b.row.order) return a.row.order > b.row.order;
    return a.row.name < b.row.name;
  });

  for (size_t i = 0; i < items.size(); ++i) {
    auto& it = items[i];
    if (!it.row.soluble || !it.row.corefree) continue;
    auto res = exact_base_size(g, it.grp, policy);
    // Monotonicity: a verified witness for an overgroup also serves here.
    for (size_t j = 0; j < i && !res.exact; ++j) {
      if (!items[j].row.result) continue;
      if (!is_subgroup(items[j].grp, it.grp)) continue;
      for (const auto& cert : items[j].row.result->certificates) {
        if (cert.rel != Rel::le || cert.kind == CertKind::exhaustive) continue;
        const int c = cert.value;
        if (res.upper && c >= *res.upper) continue;
        if (!verify_witness(g, it.grp, cert.conjugators)) continue;
        auto inherited = stamp(cert, g, it.grp);
        res.certificates.push_back(inherited);
        res.upper = c;
        res.exact = (*res.upper == res.lower);
      }
    }
    it.row.result = std::move(res);
  }

  SurveyTable table;
  int s = 0;
  bool all_exact = true, any = false;
  for (auto& it : items) {
    if (it.row.result) {
      any = true;
      if (it.row.result->exact)
        s = std::max(s, *it.row.result->upper);
      else
        all_exact = false;
    }
    table.rows.push_back(std::move(it.row));
  }
  if (any && all_exact) table.s_value = s;
  return table;
}

}  // namespace bst
