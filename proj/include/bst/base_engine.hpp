#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bst/group.hpp"
#include "bst/rng.hpp"
#include "bst/subgroup_algebra.hpp"

namespace bst {

enum class CertKind {
  witness,              // conjugators x1..xk: b <= k+1
  regular_orbit,        // single conjugator with H ∩ H^x = 1: b <= 2
  no_regular_orbit,     // complete double-coset census, none regular: b >= 3
  partial_certificate,  // Remark-style set T with (i)+(ii): b >= 3
  lower_bound,          // index^k >= |G| bound
  exhaustive,           // exact search: b = value
};

enum class Rel { le, ge, eq };

struct BaseSizeCertificate {
  CertKind kind = CertKind::witness;
  Rel rel = Rel::le;
  int value = 0;
  std::vector<Permutation> conjugators;  // witness tuple or double-coset reps
  uint64_t seed = 0, stream = 0;
  std::string group_name, sub_name;
  mpz_class group_order, sub_order;
};

struct BaseSizeResult {
  int lower = 1;
  std::optional<int> upper;  // absent when no upper bound was certified
  std::vector<BaseSizeCertificate> certificates;
  bool exact = false;
};

struct BasePolicy {
  int max_c = 5;
  long trials = 10000;
  uint64_t seed = 42;
  int workers = 1;
  bool exhaustive = false;
  long census_index_cap = 1000000;   // complete census attempted below this
  long partial_budget = 20000;
};

// True iff h ∩ h^{x1} ∩ ... ∩ h^{xk} = 1 (each x must lie in g).
bool verify_witness(const GeneratedGroup& g, const GeneratedGroup& h,
                    const std::vector<Permutation>& xs);

// Smallest k >= 1 with index^k >= order (exact integer powering).
int lower_bound(const mpz_class& order_g, const mpz_class& index_n);

// Re-check any certificate from scratch against (g, h). Throws on kind
// mismatch with the stored metadata; returns false if the evidence fails.
bool verify_certificate(const GeneratedGroup& g, const GeneratedGroup& h,
                        const BaseSizeCertificate& cert);

std::optional<BaseSizeCertificate> witness_search(const GeneratedGroup& g,
                                                  const GeneratedGroup& h, int target_c,
                                                  long trials, RandomSource& r);

// Fans the search out over `workers` independent streams (stream, stream+1,
// ...); the certificate from the lowest-numbered successful stream wins, so
// the result is schedule-independent and equals the workers=1 result when
// that stream succeeds.
std::optional<BaseSizeCertificate> witness_search_parallel(const GeneratedGroup& g,
                                                           const GeneratedGroup& h, int target_c,
                                                           long trials, uint64_t seed,
                                                           uint64_t stream, int workers);

std::pair<bool, BaseSizeCertificate> has_regular_orbit(const GeneratedGroup& g,
                                                       const GeneratedGroup& h,
                                                       long max_index = 10000000);

std::optional<BaseSizeCertificate> partial_certificate_search(const GeneratedGroup& g,
                                                              const GeneratedGroup& h,
                                                              RandomSource& r, long budget);

BaseSizeResult exact_base_size(const GeneratedGroup& g, const GeneratedGroup& h,
                               const BasePolicy& policy = {});

// First group in the descending chain admitting a verified witness yields a
// certificate valid for every subgroup further down.
std::optional<BaseSizeCertificate> descend_bound(const GeneratedGroup& g,
                                                 const std::vector<GeneratedGroup>& chain,
                                                 int target_c, long trials, RandomSource& r);

struct SurveyRow {
  std::string name;
  mpz_class order;
  bool soluble = false;
  bool corefree = false;
  std::optional<BaseSizeResult> result;  // absent for filtered-out entries
};

struct SurveyTable {
  std::vector<SurveyRow> rows;  // sorted by (order desc, name)
  std::optional<int> s_value;   // max exact b over soluble core-free entries
};

SurveyTable survey(const GeneratedGroup& g, const std::vector<GeneratedGroup>& catalog,
                   const BasePolicy& policy = {});

// Independent oracle: exact b by depth-first search over the coset action.
// Requires |G:H| <= 500, |G| <= 10^6, and core-free h.
int exhaustive_base_size(const GeneratedGroup& g, const GeneratedGroup& h);

}  // namespace bst
