#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace bst {

struct ClassInfo {
  std::string label;
  unsigned long element_order = 1;
  mpz_class size;
};

struct ClassTable {
  std::string group;
  mpz_class order;
  std::vector<ClassInfo> classes;

  const ClassInfo* find(const std::string& label) const;
  const ClassInfo& at(const std::string& label) const;  // throws on missing label
  void validate() const;  // label uniqueness, divisibility, identity class
};

struct FusionMap {
  std::string source, target;
  std::map<std::string, std::string> map;
};

struct LiftRule {
  enum class Kind { split, identified, order_doubled };
  Kind kind = Kind::split;
  std::string l1, l2;  // lifted labels (split: both; identified: l1)
};

struct LiftSpec {
  std::string quotient, extension;
  std::string central_label;  // class of the central involution, size 1
  std::map<std::string, LiftRule> rules;  // per quotient involution class
};

struct SubgroupClassData {
  std::string subgroup;
  std::string ambient;  // group whose classes the counts refer to
  mpz_class order;
  std::vector<std::pair<std::string, mpz_class>> counts;  // |x^G ∩ H| per label

  const mpz_class* find(const std::string& label) const;
  void validate(const ClassTable& ambient_table) const;  // 0 <= count <= min(size, |H|)
};

struct IntPoly {
  std::vector<mpz_class> coeffs;  // ascending degree
};

// |x^G ∩ H| / |x^G|, exact.
mpq_class fpr(const ClassTable& table, const SubgroupClassData& data, const std::string& label);

// Σ over prime-element-order classes of size * fpr^c. Every prime-order class
// of the table must carry a count (a missing class is an error, never zero).
mpq_class qhat(const ClassTable& table, const SubgroupClassData& data, int c);

// b * (a/b)^c = a^c / b^(c-1), exact.
mpq_class lemma_bound(const mpz_class& a, const mpz_class& b, int c);

// Push the full class sizes of sub_table to ambient classes along the fusion
// map. With an ambient table supplied, element orders and target labels are
// validated.
SubgroupClassData fuse_counts(const ClassTable& sub_table, const FusionMap& fusion,
                              const ClassTable* ambient_table = nullptr);

// Involution counts in a central extension: split rules copy the quotient
// count to both lifted classes, identified rules double it, order-doubled
// rules drop it, and the central involution adds 1; everything is then fused
// to ambient classes.
SubgroupClassData lift_involution_counts(
    const std::vector<std::pair<std::string, mpz_class>>& quotient_counts, const LiftSpec& lift,
    const FusionMap& fusion_to_ambient, std::string subgroup_name = "",
    mpz_class subgroup_order = 0);

// Involution classes of the central extension from those of the quotient.
ClassTable lift_class_table(const ClassTable& quotient, const LiftSpec& lift);

// size * chi / index, which must be a nonnegative integer.
mpz_class perm_char_count(const mpz_class& class_size, const mpz_class& index,
                          const mpz_class& chi);

mpz_class poly_eval(const IntPoly& p, const mpz_class& q);

// Orders of classical/exceptional groups. Supported series: GU, SU, U (=PSU),
// Sp, Omega+, Omega- (projective), F4, G2, 2E6 (simple). n is the natural
// dimension (ignored for F4/G2/2E6).
mpz_class lie_group_order(const std::string& series, int n, unsigned long q);

mpz_class centralizer_class_size(const mpz_class& group_order, const mpz_class& centralizer);

// ---- Q̂ reports (Claims of §-style arithmetic, kept data-driven) ----

struct ReportContrib {
  enum class Kind { class_count, lemma };
  Kind kind = Kind::class_count;
  std::string class_label;            // ambient class supplying b (and size)
  mpz_class a;                        // count (class_count) or numerator (lemma)
  std::optional<mpz_class> explicit_b;  // lemma with a literal denominator
};

struct ReportTerm {
  std::string label;               // e.g. "alpha"
  std::optional<mpq_class> max;    // strict upper bound to check
  std::vector<ReportContrib> contribs;
};

struct ReportSpec {
  std::string name;    // e.g. the subgroup handled
  std::string suite;   // monster | baby-parabolics | baby-nonparabolic | ...
  std::string group;   // ambient class table
  int c = 2;
  std::vector<ReportTerm> terms;
};

struct ReportResult {
  struct TermResult {
    std::string label;
    mpq_class value;
    std::optional<mpq_class> max;
    bool ok = true;
  };
  std::string name;
  std::vector<TermResult> terms;
  mpq_class total;
  bool ok = false;  // every term bound holds and total < 1
};

ReportResult verify_report(const ReportSpec& spec,
                           const std::map<std::string, ClassTable>& tables);

}  // namespace bst
