#include "bst/class_bounds.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace bst {

namespace {

bool is_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

mpz_class zpow(const mpz_class& b, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

}  // namespace

const ClassInfo* ClassTable::find(const std::string& label) const {
  for (const auto& c : classes)
    if (c.label == label) return &c;
  return nullptr;
}

const ClassInfo& ClassTable::at(const std::string& label) const {
  if (const auto* c = find(label)) return *c;
  throw std::invalid_argument("unknown class " + label + " in " + group);
}

void ClassTable::validate() const {
  std::set<std::string> seen;
  for (const auto& c : classes) {
    if (!seen.insert(c.label).second)
      throw std::invalid_argument("duplicate class label " + c.label + " in " + group);
    if (c.element_order < 1) throw std::invalid_argument("bad element order for " + c.label);
    if (c.size < 1 || order % c.size != 0)
      throw std::invalid_argument("class size of " + c.label + " does not divide |" + group + "|");
    if (c.element_order == 1 && c.size != 1)
      throw std::invalid_argument("identity class of " + group + " must have size 1");
  }
}

const mpz_class* SubgroupClassData::find(const std::string& label) const {
  for (const auto& [l, n] : counts)
    if (l == label) return &n;
  return nullptr;
}

void SubgroupClassData::validate(const ClassTable& t) const {
  for (const auto& [label, n] : counts) {
    const auto& cls = t.at(label);
    if (n < 0 || n > cls.size || n > order)
      throw std::invalid_argument("count for " + label + " out of range in " + subgroup);
  }
}

mpq_class fpr(const ClassTable& table, const SubgroupClassData& data, const std::string& label) {
  const auto& cls = table.at(label);
  const auto* n = data.find(label);
  if (!n) throw std::invalid_argument("no count for class " + label + " in " + data.subgroup);
  mpq_class r(*n, cls.size);
  r.canonicalize();
  return r;
}

mpq_class lemma_bound(const mpz_class& a, const mpz_class& b, int c) {
  if (a < 0 || b < 1 || c < 1) throw std::invalid_argument("lemma_bound: bad inputs");
  mpq_class r(zpow(a, static_cast<unsigned long>(c)),
              zpow(b, static_cast<unsigned long>(c - 1)));
  r.canonicalize();
  return r;
}

mpq_class qhat(const ClassTable& table, const SubgroupClassData& data, int c) {
  if (c < 1) throw std::invalid_argument("qhat: c must be >= 1");
  mpq_class total = 0;
  for (const auto& cls : table.classes) {
    if (!is_prime(cls.element_order)) continue;
    const auto* n = data.find(cls.label);
    if (!n)
      throw std::invalid_argument("qhat: prime-order class " + cls.label +
                                  " has no count for " + data.subgroup);
    total += lemma_bound(*n, cls.size, c);  // size * (count/size)^c
  }
  return total;
}

SubgroupClassData fuse_counts(const ClassTable& sub_table, const FusionMap& fusion,
                              const ClassTable* ambient_table) {
  if (fusion.source != sub_table.group)
    throw std::invalid_argument("fusion source " + fusion.source + " != " + sub_table.group);
  std::map<std::string, mpz_class> acc;
  for (const auto& c : sub_table.classes) {
    const auto it = fusion.map.find(c.label);
    if (it == fusion.map.end())
      throw std::invalid_argument("class " + c.label + " unmapped by fusion to " + fusion.target);
    if (ambient_table) {
      const auto& target = ambient_table->at(it->second);
      if (target.element_order != c.element_order)
        throw std::invalid_argument("fusion " + c.label + " -> " + it->second +
                                    " changes element order");
    }
    acc[it->second] += c.size;
  }
  SubgroupClassData out;
  out.subgroup = sub_table.group;
  out.ambient = fusion.target;
  out.order = sub_table.order;
  for (auto& [l, n] : acc) out.counts.emplace_back(l, n);
  return out;
}

SubgroupClassData lift_involution_counts(
    const std::vector<std::pair<std::string, mpz_class>>& quotient_counts, const LiftSpec& lift,
    const FusionMap& fusion_to_ambient, std::string subgroup_name, mpz_class subgroup_order) {
  std::map<std::string, mpz_class> lifted;
  lifted[lift.central_label] += 1;
  for (const auto& [label, count] : quotient_counts) {
    const auto it = lift.rules.find(label);
    if (it == lift.rules.end())
      throw std::invalid_argument("no lift rule for class " + label);
    const LiftRule& r = it->second;
    switch (r.kind) {
      case LiftRule::Kind::split:
        lifted[r.l1] += count;
        lifted[r.l2] += count;
        break;
      case LiftRule::Kind::identified:
        lifted[r.l1] += 2 * count;
        break;
      case LiftRule::Kind::order_doubled:
        break;  // preimages have order 4
    }
  }
  std::map<std::string, mpz_class> acc;
  for (const auto& [label, count] : lifted) {
    const auto it = fusion_to_ambient.map.find(label);
    if (it == fusion_to_ambient.map.end())
      throw std::invalid_argument("lifted class " + label + " unmapped by fusion");
    acc[it->second] += count;
  }
  SubgroupClassData out;
  out.subgroup = std::move(subgroup_name);
  out.ambient = fusion_to_ambient.target;
  out.order = std::move(subgroup_order);
  for (auto& [l, n] : acc) out.counts.emplace_back(l, n);
  return out;
}

ClassTable lift_class_table(const ClassTable& quotient, const LiftSpec& lift) {
  ClassTable out;
  out.group = lift.extension;
  out.order = 2 * quotient.order;
  out.classes.push_back({lift.central_label, 2, 1});
  for (const auto& c : quotient.classes) {
    if (c.element_order != 2) continue;
    const auto it = lift.rules.find(c.label);
    if (it == lift.rules.end())
      throw std::invalid_argument("no lift rule for involution class " + c.label);
    const LiftRule& r = it->second;
    switch (r.kind) {
      case LiftRule::Kind::split:
        out.classes.push_back({r.l1, 2, c.size});
        out.classes.push_back({r.l2, 2, c.size});
        break;
      case LiftRule::Kind::identified:
        out.classes.push_back({r.l1, 2, 2 * c.size});
        break;
      case LiftRule::Kind::order_doubled:
        break;
    }
  }
  std::sort(out.classes.begin(), out.classes.end(),
            [](const ClassInfo& a, const ClassInfo& b) { return a.label < b.label; });
  return out;
}

mpz_class perm_char_count(const mpz_class& class_size, const mpz_class& index,
                          const mpz_class& chi) {
  if (class_size < 1 || index < 1 || chi < 0)
    throw std::invalid_argument("perm_char_count: bad inputs");
  const mpz_class num = class_size * chi;
  if (num % index != 0)
    throw std::invalid_argument("perm_char_count: non-integral result (inconsistent data)");
  return num / index;
}

mpz_class poly_eval(const IntPoly& p, const mpz_class& q) {
  if (q < 2) throw std::invalid_argument("poly_eval: q must be >= 2");
  mpz_class v = 0;
  for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) v = v * q + *it;
  return v;
}

mpz_class centralizer_class_size(const mpz_class& group_order, const mpz_class& centralizer) {
  if (centralizer < 1 || group_order % centralizer != 0)
    throw std::invalid_argument("centralizer order does not divide group order");
  return group_order / centralizer;
}

mpz_class lie_group_order(const std::string& series, int n, unsigned long q) {
  const mpz_class Q(static_cast<unsigned long>(q));
  auto qe = [&](unsigned long e) { return zpow(Q, e); };
  if (series == "GU" || series == "SU" || series == "U") {
    if (n < 1) throw std::invalid_argument("GU/SU/U needs n >= 1");
    const auto m = static_cast<unsigned long>(n);
    mpz_class o = zpow(Q, m * (m - 1) / 2);
    for (unsigned long i = 1; i <= m; ++i) o *= qe(i) - ((i % 2) ? -1 : 1);
    if (series == "GU") return o;
    o /= Q + 1;  // SU
    if (series == "SU") return o;
    mpz_class d, nn(m), q1(Q + 1);
    mpz_gcd(d.get_mpz_t(), nn.get_mpz_t(), q1.get_mpz_t());
    return o / d;  // U = PSU
  }
  if (series == "Sp") {
    if (n < 2 || n % 2) throw std::invalid_argument("Sp needs even n >= 2");
    const auto m = static_cast<unsigned long>(n / 2);
    mpz_class o = zpow(Q, m * m);
    for (unsigned long i = 1; i <= m; ++i) o *= qe(2 * i) - 1;
    return o;
  }
  if (series == "Omega+" || series == "Omega-") {
    if (n < 4 || n % 2) throw std::invalid_argument("Omega needs even n >= 4");
    const auto m = static_cast<unsigned long>(n / 2);
    const int eps = series == "Omega+" ? 1 : -1;
    mpz_class o = zpow(Q, m * (m - 1));
    mpz_class head = qe(m) - eps;
    o *= head;
    for (unsigned long i = 1; i < m; ++i) o *= qe(2 * i) - 1;
    mpz_class d, four(4);
    mpz_gcd(d.get_mpz_t(), four.get_mpz_t(), head.get_mpz_t());
    return o / d;  // projective simple group
  }
  if (series == "F4") return qe(24) * (qe(2) - 1) * (qe(6) - 1) * (qe(8) - 1) * (qe(12) - 1);
  if (series == "G2") return qe(6) * (qe(2) - 1) * (qe(6) - 1);
  if (series == "2E6") {
    mpz_class o = qe(36) * (qe(2) - 1) * (qe(5) + 1) * (qe(6) - 1) * (qe(8) - 1) * (qe(9) + 1) *
                  (qe(12) - 1);
    mpz_class d, three(3), q1(Q + 1);
    mpz_gcd(d.get_mpz_t(), three.get_mpz_t(), q1.get_mpz_t());
    return o / d;  // simple group of type 2E6
  }
  throw std::invalid_argument("unsupported series " + series);
}

ReportResult verify_report(const ReportSpec& spec,
                           const std::map<std::string, ClassTable>& tables) {
  const auto it = tables.find(spec.group);
  if (it == tables.end()) throw std::invalid_argument("missing class table " + spec.group);
  const ClassTable& table = it->second;
  ReportResult res;
  res.name = spec.name;
  res.total = 0;
  bool ok = true;
  for (const auto& term : spec.terms) {
    mpq_class v = 0;
    for (const auto& con : term.contribs) {
      mpz_class b;
      if (con.explicit_b)
        b = *con.explicit_b;
      else
        b = table.at(con.class_label).size;
      if (con.kind == ReportContrib::Kind::class_count && con.a > b)
        throw std::invalid_argument("count exceeds class size for " + con.class_label);
      v += lemma_bound(con.a, b, spec.c);
    }
    const bool term_ok = !term.max || v < *term.max;
    ok = ok && term_ok;
    res.terms.push_back({term.label, v, term.max, term_ok});
    res.total += v;
  }
  res.ok = ok && res.total < 1;
  return res;
}

}  // namespace bst
