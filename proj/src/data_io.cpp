#include "bst/data_io.hpp"

#include <algorithm>
#include <sstream>

namespace bst {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream is(line);
  std::string t;
  while (is >> t) {
    if (t[0] == '#') break;  // comment to end of line
    toks.push_back(t);
  }
  return toks;
}

mpz_class parse_int(const std::string& s, const std::string& file, int line) {
  try {
    return mpz_class(s);
  } catch (const std::exception&) {
    throw ParseError(file, line, "expected integer, got '" + s + "'");
  }
}

unsigned long parse_ulong(const std::string& s, const std::string& file, int line) {
  const mpz_class v = parse_int(s, file, line);
  if (v < 0 || !v.fits_ulong_p()) throw ParseError(file, line, "integer out of range: " + s);
  return v.get_ui();
}

mpq_class parse_rat(const std::string& s, const std::string& file, int line) {
  try {
    mpq_class q(s);
    q.canonicalize();
    return q;
  } catch (const std::exception&) {
    throw ParseError(file, line, "expected rational, got '" + s + "'");
  }
}

}  // namespace

GeneratedGroup parse_group_file(const std::string& text, const std::string& filename) {
  std::istringstream is(text);
  std::string line, name;
  int degree = -1, ln = 0;
  std::vector<Permutation> gens;
  while (std::getline(is, line)) {
    ++ln;
    const auto toks = tokenize(line);
    if (toks.empty()) continue;
    if (toks[0] == "name") {
      if (toks.size() != 2) throw ParseError(filename, ln, "name takes one token");
      name = toks[1];
    } else if (toks[0] == "degree") {
      if (toks.size() != 2) throw ParseError(filename, ln, "degree takes one integer");
      degree = static_cast<int>(parse_ulong(toks[1], filename, ln));
      if (degree < 1) throw ParseError(filename, ln, "degree must be positive");
    } else if (toks[0] == "gen") {
      if (degree < 0) throw ParseError(filename, ln, "gen before degree");
      if (static_cast<int>(toks.size()) - 1 != degree)
        throw ParseError(filename, ln, "gen needs exactly " + std::to_string(degree) + " images");
      std::vector<int> img(degree);
      for (int i = 0; i < degree; ++i) {
        const auto v = parse_ulong(toks[i + 1], filename, ln);
        if (v < 1 || static_cast<int>(v) > degree)
          throw ParseError(filename, ln, "image out of range: " + toks[i + 1]);
        img[i] = static_cast<int>(v);
      }
      try {
        gens.push_back(Permutation::from_one_based(img));
      } catch (const std::exception& e) {
        throw ParseError(filename, ln, e.what());
      }
    } else {
      throw ParseError(filename, ln, "unknown keyword '" + toks[0] + "'");
    }
  }
  if (degree < 0) throw ParseError(filename, 0, "missing degree");
  return GeneratedGroup::make(std::move(gens), degree, name);
}

std::string serialize_group(const GeneratedGroup& g) {
  std::ostringstream os;
  if (!g.name().empty()) os << "name " << g.name() << "\n";
  os << "degree " << g.degree() << "\n";
  for (const auto& x : g.generators()) os << "gen " << x.one_based_images() << "\n";
  return os.str();
}

const FusionMap& ClassDataSet::fusion(const std::string& src, const std::string& dst) const {
  for (const auto& f : fusions)
    if (f.source == src && f.target == dst) return f;
  throw std::invalid_argument("no fusion " + src + " -> " + dst);
}

const SubgroupClassData& ClassDataSet::subgroup(const std::string& name,
                                                const std::string& ambient) const {
  for (const auto& s : subgroup_data)
    if (s.subgroup == name && s.ambient == ambient) return s;
  throw std::invalid_argument("no subgroup data for " + name + " in " + ambient);
}

void ClassDataSet::merge(ClassDataSet o) {
  for (auto& [k, v] : o.tables) {
    if (tables.count(k)) throw std::invalid_argument("duplicate class table " + k);
    tables.emplace(k, std::move(v));
  }
  auto app = [](auto& dst, auto& src) {
    dst.insert(dst.end(), std::make_move_iterator(src.begin()),
               std::make_move_iterator(src.end()));
  };
  app(fusions, o.fusions);
  app(lifts, o.lifts);
  app(subgroup_data, o.subgroup_data);
  app(reports, o.reports);
}

void ClassDataSet::strict_check() const {
  for (const auto& [name, t] : tables) t.validate();
  for (const auto& f : fusions) {
    const auto src = tables.find(f.source);
    const auto dst = tables.find(f.target);
    if (src != tables.end()) {
      for (const auto& c : src->second.classes)
        if (!f.map.count(c.label))
          throw std::invalid_argument("fusion " + f.source + "->" + f.target +
                                      " misses class " + c.label);
    }
    if (src != tables.end() && dst != tables.end())
      fuse_counts(src->second, f, &dst->second);  // validates order preservation
  }
  for (const auto& s : subgroup_data) {
    const auto amb = tables.find(s.ambient);
    if (amb != tables.end()) s.validate(amb->second);
  }
  for (const auto& l : lifts) {
    const auto q = tables.find(l.quotient);
    const auto e = tables.find(l.extension);
    if (q == tables.end() || e == tables.end()) continue;
    if (e->second.order != 2 * q->second.order)
      throw std::invalid_argument("extension order is not twice the quotient order for " +
                                  l.extension);
    const auto lifted = lift_class_table(q->second, l);
    auto invs = [](const ClassTable& t) {
      std::map<std::string, mpz_class> m;
      for (const auto& c : t.classes)
        if (c.element_order == 2) m[c.label] = c.size;
      return m;
    };
    if (invs(lifted) != invs(e->second))
      throw std::invalid_argument("lift recomputation mismatch for " + l.extension);
  }
}

ClassDataSet parse_class_data(const std::string& text, const std::string& filename) {
  ClassDataSet d;
  std::istringstream is(text);
  std::string line;
  int ln = 0;
  ClassTable* table = nullptr;
  FusionMap* fus = nullptr;
  LiftSpec* lift = nullptr;
  SubgroupClassData* sub = nullptr;
  ReportSpec* rep = nullptr;
  ReportTerm* term = nullptr;
  auto close_all = [&] { table = nullptr; fus = nullptr; lift = nullptr; sub = nullptr;
                         rep = nullptr; term = nullptr; };

  while (std::getline(is, line)) {
    ++ln;
    const auto t = tokenize(line);
    if (t.empty()) continue;
    const auto& kw = t[0];
    if (kw == "group") {
      close_all();
      if (t.size() != 4 || t[2] != "order")
        throw ParseError(filename, ln, "expected: group <name> order <int>");
      if (d.tables.count(t[1])) throw ParseError(filename, ln, "duplicate group " + t[1]);
      ClassTable ct;
      ct.group = t[1];
      ct.order = parse_int(t[3], filename, ln);
      table = &d.tables.emplace(t[1], std::move(ct)).first->second;
    } else if (kw == "class") {
      if (!table) throw ParseError(filename, ln, "class outside a group section");
      if (t.size() != 4) throw ParseError(filename, ln, "expected: class <label> <order> <size>");
      if (table->find(t[1])) throw ParseError(filename, ln, "duplicate class label " + t[1]);
      table->classes.push_back(
          {t[1], parse_ulong(t[2], filename, ln), parse_int(t[3], filename, ln)});
    } else if (kw == "fusion") {
      close_all();
      if (t.size() != 4 || t[2] != "->")
        throw ParseError(filename, ln, "expected: fusion <src> -> <dst>");
      d.fusions.push_back({t[1], t[3], {}});
      fus = &d.fusions.back();
    } else if (kw == "map") {
      if (!fus) throw ParseError(filename, ln, "map outside a fusion section");
      if (t.size() != 3) throw ParseError(filename, ln, "expected: map <src> <dst>");
      if (!fus->map.emplace(t[1], t[2]).second)
        throw ParseError(filename, ln, "duplicate fusion source " + t[1]);
    } else if (kw == "lift") {
      close_all();
      if (t.size() != 6 || t[2] != "by-center-of" || t[4] != "central")
        throw ParseError(filename, ln,
                         "expected: lift <quotient> by-center-of <extension> central <label>");
      d.lifts.push_back({t[1], t[3], t[5], {}});
      lift = &d.lifts.back();
    } else if (kw == "rule") {
      if (!lift) throw ParseError(filename, ln, "rule outside a lift section");
      if (t.size() < 3) throw ParseError(filename, ln, "rule too short");
      LiftRule r;
      if (t[2] == "split") {
        if (t.size() != 5) throw ParseError(filename, ln, "expected: rule <class> split <l1> <l2>");
        r = {LiftRule::Kind::split, t[3], t[4]};
      } else if (t[2] == "identified") {
        if (t.size() != 4) throw ParseError(filename, ln, "expected: rule <class> identified <l1>");
        r = {LiftRule::Kind::identified, t[3], ""};
      } else if (t[2] == "order-doubled") {
        if (t.size() != 3) throw ParseError(filename, ln, "expected: rule <class> order-doubled");
        r = {LiftRule::Kind::order_doubled, "", ""};
      } else {
        throw ParseError(filename, ln, "unknown lift behavior '" + t[2] + "'");
      }
      if (!lift->rules.emplace(t[1], r).second)
        throw ParseError(filename, ln, "duplicate rule for " + t[1]);
    } else if (kw == "subgroupdata") {
      close_all();
      if (t.size() != 6 || t[2] != "in" || t[4] != "order")
        throw ParseError(filename, ln, "expected: subgroupdata <name> in <group> order <int>");
      SubgroupClassData s;
      s.subgroup = t[1];
      s.ambient = t[3];
      s.order = parse_int(t[5], filename, ln);
      d.subgroup_data.push_back(std::move(s));
      sub = &d.subgroup_data.back();
    } else if (kw == "count") {
      if (!sub) throw ParseError(filename, ln, "count outside a subgroupdata section");
      if (t.size() != 3) throw ParseError(filename, ln, "expected: count <label> <int>");
      if (sub->find(t[1])) throw ParseError(filename, ln, "duplicate count for " + t[1]);
      sub->counts.emplace_back(t[1], parse_int(t[2], filename, ln));
    } else if (kw == "report") {
      close_all();
      if (t.size() != 8 || t[2] != "suite" || t[4] != "group" || t[6] != "c")
        throw ParseError(filename, ln,
                         "expected: report <name> suite <suite> group <group> c <int>");
      ReportSpec r;
      r.name = t[1];
      r.suite = t[3];
      r.group = t[5];
      r.c = static_cast<int>(parse_ulong(t[7], filename, ln));
      d.reports.push_back(std::move(r));
      rep = &d.reports.back();
    } else if (kw == "term") {
      if (!rep) throw ParseError(filename, ln, "term outside a report section");
      ReportTerm tm;
      if (t.size() == 2) {
        tm.label = t[1];
      } else if (t.size() == 4 && t[2] == "max") {
        tm.label = t[1];
        tm.max = parse_rat(t[3], filename, ln);
      } else {
        throw ParseError(filename, ln, "expected: term <label> [max <rational>]");
      }
      rep->terms.push_back(std::move(tm));
      term = &rep->terms.back();
    } else if (kw == "contrib") {
      if (!term) throw ParseError(filename, ln, "contrib outside a term");
      ReportContrib c;
      if (t.size() == 5 && t[1] == "class" && t[3] == "count") {
        c.kind = ReportContrib::Kind::class_count;
        c.class_label = t[2];
        c.a = parse_int(t[4], filename, ln);
      } else if (t.size() == 6 && t[1] == "lemma" && t[2] == "a" && t[4] == "class") {
        c.kind = ReportContrib::Kind::lemma;
        c.a = parse_int(t[3], filename, ln);
        c.class_label = t[5];
      } else if (t.size() == 6 && t[1] == "lemma" && t[2] == "a" && t[4] == "b") {
        c.kind = ReportContrib::Kind::lemma;
        c.a = parse_int(t[3], filename, ln);
        c.explicit_b = parse_int(t[5], filename, ln);
      } else {
        throw ParseError(filename, ln,
                         "expected: contrib class <label> count <int> | contrib lemma a <int> "
                         "class <label> | contrib lemma a <int> b <int>");
      }
      term->contribs.push_back(std::move(c));
    } else {
      throw ParseError(filename, ln, "unknown keyword '" + kw + "'");
    }
  }
  // Structural validation that needs no cross-referencing.
  for (const auto& [name, ct] : d.tables) {
    try {
      ct.validate();
    } catch (const std::exception& e) {
      throw ParseError(filename, 0, e.what());
    }
  }
  return d;
}

std::string serialize_class_data(const ClassDataSet& d) {
  std::ostringstream os;
  for (const auto& [name, t] : d.tables) {
    os << "group " << t.group << " order " << t.order.get_str() << "\n";
    for (const auto& c : t.classes)
      os << "class " << c.label << " " << c.element_order << " " << c.size.get_str() << "\n";
  }
  for (const auto& f : d.fusions) {
    os << "fusion " << f.source << " -> " << f.target << "\n";
    for (const auto& [a, b] : f.map) os << "map " << a << " " << b << "\n";
  }
  for (const auto& l : d.lifts) {
    os << "lift " << l.quotient << " by-center-of " << l.extension << " central "
       << l.central_label << "\n";
    for (const auto& [cls, r] : l.rules) {
      os << "rule " << cls << " ";
      switch (r.kind) {
        case LiftRule::Kind::split: os << "split " << r.l1 << " " << r.l2; break;
        case LiftRule::Kind::identified: os << "identified " << r.l1; break;
        case LiftRule::Kind::order_doubled: os << "order-doubled"; break;
      }
      os << "\n";
    }
  }
  for (const auto& s : d.subgroup_data) {
    os << "subgroupdata " << s.subgroup << " in " << s.ambient << " order " << s.order.get_str()
       << "\n";
    for (const auto& [l, n] : s.counts) os << "count " << l << " " << n.get_str() << "\n";
  }
  for (const auto& r : d.reports) {
    os << "report " << r.name << " suite " << r.suite << " group " << r.group << " c " << r.c
       << "\n";
    for (const auto& tm : r.terms) {
      os << "term " << tm.label;
      if (tm.max) os << " max " << tm.max->get_str();
      os << "\n";
      for (const auto& c : tm.contribs) {
        if (c.kind == ReportContrib::Kind::class_count)
          os << "contrib class " << c.class_label << " count " << c.a.get_str() << "\n";
        else if (c.explicit_b)
          os << "contrib lemma a " << c.a.get_str() << " b " << c.explicit_b->get_str() << "\n";
        else
          os << "contrib lemma a " << c.a.get_str() << " class " << c.class_label << "\n";
      }
    }
  }
  return os.str();
}

std::string cert_kind_name(CertKind k) {
  switch (k) {
    case CertKind::witness: return "witness";
    case CertKind::regular_orbit: return "regular-orbit";
    case CertKind::no_regular_orbit: return "no-regular-orbit-census";
    case CertKind::partial_certificate: return "partial-certificate";
    case CertKind::lower_bound: return "lower-bound";
    case CertKind::exhaustive: return "exhaustive";
  }
  return "?";
}

namespace {

CertKind kind_from_name(const std::string& s, const std::string& file, int ln) {
  for (CertKind k : {CertKind::witness, CertKind::regular_orbit, CertKind::no_regular_orbit,
                     CertKind::partial_certificate, CertKind::lower_bound, CertKind::exhaustive})
    if (cert_kind_name(k) == s) return k;
  throw ParseError(file, ln, "unknown certificate kind '" + s + "'");
}

}  // namespace

std::string serialize_certificate(const BaseSizeCertificate& cert) {
  std::ostringstream os;
  os << "CERT " << cert_kind_name(cert.kind) << "\n";
  os << "GROUP " << (cert.group_name.empty() ? "?" : cert.group_name) << " ORDER "
     << cert.group_order.get_str() << "\n";
  os << "SUBGROUP " << (cert.sub_name.empty() ? "?" : cert.sub_name) << " ORDER "
     << cert.sub_order.get_str() << "\n";
  for (const auto& x : cert.conjugators) os << "CONJUGATOR " << x.one_based_images() << "\n";
  os << "SEED " << cert.seed << " STREAM " << cert.stream << "\n";
  os << "ESTABLISHES b " << (cert.rel == Rel::le ? "<=" : cert.rel == Rel::ge ? ">=" : "=") << " "
     << cert.value << "\n";
  return os.str();
}

BaseSizeCertificate parse_certificate(const std::string& text, const std::string& filename) {
  BaseSizeCertificate cert;
  std::istringstream is(text);
  std::string line;
  int ln = 0;
  bool have_kind = false, have_rel = false;
  while (std::getline(is, line)) {
    ++ln;
    const auto t = tokenize(line);
    if (t.empty()) continue;
    if (t[0] == "CERT" && t.size() == 2) {
      cert.kind = kind_from_name(t[1], filename, ln);
      have_kind = true;
    } else if (t[0] == "GROUP" && t.size() == 4 && t[2] == "ORDER") {
      cert.group_name = t[1];
      cert.group_order = parse_int(t[3], filename, ln);
    } else if (t[0] == "SUBGROUP" && t.size() == 4 && t[2] == "ORDER") {
      cert.sub_name = t[1];
      cert.sub_order = parse_int(t[3], filename, ln);
    } else if (t[0] == "CONJUGATOR" && t.size() >= 2) {
      std::vector<int> img;
      for (size_t i = 1; i < t.size(); ++i)
        img.push_back(static_cast<int>(parse_ulong(t[i], filename, ln)));
      try {
        cert.conjugators.push_back(Permutation::from_one_based(img));
      } catch (const std::exception& e) {
        throw ParseError(filename, ln, e.what());
      }
    } else if (t[0] == "SEED" && t.size() == 4 && t[2] == "STREAM") {
      cert.seed = parse_ulong(t[1], filename, ln);
      cert.stream = parse_ulong(t[3], filename, ln);
    } else if (t[0] == "ESTABLISHES" && t.size() == 4 && t[1] == "b") {
      if (t[2] == "<=")
        cert.rel = Rel::le;
      else if (t[2] == ">=")
        cert.rel = Rel::ge;
      else if (t[2] == "=")
        cert.rel = Rel::eq;
      else
        throw ParseError(filename, ln, "bad relation '" + t[2] + "'");
      cert.value = static_cast<int>(parse_ulong(t[3], filename, ln));
      have_rel = true;
    } else {
      throw ParseError(filename, ln, "bad certificate line");
    }
  }
  if (!have_kind || !have_rel) throw ParseError(filename, 0, "incomplete certificate");
  return cert;
}

}  // namespace bst
