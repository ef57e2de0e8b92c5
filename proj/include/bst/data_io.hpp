#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "bst/base_engine.hpp"
#include "bst/class_bounds.hpp"
#include "bst/group.hpp"

namespace bst {

// Data/validation error carrying a file position; the CLI maps it to exit 2.
struct ParseError : std::runtime_error {
  ParseError(const std::string& where, int line, const std::string& what)
      : std::runtime_error(where + (line > 0 ? ":" + std::to_string(line) : "") + ": " + what) {}
};

GeneratedGroup parse_group_file(const std::string& text, const std::string& filename = "");
std::string serialize_group(const GeneratedGroup& g);

struct ClassDataSet {
  std::map<std::string, ClassTable> tables;
  std::vector<FusionMap> fusions;
  std::vector<LiftSpec> lifts;
  std::vector<SubgroupClassData> subgroup_data;
  std::vector<ReportSpec> reports;

  const FusionMap& fusion(const std::string& src, const std::string& dst) const;
  const SubgroupClassData& subgroup(const std::string& name, const std::string& ambient) const;
  void merge(ClassDataSet other);
  // Cross-checks: table invariants, fusion order preservation and coverage,
  // count ranges, and lift tables recomputed from their quotients.
  void strict_check() const;
};

ClassDataSet parse_class_data(const std::string& text, const std::string& filename = "");
std::string serialize_class_data(const ClassDataSet& d);

std::string serialize_certificate(const BaseSizeCertificate& cert);
BaseSizeCertificate parse_certificate(const std::string& text, const std::string& filename = "");

std::string cert_kind_name(CertKind k);

}  // namespace bst
