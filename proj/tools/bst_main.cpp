#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "bst/base_engine.hpp"
#include "bst/class_bounds.hpp"
#include "bst/data_io.hpp"
#include "bst/subgroup_algebra.hpp"

namespace fs = std::filesystem;
using namespace bst;

namespace {

constexpr int kExitEstablished = 0;
constexpr int kExitNotEstablished = 1;
constexpr int kExitDataError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ParseError(path, 0, "cannot write file");
  out << text;
}

GeneratedGroup load_group(const std::string& path) {
  auto g = parse_group_file(read_file(path), path);
  if (g.name().empty()) return g.renamed(fs::path(path).stem().string());
  return g;
}

ClassDataSet load_data_dir(const std::string& dir, bool strict) {
  ClassDataSet all;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".cdata") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw ParseError(dir, 0, "no .cdata files");
  for (const auto& f : files) all.merge(parse_class_data(read_file(f.string()), f.string()));
  if (strict) all.strict_check();
  return all;
}

double approx(const mpq_class& q) { return q.get_d(); }

void print_result(const BaseSizeResult& r) {
  std::cout << "lower " << r.lower << "\n";
  if (r.upper) std::cout << "upper " << *r.upper << "\n";
  if (r.exact) std::cout << "b = " << r.lower << "\n";
}

void emit_certs(const BaseSizeResult& r, const std::string& file) {
  for (size_t i = 0; i < r.certificates.size(); ++i) {
    const std::string path = i == 0 ? file : file + "." + std::to_string(i);
    write_file(path, serialize_certificate(r.certificates[i]));
    std::cout << "cert " << path << "\n";
  }
}

int run_report_suite(const ClassDataSet& d, const std::string& suite) {
  bool any = false, all_ok = true;
  for (const auto& spec : d.reports) {
    if (spec.suite != suite) continue;
    any = true;
    const auto res = verify_report(spec, d.tables);
    std::cout << "report " << spec.name << " (c = " << spec.c << ", ambient " << spec.group
              << ")\n";
    for (const auto& t : res.terms) {
      std::cout << "  " << t.label << " = " << t.value.get_str() << " ~ " << approx(t.value);
      if (t.max)
        std::cout << (t.ok ? "  <  " : "  !<  ") << t.max->get_str();
      std::cout << "\n";
      all_ok = all_ok && t.ok;
    }
    std::cout << "  total = " << res.total.get_str() << " ~ " << approx(res.total)
              << (res.total < 1 ? "  <  1" : "  !<  1") << "\n";
    std::cout << "  verdict: " << (res.ok ? "established" : "NOT established") << "\n";
    all_ok = all_ok && res.ok;
  }
  if (!any) throw ParseError(suite, 0, "no reports for this suite in the data directory");
  return all_ok ? kExitEstablished : kExitNotEstablished;
}

int run(int argc, char** argv) {
  CLI::App app{"base-size toolkit"};
  app.require_subcommand(1);

  // order
  std::string g_path, h_path, cert_path, data_dir, out_path, catalog_dir;
  auto* c_order = app.add_subcommand("order", "print the exact group order");
  c_order->add_option("group", g_path)->required();

  // base-size
  BasePolicy policy;
  auto* c_base = app.add_subcommand("base-size", "compute/bound the base size b(G,H)");
  c_base->add_option("group", g_path)->required();
  c_base->add_option("subgroup", h_path)->required();
  c_base->add_option("--max-c", policy.max_c);
  c_base->add_option("--trials", policy.trials);
  c_base->add_option("--seed", policy.seed);
  c_base->add_option("--workers", policy.workers);
  c_base->add_flag("--exhaustive", policy.exhaustive);
  c_base->add_option("--emit-cert", cert_path);

  // witness verify
  auto* c_wit = app.add_subcommand("witness", "certificate operations");
  auto* c_verify = c_wit->add_subcommand("verify", "re-verify a certificate from scratch");
  c_verify->add_option("group", g_path)->required();
  c_verify->add_option("subgroup", h_path)->required();
  c_verify->add_option("--cert", cert_path)->required();

  // double-cosets
  bool summary = false;
  long budget = -1;
  auto* c_dc = app.add_subcommand("double-cosets", "(K,K) double coset census");
  c_dc->add_option("group", g_path)->required();
  c_dc->add_option("subgroup", h_path)->required();
  c_dc->add_flag("--summary", summary);
  c_dc->add_option("--budget", budget);

  // qhat
  std::string gname, subname;
  int cval = 2;
  bool strict = false;
  auto* c_qhat = app.add_subcommand("qhat", "fixed-point-ratio bound from class data");
  c_qhat->add_option("--data", data_dir)->required();
  c_qhat->add_option("--group", gname)->required();
  c_qhat->add_option("--subgroup", subname)->required();
  c_qhat->add_option("--c", cval)->required();
  c_qhat->add_flag("--strict", strict);

  // report
  std::string suite;
  auto* c_rep = app.add_subcommand("report", "run a verification report suite");
  c_rep->add_option("suite", suite)
      ->required()
      ->check(CLI::IsMember({"monster", "baby-parabolics", "baby-nonparabolic"}));
  c_rep->add_option("--data", data_dir)->required();
  c_rep->add_flag("--strict", strict);

  // survey
  auto* c_survey = app.add_subcommand("survey", "base sizes over a subgroup catalog");
  c_survey->add_option("group", g_path)->required();
  c_survey->add_option("--catalog", catalog_dir)->required();
  c_survey->add_option("--out", out_path)->required();
  c_survey->add_option("--max-c", policy.max_c);
  c_survey->add_option("--trials", policy.trials);
  c_survey->add_option("--seed", policy.seed);
  c_survey->add_option("--workers", policy.workers);
  c_survey->add_flag("--exhaustive", policy.exhaustive);

  CLI11_PARSE(app, argc, argv);

  if (*c_order) {
    std::cout << load_group(g_path).order().get_str() << "\n";
    return kExitEstablished;
  }

  if (*c_base) {
    const auto g = load_group(g_path);
    const auto h = load_group(h_path);
    const auto res = exact_base_size(g, h, policy);
    print_result(res);
    if (!cert_path.empty()) emit_certs(res, cert_path);
    return res.exact ? kExitEstablished : kExitNotEstablished;
  }

  if (*c_verify) {
    const auto g = load_group(g_path);
    const auto h = load_group(h_path);
    const auto cert = parse_certificate(read_file(cert_path), cert_path);
    if (verify_certificate(g, h, cert)) {
      std::cout << "valid: establishes b "
                << (cert.rel == Rel::le ? "<=" : cert.rel == Rel::ge ? ">=" : "=") << " "
                << cert.value << "\n";
      return kExitEstablished;
    }
    std::cout << "invalid\n";
    return kExitNotEstablished;
  }

  if (*c_dc) {
    const auto g = load_group(g_path);
    const auto k = load_group(h_path);
    const auto census =
        double_cosets(g, k, budget >= 0 ? std::optional<long>(budget) : std::nullopt);
    if (!summary)
      for (size_t i = 0; i < census.entries.size(); ++i)
        std::cout << "coset " << i << " size " << census.entries[i].size.get_str() << " rep "
                  << census.entries[i].rep.one_based_images() << "\n";
    std::cout << "classes " << census.entries.size() << "\n";
    std::cout << "covered " << census.covered().get_str() << " of " << g.order().get_str()
              << "\n";
    std::cout << "complete " << (census.complete ? "yes" : "no") << "\n";
    std::cout << "regular " << (census.has_regular_entry() ? "yes" : "no") << "\n";
    return census.complete ? kExitEstablished : kExitNotEstablished;
  }

  if (*c_qhat) {
    const auto d = load_data_dir(data_dir, strict);
    const auto it = d.tables.find(gname);
    if (it == d.tables.end()) throw ParseError(data_dir, 0, "no class table for " + gname);
    const auto& sub = d.subgroup(subname, gname);
    const auto q = qhat(it->second, sub, cval);
    std::cout << "Qhat(" << gname << ", " << subname << ", " << cval << ") = " << q.get_str()
              << " ~ " << approx(q) << "\n";
    return q < 1 ? kExitEstablished : kExitNotEstablished;
  }

  if (*c_rep) return run_report_suite(load_data_dir(data_dir, strict), suite);

  if (*c_survey) {
    const auto g = load_group(g_path);
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(catalog_dir))
      if (e.path().extension() == ".grp") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    std::vector<GeneratedGroup> catalog;
    for (const auto& f : files) catalog.push_back(load_group(f.string()));
    const auto table = survey(g, catalog, policy);
    const fs::path out(out_path);
    std::ostringstream tsv;
    tsv << "name\torder\tsoluble\tcorefree\tlower\tupper\texact\tcertificate-path\n";
    for (const auto& row : table.rows) {
      tsv << row.name << "\t" << row.order.get_str() << "\t" << (row.soluble ? "yes" : "no")
          << "\t" << (row.corefree ? "yes" : "no") << "\t";
      std::string cert_file = "-";
      if (row.result) {
        tsv << row.result->lower << "\t";
        if (row.result->upper)
          tsv << *row.result->upper;
        else
          tsv << "-";
        tsv << "\t" << (row.result->exact ? "yes" : "no");
        if (!row.result->certificates.empty()) {
          cert_file = (out.parent_path() / (row.name + ".cert")).string();
          const auto& certs = row.result->certificates;
          for (size_t i = 0; i < certs.size(); ++i)
            write_file(i == 0 ? cert_file : cert_file + "." + std::to_string(i),
                       serialize_certificate(certs[i]));
        }
      } else {
        tsv << "-\t-\t-";
      }
      tsv << "\t" << cert_file << "\n";
    }
    write_file(out_path, tsv.str());
    std::cout << tsv.str();
    if (table.s_value) {
      std::cout << "s = " << *table.s_value << "\n";
      return kExitEstablished;
    }
    return kExitNotEstablished;
  }

  return kExitDataError;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDataError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDataError;
  }
}
