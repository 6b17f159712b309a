// Command-line front end: enumeration, reconstruction, and the flag-complex
// verification, with stable plain-text and JSON output.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "m0n/moduli.hpp"
#include "m0n/split.hpp"
#include "m0n/tree.hpp"

namespace {

using nlohmann::ordered_json;

struct Options {
  bool json = false;
  bool strict_newick = false;
  int max_n = 0;  // 0 = per-command default ceiling
};

int enumeration_ceiling(const Options& opt) {
  return opt.max_n > 0 ? opt.max_n : m0n::kDefaultEnumerationCeiling;
}

int verification_ceiling(const Options& opt) {
  return opt.max_n > 0 ? opt.max_n : m0n::kDefaultVerificationCeiling;
}

std::string read_newick_argument(const std::string& arg) {
  if (arg != "-") return arg;
  std::string text, line;
  while (std::getline(std::cin, line)) text += line;
  return text;
}

int run_divisors(int n, const Options& opt) {
  const auto divisors = m0n::boundary_divisors(n);
  if (opt.json) {
    ordered_json doc = ordered_json::array();
    for (const auto& d : divisors) doc.push_back(m0n::format_split(d.split));
    std::cout << doc.dump() << "\n";
  } else {
    for (const auto& d : divisors) std::cout << m0n::format_split(d.split) << "\n";
  }
  return 0;
}

int run_tree(int n, const std::vector<std::string>& split_texts, const Options& opt) {
  m0n::SplitSystem sys(n);
  for (const std::string& text : split_texts) sys.insert(m0n::parse_split(text, n));
  try {
    const std::string newick = m0n::to_newick(m0n::tree_from_splits(n, sys));
    if (opt.json) {
      ordered_json doc;
      doc["newick"] = newick;
      std::cout << doc.dump() << "\n";
    } else {
      std::cout << newick << "\n";
    }
    return 0;
  } catch (const m0n::IncompatibleSystem& e) {
    const std::string a = m0n::format_split(e.first), b = m0n::format_split(e.second);
    if (opt.json) {
      ordered_json doc;
      doc["incompatible"] = true;
      doc["witness"] = {a, b};
      std::cout << doc.dump() << "\n";
    } else {
      std::cout << "incompatible: " << a << " " << b << "\n";
    }
    return 1;
  }
}

int run_splits_of(const std::string& newick_arg, const Options& opt) {
  const auto tree = m0n::parse_newick(read_newick_argument(newick_arg), opt.strict_newick);
  const auto sys = m0n::splits_of_tree(tree);
  if (opt.json) {
    ordered_json doc = ordered_json::array();
    for (const auto& s : sys) doc.push_back(m0n::format_split(s));
    std::cout << doc.dump() << "\n";
  } else {
    for (const auto& s : sys) std::cout << m0n::format_split(s) << "\n";
  }
  return 0;
}

void print_counts(const char* label, const std::vector<long long>& counts) {
  std::cout << label << ":";
  for (long long c : counts) std::cout << " " << c;
  std::cout << "\n";
}

void print_report(const m0n::FlagReport& report, const Options& opt, bool with_dimension) {
  if (opt.json) {
    std::cout << m0n::report_to_json(report) << "\n";
    return;
  }
  std::cout << "n: " << report.n << "\n";
  std::cout << "divisors: " << report.divisor_count << "\n";
  print_counts("cliques by size", report.clique_counts_by_size);
  print_counts("f-vector", report.face_counts);
  std::cout << "max face size: " << report.max_face_size << "\n";
  if (with_dimension) std::cout << "dimension: " << report.max_face_size - 1 << "\n";
  print_counts("strata by codim", report.strata_by_codimension);
  std::cout << "is flag: " << (report.is_flag ? "true" : "false") << "\n";
  if (report.witness) {
    std::cout << "witness:";
    for (const auto& s : *report.witness) std::cout << " " << m0n::format_split(s);
    std::cout << "\n";
  }
}

int run_verify(int n, const Options& opt) {
  const m0n::FlagReport report = m0n::verify_flag_theorem(n, verification_ceiling(opt));
  print_report(report, opt, false);
  return report.is_flag ? 0 : 1;
}

int run_dual_complex(int n, const Options& opt) {
  const m0n::FlagReport report = m0n::verify_flag_theorem(n, verification_ceiling(opt));
  print_report(report, opt, true);
  return report.is_flag ? 0 : 1;
}

int run_strata(int n, const Options& opt) {
  const auto counts = m0n::enumerate_strata(n, enumeration_ceiling(opt)).counts_by_codimension;
  long long total = 0;
  for (long long c : counts) total += c;
  if (opt.json) {
    ordered_json doc;
    doc["n"] = n;
    doc["strata_by_codim"] = counts;
    doc["total"] = total;
    std::cout << doc.dump() << "\n";
  } else {
    for (std::size_t c = 0; c < counts.size(); ++c)
      std::cout << "codim " << c << ": " << counts[c] << "\n";
    std::cout << "total: " << total << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Splits, phylogenetic trees, and the boundary complex of M-bar_{0,n}"};
  app.require_subcommand(1);

  Options opt;
  app.add_flag("--json", opt.json, "emit JSON instead of plain text");
  app.add_flag("--strict-newick", opt.strict_newick,
               "reject rooted Newick input instead of suppressing the degree-2 root");
  app.add_option("--max-n", opt.max_n, "override the enumeration/verification ceiling");

  int n = 0;
  std::vector<std::string> split_texts;
  std::string newick_arg;

  auto* divisors = app.add_subcommand("divisors", "list the boundary divisors of M-bar_{0,n}");
  divisors->add_option("n", n, "taxon count")->required();
  divisors->fallthrough();

  auto* tree = app.add_subcommand("tree", "reconstruct the tree realizing the given splits");
  tree->add_option("n", n, "taxon count")->required();
  tree->add_option("splits", split_texts, "splits as \"a,b,...|c,d,...\"");
  tree->fallthrough();

  auto* splits_of = app.add_subcommand("splits-of", "list the splits of a Newick tree");
  splits_of->add_option("newick", newick_arg, "Newick text, or - for stdin")->required();
  splits_of->fallthrough();

  auto* verify = app.add_subcommand("verify", "check that the dual complex is a flag complex");
  verify->add_option("n", n, "taxon count")->required();
  verify->fallthrough();

  auto* strata = app.add_subcommand("strata", "count boundary strata by codimension");
  strata->add_option("n", n, "taxon count")->required();
  strata->fallthrough();

  auto* dual = app.add_subcommand("dual-complex", "describe the dual complex of the boundary");
  dual->add_option("n", n, "taxon count")->required();
  dual->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (divisors->parsed()) return run_divisors(n, opt);
    if (tree->parsed()) return run_tree(n, split_texts, opt);
    if (splits_of->parsed()) return run_splits_of(newick_arg, opt);
    if (verify->parsed()) return run_verify(n, opt);
    if (strata->parsed()) return run_strata(n, opt);
    if (dual->parsed()) return run_dual_complex(n, opt);
  } catch (const m0n::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
