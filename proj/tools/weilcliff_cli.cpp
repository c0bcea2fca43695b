#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "weilcliff/errors.hpp"
#include "weilcliff/pipeline.hpp"

using namespace weilcliff;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact cohomology of quotients of (quantized) Weil and Koszul algebras"};

  std::string spec, variant = "weil", xi_str, generators = "auto", bound_str, check_str,
              format = "table", out_path;
  app.add_option("--spec", spec, "Lie algebra / vector space spec file (JSON)")->required();
  app.add_option("--variant", variant, "koszul | deformed-koszul | weil | quantized-weil");
  app.add_option("--xi", xi_str, "deformation vector, Cartan coordinates as rationals c1,c2,...");
  app.add_option("--generators", generators, "auto or a generator document path");
  app.add_option("--bound", bound_str, "window bound(s) N[,N...]");
  app.add_option("--check", check_str,
                 "comma list of acyclicity,cartan,cohomology,clifford,form,uct,projections");
  app.add_option("--format", format, "table | machine");
  app.add_option("--out", out_path, "write the machine report to this path");

  CLI11_PARSE(app, argc, argv);

  RunConfig cfg;
  cfg.spec_path = spec;
  try {
    cfg.variant = parse_variant(variant);
    for (const std::string& c : split(xi_str, ',')) cfg.xi_cartan.push_back(parse_rat(c));
    for (const std::string& b : split(bound_str, ',')) cfg.bounds.push_back(std::stoi(b));
    for (const std::string& c : split(check_str, ',')) cfg.checks.insert(c);
    if (cfg.checks.empty())
      cfg.checks = {"acyclicity", "cartan", "cohomology", "clifford", "form"};
    static const std::set<std::string> known = {"acyclicity", "cartan",      "cohomology",
                                                "clifford",   "form",        "uct",
                                                "projections"};
    for (const auto& c : cfg.checks)
      if (!known.count(c)) throw ParseError("unknown check: " + c);
    if (generators != "auto") cfg.generators_path = generators;
    if (format != "table" && format != "machine") throw ParseError("unknown format: " + format);
    cfg.machine = format == "machine";
  } catch (const std::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  }

  RunResult r = run_pipeline(cfg);
  std::string machine = r.report.dump(2) + "\n";
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "input error: cannot write " << out_path << "\n";
      return 2;
    }
    out << machine;
  }
  std::cout << (cfg.machine ? machine : r.table);
  return r.exit_code;
}
