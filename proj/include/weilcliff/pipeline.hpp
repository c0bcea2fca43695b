#pragma once

#include <set>
#include <string>

#include <json.hpp>

#include "weilcliff/verifier.hpp"

namespace weilcliff {

struct RunConfig {
  std::string spec_path;
  std::string spec_text;  // used when spec_path is empty
  Flavor variant = Flavor::Weil;
  std::vector<Rat> xi_cartan;     // coordinates over the Cartan indices, in order
  std::string generators_path;    // empty: auto
  std::vector<int> bounds;        // empty: flavor default (graded 8; filtered 6,8)
  std::set<std::string> checks;   // subset of {acyclicity,cartan,cohomology,clifford,form,uct,projections}
  bool machine = false;
  std::string out_path;
  int cert_bound = 6;
};

Flavor parse_variant(const std::string& name);

struct RunResult {
  int exit_code = 0;  // 0 pass, 1 check failure, 2 input error
  nlohmann::ordered_json report;
  std::string table;
};

RunResult run_pipeline(const RunConfig& cfg);

}  // namespace weilcliff
