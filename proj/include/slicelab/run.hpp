#ifndef SLICELAB_RUN_HPP
#define SLICELAB_RUN_HPP

#include "slicelab/scenarios.hpp"

#include <string>
#include <vector>

// Command-line front end, exposed as a library so runs can be scripted and
// tested: configuration, scenario execution, JSON/text reporting.

namespace slicelab {

struct RunConfig {
  std::vector<std::string> scenario_names;  // defaults to {"model"} if empty
  int n = 2;
  int samples = 100;
  std::uint64_t seed = 1;
  double tol = 1e-9;  // numerical-rank tolerance override
  double box_radius = 1.0;
  std::uint64_t disguise_seed = 7;
  std::string format = "json";  // json | text
  std::string out;              // empty = stdout only
  bool parallel = false;

  void validate() const;  // throws std::invalid_argument
};

// Plain key=value config file ('#' comments); unknown keys rejected.
RunConfig parse_config_file(const std::string& path);

// exit codes: 0 = all scenario expectations met, 2 = definite unexpected
// verdict, 1 = internal error or indeterminate evidence, 64 = config error
struct RunResult {
  int exit_code = 0;
  Json report;
  std::string rendered;  // in the requested format
};

RunResult run(const RunConfig& config);

std::string render_report(const Json& report, const std::string& format);

}  // namespace slicelab

#endif
