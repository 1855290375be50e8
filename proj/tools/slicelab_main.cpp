#include "slicelab/run.hpp"

#include <CLI11.hpp>

#include <iostream>

// slicelab: build a presented Hamiltonian SL_n-space scenario, run the
// condition checks and (when they pass) the equivariant trivialization, and
// emit a JSON or text report.
//
// Exit codes: 0 all scenario expectations met, 2 definite unexpected verdict,
// 1 internal error or indeterminate evidence, 64 bad configuration.

int main(int argc, char** argv) {
  CLI::App app{"numerical verifier for Hamiltonian SL_n-space scenarios"};

  std::string config_path;
  std::vector<std::string> scenarios;
  slicelab::RunConfig flags;
  bool n_set = false, samples_set = false, seed_set = false, tol_set = false;
  bool format_set = false, out_set = false, box_set = false;
  bool disguise_set = false, parallel_set = false;

  app.add_option("--config", config_path, "key=value config file");
  app.add_option("--scenario", scenarios,
                 "scenario kind(s): model, disguised, center_quotient, "
                 "open_subvariety, cotangent");
  app.add_option("--n", flags.n, "matrix size (n >= 2)")->each([&](auto) { n_set = true; });
  app.add_option("--samples", flags.samples, "sample count per scenario")
      ->each([&](auto) { samples_set = true; });
  app.add_option("--seed", flags.seed, "base random seed")
      ->each([&](auto) { seed_set = true; });
  app.add_option("--tol", flags.tol, "numerical-rank tolerance")
      ->each([&](auto) { tol_set = true; });
  app.add_option("--box-radius", flags.box_radius,
                 "open_subvariety coordinate box radius")
      ->each([&](auto) { box_set = true; });
  app.add_option("--disguise-seed", flags.disguise_seed,
                 "seed for the disguised scenario's reparametrization")
      ->each([&](auto) { disguise_set = true; });
  app.add_option("--format", flags.format, "report format: json or text")
      ->each([&](auto) { format_set = true; });
  app.add_option("--out", flags.out, "write the report to this path")
      ->each([&](auto) { out_set = true; });
  app.add_flag("--parallel", flags.parallel,
               "run scenarios concurrently (deterministic merged output)")
      ->each([&](auto) { parallel_set = true; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 64;
  }

  slicelab::RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = slicelab::parse_config_file(config_path);
    // flags win over file values
    if (!scenarios.empty()) cfg.scenario_names = scenarios;
    if (n_set) cfg.n = flags.n;
    if (samples_set) cfg.samples = flags.samples;
    if (seed_set) cfg.seed = flags.seed;
    if (tol_set) cfg.tol = flags.tol;
    if (box_set) cfg.box_radius = flags.box_radius;
    if (disguise_set) cfg.disguise_seed = flags.disguise_seed;
    if (format_set) cfg.format = flags.format;
    if (out_set) cfg.out = flags.out;
    if (parallel_set) cfg.parallel = flags.parallel;
    cfg.validate();
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 64;
  }

  try {
    slicelab::RunResult result = slicelab::run(cfg);
    std::cout << result.rendered;
    return result.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
