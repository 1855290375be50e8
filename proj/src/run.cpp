#include "slicelab/run.hpp"

#include <fstream>
#include <future>
#include <sstream>

namespace slicelab {

void RunConfig::validate() const {
  if (n < 2) throw std::invalid_argument("config: n must be >= 2");
  if (samples < 1) throw std::invalid_argument("config: samples must be >= 1");
  if (tol <= 0.0) throw std::invalid_argument("config: tol must be positive");
  if (box_radius <= 0.0)
    throw std::invalid_argument("config: box_radius must be positive");
  if (format != "json" && format != "text")
    throw std::invalid_argument("config: format must be json or text");
  for (const auto& name : scenario_names)
    scenario_kind_from_string(name);  // throws on unknown kinds
}

static std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                  ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "scenario") {
      std::stringstream ss(value);
      std::string item;
      while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) cfg.scenario_names.push_back(item);
      }
    } else if (key == "n") {
      cfg.n = std::stoi(value);
    } else if (key == "samples") {
      cfg.samples = std::stoi(value);
    } else if (key == "seed") {
      cfg.seed = std::stoull(value);
    } else if (key == "tol") {
      cfg.tol = std::stod(value);
    } else if (key == "box_radius") {
      cfg.box_radius = std::stod(value);
    } else if (key == "disguise_seed") {
      cfg.disguise_seed = std::stoull(value);
    } else if (key == "format") {
      cfg.format = value;
    } else if (key == "out") {
      cfg.out = value;
    } else if (key == "parallel") {
      cfg.parallel = (value == "true" || value == "1");
    } else {
      throw std::invalid_argument("config: unknown key '" + key + "'");
    }
  }
  return cfg;
}

namespace {

struct ScenarioOutcome {
  Json entry;
  int exit_code = 0;  // 0 ok, 2 mismatch, 1 error/indeterminate
};

ScenarioOutcome run_scenario(const RunConfig& config, const std::string& name) {
  ScenarioOutcome out;
  ScenarioSpec spec;
  spec.kind = scenario_kind_from_string(name);
  spec.n = config.n;
  spec.seed = config.seed;
  spec.box_radius = config.box_radius;
  spec.disguise_seed = config.disguise_seed;

  Json expected_json = Json::object();
  try {
    Tolerances tol;
    tol.rank = config.tol;
    Scenario scenario = build_scenario(spec, tol);
    for (const auto& [k, v] : scenario.expected) expected_json[k] = v;

    Verifier verifier(scenario.slice);
    VerifierConfig vcfg;
    vcfg.samples = config.samples;
    vcfg.seed = config.seed;
    ConditionReport report = verifier.classify(scenario.space, vcfg);

    std::vector<std::string> mismatches;
    const bool ok = pattern_matches(report, scenario.expected, &mismatches);

    bool fragile = false;  // errors or indeterminate evidence anywhere
    for (const auto& c : report.checks)
      if (c.verdict == "error" || c.verdict == "indeterminate") fragile = true;

    out.entry = report.to_json();
    out.entry["expected"] = expected_json;
    out.entry["matches_expectation"] = ok;
    out.entry["mismatches"] = mismatches;
    out.exit_code = ok ? 0 : (fragile ? 1 : 2);
  } catch (const std::exception& e) {
    out.entry = Json{{"scenario", name},
                     {"n", config.n},
                     {"seed", config.seed},
                     {"error", e.what()},
                     {"expected", expected_json},
                     {"matches_expectation", false}};
    out.exit_code = 1;
  }
  return out;
}

}  // namespace

RunResult run(const RunConfig& config) {
  config.validate();
  std::vector<std::string> names = config.scenario_names;
  if (names.empty()) names.push_back("model");

  std::vector<ScenarioOutcome> outcomes(names.size());
  if (config.parallel) {
    std::vector<std::future<ScenarioOutcome>> futures;
    futures.reserve(names.size());
    for (const auto& name : names)
      futures.push_back(std::async(std::launch::async,
                                   [&config, name] { return run_scenario(config, name); }));
    for (size_t i = 0; i < futures.size(); ++i) outcomes[i] = futures[i].get();
  } else {
    for (size_t i = 0; i < names.size(); ++i)
      outcomes[i] = run_scenario(config, names[i]);
  }

  RunResult result;
  Json scenarios = Json::array();
  bool all_ok = true;
  for (auto& oc : outcomes) {
    scenarios.push_back(oc.entry);
    if (oc.exit_code == 1) result.exit_code = 1;
    if (oc.exit_code != 0) all_ok = false;
    if (oc.exit_code == 2 && result.exit_code == 0) result.exit_code = 2;
  }
  result.report = Json{
      {"schema_version", 1},
      {"config",
       Json{{"scenarios", names},
            {"n", config.n},
            {"samples", config.samples},
            {"seed", config.seed},
            {"tol", config.tol},
            {"box_radius", config.box_radius},
            {"disguise_seed", config.disguise_seed}}},
      {"scenarios", scenarios},
      {"summary", Json{{"all_expectations_met", all_ok},
                       {"exit_code", result.exit_code}}}};
  result.rendered = render_report(result.report, config.format);

  if (!config.out.empty()) {
    std::ofstream f(config.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write report to " + config.out);
    f << result.rendered;
  }
  return result;
}

static std::string label_for(const std::string& name) {
  if (name == "i_affine") return "(i)   affine";
  if (name == "ii_free_action") return "(ii)  free action";
  if (name == "iii_dimension") return "(iii) dimension";
  if (name == "iv_image_containment") return "(iv)  image containment";
  if (name == "iv_image_surjectivity") return "(iv)  image surjectivity";
  if (name == "v_fibre_single_orbit") return "(v)   fibre single orbit";
  if (name == "mu_bar_submersion") return "slice-map submersion";
  if (name == "integrable_system") return "integrable system";
  if (name == "integrability_consistency") return "rank-criterion consistency";
  if (name == "classification") return "classification";
  return name;
}

std::string render_report(const Json& report, const std::string& format) {
  if (format == "json") return report.dump(2) + "\n";
  std::ostringstream os;
  for (const auto& sc : report.at("scenarios")) {
    os << "scenario " << sc.at("scenario").get<std::string>() << " (n="
       << sc.value("n", 0) << ", seed=" << sc.value("seed", 0ull) << "): ";
    if (sc.contains("error")) {
      os << "ERROR: " << sc.at("error").get<std::string>() << "\n";
      continue;
    }
    os << (sc.at("matches_expectation").get<bool>() ? "expectations met"
                                                    : "EXPECTATION MISMATCH")
       << "\n";
    for (const auto& check : sc.at("checks"))
      os << "  " << label_for(check.at("name").get<std::string>()) << ": "
         << check.at("verdict").get<std::string>() << " -- "
         << check.at("summary").get<std::string>() << "\n";
    if (sc.contains("mismatches"))
      for (const auto& m : sc.at("mismatches"))
        os << "  mismatch: " << m.get<std::string>() << "\n";
  }
  const auto& summary = report.at("summary");
  os << "overall: "
     << (summary.at("all_expectations_met").get<bool>()
             ? "all expectations met"
             : "expectations not met")
     << " (exit " << summary.at("exit_code").get<int>() << ")\n";
  return os.str();
}

}  // namespace slicelab
