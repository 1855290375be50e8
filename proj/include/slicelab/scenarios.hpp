#ifndef SLICELAB_SCENARIOS_HPP
#define SLICELAB_SCENARIOS_HPP

#include "slicelab/verifier.hpp"

// Bundled presented spaces: the model itself, a disguised copy, the
// center-quotient (locally free but not free), the open-subvariety
// restriction (proper moment image), and a full-cotangent negative control
// for the rank criterion.

namespace slicelab {

enum class ScenarioKind {
  model,
  disguised,
  center_quotient,
  open_subvariety,
  cotangent,
};

ScenarioKind scenario_kind_from_string(const std::string& s);
std::string to_string(ScenarioKind kind);

struct ScenarioSpec {
  ScenarioKind kind = ScenarioKind::model;
  int n = 2;
  std::uint64_t seed = 1;
  double box_radius = 1.0;         // open_subvariety: |c_j| < box_radius
  std::uint64_t disguise_seed = 7; // disguised: conjugator and reparametrization
};

struct Scenario {
  ScenarioSpec spec;
  std::shared_ptr<const SlodowySlice> slice;
  PresentedSpace space;
  ExpectedPattern expected;
};

Scenario build_scenario(const ScenarioSpec& spec, Tolerances tol = {});

}  // namespace slicelab

#endif
