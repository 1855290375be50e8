#include <doctest.h>

#include "slicelab/sampling.hpp"
#include "slicelab/scenarios.hpp"

#include <random>

using namespace slicelab;

namespace {
ScenarioSpec spec_of(ScenarioKind kind, int n = 2, std::uint64_t seed = 1) {
  ScenarioSpec spec;
  spec.kind = kind;
  spec.n = n;
  spec.seed = seed;
  return spec;
}
VerifierConfig small_config() {
  VerifierConfig cfg;
  cfg.samples = 10;
  cfg.surjectivity_probes = 8;
  cfg.fibre_samples = 5;
  cfg.jacobian_samples = 3;
  return cfg;
}
}  // namespace

TEST_CASE("kind names round-trip") {
  for (ScenarioKind k : {ScenarioKind::model, ScenarioKind::disguised,
                         ScenarioKind::center_quotient,
                         ScenarioKind::open_subvariety, ScenarioKind::cotangent})
    CHECK(scenario_kind_from_string(to_string(k)) == k);
  CHECK_THROWS_AS(scenario_kind_from_string("nonsense"), std::invalid_argument);
}

TEST_CASE("every bundled scenario matches its expected pattern") {
  for (ScenarioKind k : {ScenarioKind::model, ScenarioKind::disguised,
                         ScenarioKind::center_quotient,
                         ScenarioKind::open_subvariety, ScenarioKind::cotangent}) {
    CAPTURE(to_string(k));
    Scenario sc = build_scenario(spec_of(k));
    Verifier verifier(sc.slice);
    ConditionReport rep = verifier.classify(sc.space, small_config());
    std::vector<std::string> mismatches;
    bool ok = pattern_matches(rep, sc.expected, &mismatches);
    CAPTURE(mismatches);
    CHECK(ok);
  }
}

TEST_CASE("disguised scenario hides the model behind a diffeomorphism") {
  Scenario model = build_scenario(spec_of(ScenarioKind::model));
  Scenario hidden = build_scenario(spec_of(ScenarioKind::disguised));

  // presentations differ...
  auto mp = model.space.sample(9, 3);
  auto hp = hidden.space.sample(9, 3);
  bool all_equal = true;
  for (int i = 0; i < 3; ++i)
    if ((model.space.embed(mp[i]) - hidden.space.embed(hp[i])).norm() > 1e-6)
      all_equal = false;
  CHECK(!all_equal);

  // ...but the geometry is the same: moments agree orbitwise
  Verifier verifier(hidden.slice);
  for (const SpacePoint& p : hp)
    CHECK(hidden.slice->membership(verifier.label_of(hidden.space, p)).member);

  // a different disguise seed yields a different presentation
  ScenarioSpec other = spec_of(ScenarioKind::disguised);
  other.disguise_seed = 99;
  Scenario hidden2 = build_scenario(other);
  auto hp2 = hidden2.space.sample(9, 3);
  CHECK((hidden.space.embed(hp[0]) - hidden2.space.embed(hp2[0])).norm() >
        1e-6);
}

TEST_CASE("center quotient is fixed by the center") {
  Scenario sc = build_scenario(spec_of(ScenarioKind::center_quotient));
  const Mat minus_i = -Mat::Identity(2, 2);
  for (const SpacePoint& p : sc.space.sample(13, 10)) {
    SpacePoint q = sc.space.act(minus_i, p);
    CHECK((sc.space.embed(q) - sc.space.embed(p)).norm() < 1e-12);
  }

  // while generic group elements still move points
  std::mt19937_64 rng(137);
  SpacePoint p = sc.space.sample(13, 1)[0];
  Mat g = random_group(sc.slice->spec(), rng);
  CHECK((sc.space.embed(sc.space.act(g, p)) - sc.space.embed(p)).norm() >
        1e-3);
}

TEST_CASE("open subvariety misses invariant values outside its box") {
  Scenario sc = build_scenario(spec_of(ScenarioKind::open_subvariety));
  Verifier verifier(sc.slice);
  auto samples = sc.space.sample(1, 10);

  // samples stay strictly inside the coordinate box
  for (const SpacePoint& p : samples)
    for (int i = 0; i < p.extra.size(); ++i)
      CHECK(std::abs(p.extra(i)) < sc.spec.box_radius);

  auto [cont, surj] = verifier.check_image_regular(sc.space, samples, 10, 1);
  CHECK(cont.verdict == "pass");
  CHECK(surj.verdict == "fail_proper_subset");
  REQUIRE(!surj.evidence["unreached_witnesses"].empty());
  // the recorded witness labels lie outside the box
  for (const Json& w : surj.evidence["unreached_witnesses"]) {
    double max_abs = 0.0;
    for (const Json& entry : w["slice_coords"]) {
      const Complex z(entry[0].get<double>(), entry[1].get<double>());
      max_abs = std::max(max_abs, std::abs(z));
    }
    CHECK(max_abs >= sc.spec.box_radius);
  }

  ScenarioSpec bad = spec_of(ScenarioKind::open_subvariety);
  bad.box_radius = -1.0;
  CHECK_THROWS_AS(build_scenario(bad), std::invalid_argument);
}

TEST_CASE("cotangent control has the wrong dimension but is Hamiltonian") {
  Scenario sc = build_scenario(spec_of(ScenarioKind::cotangent));
  const GroupSpec gs = sc.slice->spec();
  CHECK(sc.space.dimension == 2 * gs.dim_g());
  CHECK(!sc.space.fibre_section);
  CHECK(!sc.space.transporter);

  // the deterministic first sample sits at the zero section, where the
  // moment is nilpotent hence irregular
  auto samples = sc.space.sample(17, 4);
  CHECK((samples[0].g - Mat::Identity(gs.n, gs.n)).norm() == 0.0);
  CHECK(samples[0].extra.norm() == 0.0);
  CHECK(sc.space.moment(samples[0]).norm() < 1e-12);

  Verifier verifier(sc.slice);
  auto [cont, surj] = verifier.check_image_regular(sc.space, samples, 5, 17);
  CHECK(cont.verdict == "fail");
  CHECK(surj.verdict == "not_verifiable");
}

TEST_CASE("scenario verdicts are deterministic") {
  for (int round = 0; round < 2; ++round) {
    // fresh objects each round; only the seeds are shared
    Scenario a = build_scenario(spec_of(ScenarioKind::disguised, 2, 23));
    Scenario b = build_scenario(spec_of(ScenarioKind::disguised, 2, 23));
    VerifierConfig cfg = small_config();
    cfg.seed = 23;
    Json ja = Verifier(a.slice).classify(a.space, cfg).to_json();
    Json jb = Verifier(b.slice).classify(b.space, cfg).to_json();
    CHECK(ja.dump() == jb.dump());
  }
}
