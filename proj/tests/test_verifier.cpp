#include <doctest.h>

#include "slicelab/sampling.hpp"
#include "slicelab/scenarios.hpp"
#include "slicelab/verifier.hpp"

#include <random>

using namespace slicelab;

namespace {
Scenario model_scenario(int n = 2, std::uint64_t seed = 1) {
  ScenarioSpec spec;
  spec.kind = ScenarioKind::model;
  spec.n = n;
  spec.seed = seed;
  return build_scenario(spec);
}
VerifierConfig small_config() {
  VerifierConfig cfg;
  cfg.samples = 12;
  cfg.surjectivity_probes = 10;
  cfg.fibre_samples = 6;
  cfg.jacobian_samples = 4;
  return cfg;
}
}  // namespace

TEST_CASE("contract enforcement catches a broken space") {
  Scenario sc = model_scenario();
  Verifier verifier(sc.slice);
  auto samples = sc.space.sample(1, 5);
  verifier.enforce_contract(sc.space, samples, 1);  // sane space passes

  // break equivariance: moment forgets the group factor
  PresentedSpace broken = sc.space;
  auto slice = sc.slice;
  broken.moment = [slice](const SpacePoint& p) {
    return -slice->point(p.extra);
  };
  CHECK_THROWS_AS(verifier.enforce_contract(broken, samples, 1), ContractError);

  // break the action law
  broken = sc.space;
  auto good_act = sc.space.act;
  broken.act = [good_act](const Mat& g, const SpacePoint& p) {
    SpacePoint q = good_act(g, p);
    q.g *= 1.001;
    return q;
  };
  CHECK_THROWS_AS(verifier.enforce_contract(broken, samples, 1), ContractError);
}

TEST_CASE("individual checks on the model") {
  Scenario sc = model_scenario();
  Verifier verifier(sc.slice);
  auto samples = sc.space.sample(3, 15);

  CHECK(verifier.check_free_action(sc.space, samples).verdict == "free");
  CHECK(verifier.check_dimension(sc.space).verdict == "pass");

  auto [cont, surj] = verifier.check_image_regular(sc.space, samples, 10, 3);
  CHECK(cont.verdict == "pass");
  CHECK(surj.verdict == "pass");
  CHECK(surj.evidence["reached"] == 10);

  CHECK(verifier.check_mu_bar_submersion(sc.space, samples).verdict == "pass");
  CHECK(verifier.check_integrable_system(sc.space, samples).verdict == "pass");
}

TEST_CASE("fibre check") {
  Scenario sc = model_scenario();
  Verifier verifier(sc.slice);
  std::mt19937_64 rng(131);

  Mat label = verifier.label_of(sc.space, sc.space.sample(5, 1)[0]);
  auto base = sc.space.fibre_section(label);
  REQUIRE(base.has_value());
  std::vector<SpacePoint> fibre{*base};
  for (int i = 0; i < 6; ++i)
    fibre.push_back(sc.space.act(random_group(sc.slice->spec(), rng), *base));

  CheckResult r = verifier.check_fibre_single_orbit(sc.space, label, fibre);
  CHECK(r.verdict == "pass");
  // fibre dimension: dim(X) - rank = 4 - 1 = 3 for n = 2
  CHECK(r.evidence["kernel_dimension"] == 3);
  CHECK(r.evidence["max_transport_residual"].get<double>() < 1e-5);

  // points off the fibre violate the precondition
  SpacePoint outsider = *base;
  outsider.extra(0) += Complex(2.0, 1.0);
  fibre.push_back(outsider);
  CHECK_THROWS_AS(verifier.check_fibre_single_orbit(sc.space, label, fibre),
                  std::invalid_argument);
}

TEST_CASE("submersion check fails on a single fibre presented alone") {
  Scenario sc = model_scenario();
  Verifier verifier(sc.slice);

  // restrict the model to G x {point}: the slice-valued map is constant
  PresentedSpace frozen = sc.space;
  auto slice = sc.slice;
  const GroupSpec spec = sc.slice->spec();
  frozen.dimension = spec.dim_g();
  frozen.tangent_dim = spec.dim_g();
  auto inner = sc.space;
  frozen.sample = [inner, spec](std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    std::vector<SpacePoint> out;
    for (int i = 0; i < count; ++i)
      out.push_back({random_group(spec, rng), Vec::Zero(spec.rank())});
    return out;
  };
  frozen.perturb = [inner, spec](const SpacePoint& p, int k, Complex t) {
    return inner.perturb(p, k, t);  // k < dim_g only: group directions
  };

  CheckResult r =
      verifier.check_mu_bar_submersion(frozen, frozen.sample(7, 8));
  CHECK(r.verdict == "fail");
  CHECK(r.evidence["min_rank"] == 0);
}

TEST_CASE("trivialization") {
  Scenario sc = model_scenario();
  Verifier verifier(sc.slice);

  // on the model itself the trivialization is the identity
  for (const SpacePoint& p : sc.space.sample(11, 10)) {
    ModelPoint m = verifier.trivialize(sc.space, p);
    CHECK((m.g - p.g).norm() < 1e-9);
    CHECK((m.coords - p.extra).norm() < 1e-9);
  }

  // without the capabilities it refuses
  PresentedSpace stripped = sc.space;
  stripped.fibre_section = nullptr;
  CHECK_THROWS_AS(verifier.trivialize(stripped, sc.space.sample(11, 1)[0]),
                  TrivializeError);

  // on the center quotient the group solve is ambiguous
  ScenarioSpec cq;
  cq.kind = ScenarioKind::center_quotient;
  Scenario quotient = build_scenario(cq);
  Verifier qv(quotient.slice);
  CHECK_THROWS_AS(qv.trivialize(quotient.space, quotient.space.sample(1, 1)[0]),
                  TrivializeError);
}

TEST_CASE("classify produces the full report") {
  Scenario sc = model_scenario();
  Verifier verifier(sc.slice);
  ConditionReport rep = verifier.classify(sc.space, small_config());

  CHECK(rep.scenario == "model");
  CHECK(rep.n == 2);
  REQUIRE(rep.find("i_affine") != nullptr);
  CHECK(rep.find("i_affine")->verdict == "declared");
  CHECK(pattern_matches(rep, sc.expected));
  REQUIRE(rep.find("classification") != nullptr);
  CHECK(rep.find("classification")->verdict == "pass");
  CHECK(rep.find("classification")
            ->evidence["max_equivariance_defect"].get<double>() <= 1e-6);

  // report order is stable and serialization round-trips
  Json j = rep.to_json();
  CHECK(j["checks"].size() == rep.checks.size());
  CHECK(j["checks"][0]["name"] == "i_affine");
  CHECK(Json::parse(j.dump()) == j);
}

TEST_CASE("pattern matching reports mismatches") {
  Scenario sc = model_scenario();
  Verifier verifier(sc.slice);
  ConditionReport rep = verifier.classify(sc.space, small_config());

  ExpectedPattern wrong = {{"iii_dimension", "fail"},
                           {"no_such_check", "pass"}};
  std::vector<std::string> mismatches;
  CHECK(!pattern_matches(rep, wrong, &mismatches));
  REQUIRE(mismatches.size() == 2);
  CHECK(mismatches[0].find("expected fail, got pass") != std::string::npos);
  CHECK(mismatches[1].find("(missing)") != std::string::npos);
}

TEST_CASE("classification is declined without the optional capabilities") {
  Scenario sc = model_scenario();
  Verifier verifier(sc.slice);
  PresentedSpace stripped = sc.space;
  stripped.transporter = nullptr;

  ConditionReport rep = verifier.classify(stripped, small_config());
  CHECK(rep.find("v_fibre_single_orbit")->verdict == "not_verifiable");
  CHECK(rep.find("classification")->verdict == "declined");
}
