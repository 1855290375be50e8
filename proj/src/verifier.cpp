#include "slicelab/verifier.hpp"

#include "slicelab/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace slicelab {

namespace {

// columns f(perturb(p, k, +h)) - f(perturb(p, k, -h)) over 2h
Mat map_differential(const PresentedSpace& space, const SpacePoint& p,
                     const std::function<Vec(const SpacePoint&)>& f, double h) {
  Vec probe = f(p);
  Mat jac(probe.size(), space.tangent_dim);
  for (int k = 0; k < space.tangent_dim; ++k) {
    Vec fp = f(space.perturb(p, k, Complex(h, 0.0)));
    Vec fm = f(space.perturb(p, k, Complex(-h, 0.0)));
    jac.col(k) = (fp - fm) / (2.0 * h);
  }
  return jac;
}

int numerical_rank(const Mat& m, double rel_tol) {
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > rel_tol * sv(0)) ++rank;
  return rank;
}

Mat null_space_basis(const Mat& m, double rel_tol) {
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (smax > 0.0 && sv(i) > rel_tol * smax) ++rank;
  const int cols = static_cast<int>(m.cols());
  return svd.matrixV().rightCols(cols - rank);
}

Eigen::VectorXd singular_values(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues();
}

double model_distance(const ModelPoint& a, const ModelPoint& b) {
  return (a.g - b.g).norm() + (a.coords - b.coords).norm();
}

CheckResult error_result(const std::string& name, const std::exception& e) {
  return {name, "error", e.what(), Json{{"exception", e.what()}}};
}

}  // namespace

const CheckResult* ConditionReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

Json ConditionReport::to_json() const {
  Json out{{"scenario", scenario}, {"n", n}, {"seed", seed}};
  Json cs = Json::array();
  for (const auto& c : checks)
    cs.push_back(Json{{"name", c.name},
                      {"verdict", c.verdict},
                      {"summary", c.summary},
                      {"evidence", c.evidence}});
  out["checks"] = cs;
  return out;
}

bool pattern_matches(const ConditionReport& report,
                     const ExpectedPattern& expected,
                     std::vector<std::string>* mismatches) {
  bool ok = true;
  for (const auto& [name, verdict] : expected) {
    const CheckResult* c = report.find(name);
    const std::string got = c ? c->verdict : "(missing)";
    if (got != verdict) {
      ok = false;
      if (mismatches)
        mismatches->push_back(name + ": expected " + verdict + ", got " + got);
    }
  }
  return ok;
}

Verifier::Verifier(std::shared_ptr<const SlodowySlice> slice)
    : slice_(slice), model_(slice) {}

Mat Verifier::label_of(const PresentedSpace& space, const SpacePoint& p) const {
  return orbit_representative(*slice_, space.moment(p));
}

Vec Verifier::label_coords(const PresentedSpace& space,
                           const SpacePoint& p) const {
  return slice_->membership(label_of(space, p)).coords;
}

void Verifier::enforce_contract(const PresentedSpace& space,
                                const std::vector<SpacePoint>& samples,
                                std::uint64_t seed) const {
  std::mt19937_64 rng(seed ^ 0xc0117ac7ull);
  const int count = std::min<int>(5, static_cast<int>(samples.size()));
  for (int i = 0; i < count; ++i) {
    const SpacePoint& p = samples[i];
    const Mat g1 = random_group(space.spec, rng);
    const Mat g2 = random_group(space.spec, rng);
    const double law =
        (space.embed(space.act(g2, space.act(g1, p))) -
         space.embed(space.act(g2 * g1, p)))
            .norm();
    if (law > 1e-8) {
      std::ostringstream os;
      os << "PresentedSpace contract: action law violated at sample " << i
         << " (defect " << law << ")";
      throw ContractError(os.str());
    }
    const double equiv =
        (space.moment(space.act(g1, p)) - adjoint_action(g1, space.moment(p)))
            .norm();
    if (equiv > 1e-7) {
      std::ostringstream os;
      os << "PresentedSpace contract: moment map not equivariant at sample "
         << i << " (defect " << equiv << ")";
      throw ContractError(os.str());
    }
  }
}

CheckResult Verifier::check_free_action(
    const PresentedSpace& space, const std::vector<SpacePoint>& samples) const {
  const GroupSpec& spec = space.spec;
  const double h = slice_->tolerances().fd_step;
  double min_sv = std::numeric_limits<double>::infinity();
  bool locally_free = true;
  for (const SpacePoint& p : samples) {
    // theta -> theta_X(p) through act(exp(t theta), p)
    Mat field(space.embed(p).size(), spec.dim_g());
    for (int k = 0; k < spec.dim_g(); ++k) {
      const Mat& e = slice_->basis().elements()[k];
      Vec fp = space.embed(space.act(group_exp(h * e), p));
      Vec fm = space.embed(space.act(group_exp(-h * e), p));
      field.col(k) = (fp - fm) / (2.0 * h);
    }
    Eigen::VectorXd sv = singular_values(field);
    min_sv = std::min(min_sv, sv(sv.size() - 1));
    if (sv(sv.size() - 1) <= 1e-7) locally_free = false;
  }

  // center stabilizers: zeta I for zeta an n-th root of unity
  Json fixed_roots = Json::array();
  double min_center_move = std::numeric_limits<double>::infinity();
  for (int k = 1; k < spec.n; ++k) {
    const double angle = 2.0 * std::numbers::pi * k / spec.n;
    const Complex zeta = std::polar(1.0, angle);
    const Mat center = zeta * Mat::Identity(spec.n, spec.n);
    double max_move = 0.0;
    for (const SpacePoint& p : samples)
      max_move = std::max(
          max_move, (space.embed(space.act(center, p)) - space.embed(p)).norm());
    min_center_move = std::min(min_center_move, max_move);
    if (max_move <= 1e-6)
      fixed_roots.push_back(Json{{"root_index", k}, {"zeta", to_json(zeta)}});
  }

  CheckResult r;
  r.name = "ii_free_action";
  r.evidence = Json{{"min_generator_singular_value", min_sv},
                    {"min_center_displacement", min_center_move},
                    {"fixed_center_elements", fixed_roots},
                    {"scope", "stabilizers tested against the center only"}};
  if (!locally_free) {
    r.verdict = "not_locally_free";
    r.summary = "a fundamental-field map has nontrivial kernel at a sample";
  } else if (!fixed_roots.empty()) {
    r.verdict = "locally_free_not_free";
    r.summary = "center elements fix every sample; the action is locally free "
                "but not free";
  } else {
    r.verdict = "free";
    r.summary = "free at sampled resolution";
  }
  return r;
}

CheckResult Verifier::check_dimension(const PresentedSpace& space) const {
  const int want = space.spec.dim_g() + space.spec.rank();
  CheckResult r;
  r.name = "iii_dimension";
  r.evidence = Json{{"declared_dimension", space.dimension},
                    {"chart_dimension", space.tangent_dim},
                    {"dim_g_plus_rank", want}};
  if (space.tangent_dim != space.dimension) {
    r.verdict = "error";
    r.summary = "chart size inconsistent with declared dimension";
  } else if (space.dimension == want) {
    r.verdict = "pass";
    r.summary = "dim(X) = dim(G) + rk(G)";
  } else {
    r.verdict = "fail";
    r.summary = "dim(X) != dim(G) + rk(G)";
  }
  return r;
}

std::pair<CheckResult, CheckResult> Verifier::check_image_regular(
    const PresentedSpace& space, const std::vector<SpacePoint>& samples,
    int probes, std::uint64_t seed) const {
  CheckResult cont;
  cont.name = "iv_image_containment";
  int irregular = 0, indeterminate = 0;
  Eigen::VectorXd worst;
  for (const SpacePoint& p : samples) {
    RegularityEvidence ev =
        is_regular(space.moment(p), slice_->basis(), slice_->tolerances().rank);
    if (ev.verdict == Verdict::False) {
      ++irregular;
      worst = ev.singular_values;
    } else if (ev.verdict == Verdict::Indeterminate) {
      ++indeterminate;
    }
  }
  cont.evidence = Json{{"samples", static_cast<int>(samples.size())},
                       {"irregular", irregular},
                       {"indeterminate", indeterminate}};
  if (irregular > 0) {
    cont.verdict = "fail";
    cont.summary = "moment image leaves the regular locus at a sample";
    cont.evidence["witness_singular_values"] = to_json(worst);
  } else if (indeterminate > 0) {
    cont.verdict = "indeterminate";
    cont.summary = "regularity verdict indeterminate at a sample";
  } else {
    cont.verdict = "pass";
    cont.summary = "moment image contained in the regular locus at all samples";
  }

  CheckResult surj;
  surj.name = "iv_image_surjectivity";
  if (!space.fibre_section) {
    surj.verdict = "not_verifiable";
    surj.summary = "containment verified pointwise; surjectivity not "
                   "verifiable at desk scale without a fibre section";
    surj.evidence = Json::object();
    return {cont, surj};
  }

  std::mt19937_64 rng(seed ^ 0x51123ull);
  Json witnesses = Json::array();
  double max_label_gap = 0.0;
  int reached = 0;
  for (int i = 0; i < probes; ++i) {
    Vec coords;
    if (i == 0)
      coords = Vec::Constant(slice_->rank(), Complex(2.0, 0.0));
    else
      coords = random_coords(slice_->rank(), rng, 1.2);
    const Mat label = negation_twist(*slice_, slice_->point(coords));
    auto section_point = space.fibre_section(label);
    if (!section_point) {
      if (witnesses.size() < 4)
        witnesses.push_back(
            Json{{"invariants", to_json(char_invariants(label))},
                 {"slice_coords", to_json(coords)}});
      continue;
    }
    ++reached;
    max_label_gap = std::max(
        max_label_gap, (label_of(space, *section_point) - label).norm());
  }
  surj.evidence = Json{{"probes", probes},
                       {"reached", reached},
                       {"max_label_gap", max_label_gap},
                       {"unreached_witnesses", witnesses}};
  if (!witnesses.empty()) {
    surj.verdict = "fail_proper_subset";
    surj.summary = "moment image is a proper subset of the regular locus";
  } else if (max_label_gap > 1e-6) {
    surj.verdict = "fail";
    surj.summary = "fibre section returned a point with the wrong label";
  } else {
    surj.verdict = "pass";
    surj.summary = "every probed invariant vector is reached";
  }
  return {cont, surj};
}

CheckResult Verifier::check_fibre_single_orbit(
    const PresentedSpace& space, const Mat& label,
    const std::vector<SpacePoint>& fibre_samples) const {
  CheckResult r;
  r.name = "v_fibre_single_orbit";
  if (!space.transporter) {
    r.verdict = "not_verifiable";
    r.summary = "no transporter capability; condition (v) not verifiable at "
                "desk scale";
    return r;
  }
  for (size_t i = 0; i < fibre_samples.size(); ++i) {
    const double gap = (label_of(space, fibre_samples[i]) - label).norm();
    if (gap > 1e-6) {
      std::ostringstream os;
      os << "fibre membership precondition violated at sample " << i
         << " (label gap " << gap << ")";
      throw std::invalid_argument(os.str());
    }
  }

  // (a) kernel of the differential of p -> invariants(moment(p))
  const double h = slice_->tolerances().fd_step;
  const int expected_kernel = space.dimension - space.spec.rank();
  auto inv_of = [&](const SpacePoint& p) {
    return char_invariants(space.moment(p));
  };
  int worst_kernel = -1;
  bool dims_ok = true;
  for (const SpacePoint& p : fibre_samples) {
    Mat jac = map_differential(space, p, inv_of, h);
    const int kernel = space.tangent_dim - numerical_rank(jac, 1e-7);
    worst_kernel = kernel;
    if (kernel != expected_kernel) dims_ok = false;
  }

  // (b) transitivity: every sampled fibre pair connected by the action
  double max_residual = 0.0;
  bool transported_all = true;
  for (size_t i = 0; i < fibre_samples.size(); ++i)
    for (size_t j = i + 1; j < fibre_samples.size(); ++j) {
      auto g = space.transporter(fibre_samples[i], fibre_samples[j]);
      if (!g) {
        transported_all = false;
        continue;
      }
      const double res = (space.embed(space.act(*g, fibre_samples[i])) -
                          space.embed(fibre_samples[j]))
                             .norm();
      max_residual = std::max(max_residual, res);
      if (res > 1e-5) transported_all = false;
    }

  r.evidence = Json{{"fibre_samples", static_cast<int>(fibre_samples.size())},
                    {"kernel_dimension", worst_kernel},
                    {"expected_kernel_dimension", expected_kernel},
                    {"max_transport_residual", max_residual},
                    {"note", "evidence for, not proof of, irreducibility"}};
  if (dims_ok && transported_all) {
    r.verdict = "pass";
    r.summary = "fibre is a single orbit at sampled resolution";
  } else {
    r.verdict = "fail";
    r.summary = dims_ok ? "fibre pair not connected by the action"
                        : "fibre dimension mismatch";
  }
  return r;
}

CheckResult Verifier::check_mu_bar_submersion(
    const PresentedSpace& space, const std::vector<SpacePoint>& samples) const {
  CheckResult r;
  r.name = "mu_bar_submersion";
  const double h = slice_->tolerances().fd_step;
  auto label_fn = [&](const SpacePoint& p) { return label_coords(space, p); };
  int min_rank = slice_->rank();
  Eigen::VectorXd worst_sv;
  for (const SpacePoint& p : samples) {
    Mat jac = map_differential(space, p, label_fn, h);
    const int rank = numerical_rank(jac, 1e-7);
    if (rank < min_rank) {
      min_rank = rank;
      worst_sv = singular_values(jac);
    }
  }
  r.evidence = Json{{"expected_rank", slice_->rank()}, {"min_rank", min_rank}};
  if (min_rank == slice_->rank()) {
    r.verdict = "pass";
    r.summary = "slice-valued map is a submersion at all samples";
  } else {
    r.verdict = "fail";
    r.summary = "rank deficiency of the slice-valued map";
    r.evidence["worst_singular_values"] = to_json(worst_sv);
  }
  return r;
}

CheckResult Verifier::check_integrable_system(
    const PresentedSpace& space, const std::vector<SpacePoint>& samples) const {
  CheckResult r;
  r.name = "integrable_system";
  const int d = space.tangent_dim;
  const int rank = space.spec.rank();
  const double h = slice_->tolerances().fd_step;
  const AlgebraBasis& basis = slice_->basis();

  auto moment_coords = [&](const SpacePoint& p) {
    return basis.coords(space.moment(p));
  };

  bool spanning = true;
  double max_containment = 0.0;
  int worst_kernel = -1, worst_span = -1;
  for (const SpacePoint& p : samples) {
    // Gram matrix of omega on the chart basis
    Mat gram(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        Vec ei = Vec::Zero(d), ej = Vec::Zero(d);
        ei(i) = 1.0;
        ej(j) = 1.0;
        gram(i, j) = space.symplectic(p, ei, ej);
      }
    Eigen::VectorXd gsv = singular_values(gram);
    if (gsv(gsv.size() - 1) <= 1e-10 * gsv(0))
      throw std::runtime_error(
          "check_integrable_system: omega Gram matrix numerically singular");
    auto lu = gram.transpose().fullPivLu();

    // Hamiltonian fields of the pulled-back invariant components
    Mat fields(d, rank);
    for (int i = 0; i < rank; ++i) {
      Vec df(d);
      for (int k = 0; k < d; ++k) {
        Vec fp = char_invariants(
            space.moment(space.perturb(p, k, Complex(h, 0.0))));
        Vec fm = char_invariants(
            space.moment(space.perturb(p, k, Complex(-h, 0.0))));
        df(k) = (fp(i) - fm(i)) / (2.0 * h);
      }
      fields.col(i) = lu.solve(df);
    }

    // kernel of d(moment)
    Mat dmu = map_differential(space, p, moment_coords, h);
    Mat kernel = null_space_basis(dmu, 1e-7);
    const int kernel_dim = static_cast<int>(kernel.cols());
    const int span_dim = numerical_rank(fields, 1e-6);
    worst_kernel = kernel_dim;
    worst_span = span_dim;

    // containment span{X_{f_i}} <= ker(dmu)
    for (int i = 0; i < rank; ++i) {
      const double norm = fields.col(i).norm();
      if (norm < 1e-12) continue;
      const Vec proj = kernel * (kernel.adjoint() * fields.col(i));
      max_containment =
          std::max(max_containment, (fields.col(i) - proj).norm() / norm);
    }
    if (span_dim != rank || kernel_dim != rank) spanning = false;
  }
  if (max_containment > 1e-4) spanning = false;

  r.evidence = Json{{"rank", rank},
                    {"kernel_dim_last_sample", worst_kernel},
                    {"span_dim_last_sample", worst_span},
                    {"max_containment_residual", max_containment}};
  if (spanning) {
    r.verdict = "pass";
    r.summary = "Hamiltonian fields of the pulled-back invariants span the "
                "moment fibres";
  } else {
    r.verdict = "fail";
    r.summary = "spanning criterion fails";
  }
  return r;
}

ModelPoint Verifier::trivialize(const PresentedSpace& space,
                                const SpacePoint& p) const {
  if (!space.fibre_section || !space.transporter)
    throw TrivializeError(
        "trivialize: fibre_section and transporter capabilities required");
  const Mat label = label_of(space, p);
  const Mat twisted = negation_twist(*slice_, label);
  const Vec coords = slice_->membership(twisted).coords;

  auto base = space.fibre_section(label);
  if (!base)
    throw TrivializeError("trivialize: fibre section undefined at the label");
  auto g = space.transporter(*base, p);
  if (!g)
    throw TrivializeError("trivialize: no transporter between section point "
                          "and input (evidence against a single-orbit fibre)");
  const double fit =
      (space.embed(space.act(*g, *base)) - space.embed(p)).norm();
  if (fit > 1e-6) {
    std::ostringstream os;
    os << "trivialize: transporter residual " << fit;
    throw TrivializeError(os.str());
  }
  // the group solve must be unique; center twists that also solve it signal
  // a non-free action
  int solutions = 1;
  for (int k = 1; k < space.spec.n; ++k) {
    const Complex zeta = std::polar(1.0, 2.0 * std::numbers::pi * k / space.spec.n);
    const Mat alt = zeta * (*g);
    if ((space.embed(space.act(alt, *base)) - space.embed(p)).norm() <= 1e-6)
      ++solutions;
  }
  if (solutions > 1) {
    std::ostringstream os;
    os << "trivialize: group solve ambiguous (" << solutions
       << " center twists fit)";
    throw TrivializeError(os.str());
  }

  ModelPoint section_model{Mat::Identity(space.spec.n, space.spec.n), coords};
  return model_.act(*g, section_model);
}

ConditionReport Verifier::classify(const PresentedSpace& space,
                                   const VerifierConfig& config) const {
  ConditionReport rep;
  rep.scenario = space.name;
  rep.n = space.spec.n;
  rep.seed = config.seed;

  std::vector<SpacePoint> samples = space.sample(config.seed, config.samples);
  enforce_contract(space, samples, config.seed);

  rep.checks.push_back(
      {"i_affine", "declared",
       space.affine_note.empty() ? "affineness declared by the scenario"
                                 : space.affine_note,
       Json{{"declared", true}}});

  auto guarded = [&](const std::string& name, auto&& fn) {
    try {
      rep.checks.push_back(fn());
    } catch (const std::exception& e) {
      rep.checks.push_back(error_result(name, e));
    }
  };

  guarded("ii_free_action",
          [&] { return check_free_action(space, samples); });
  guarded("iii_dimension", [&] { return check_dimension(space); });
  try {
    auto [cont, surj] = check_image_regular(space, samples,
                                            config.surjectivity_probes,
                                            config.seed);
    rep.checks.push_back(cont);
    rep.checks.push_back(surj);
  } catch (const std::exception& e) {
    rep.checks.push_back(error_result("iv_image_containment", e));
    rep.checks.push_back(error_result("iv_image_surjectivity", e));
  }

  guarded("v_fibre_single_orbit", [&] {
    CheckResult r;
    if (!space.transporter) {
      r.name = "v_fibre_single_orbit";
      r.verdict = "not_verifiable";
      r.summary = "no transporter capability; condition (v) not verifiable "
                  "at desk scale";
      return r;
    }
    const Mat label = label_of(space, samples[0]);
    std::mt19937_64 rng(config.seed ^ 0xf1b4eull);
    std::vector<SpacePoint> fibre{samples[0]};
    for (int i = 1; i < config.fibre_samples; ++i)
      fibre.push_back(space.act(random_group(space.spec, rng), samples[0]));
    return check_fibre_single_orbit(space, label, fibre);
  });

  const CheckResult* cont = rep.find("iv_image_containment");
  if (cont && cont->verdict == "pass") {
    guarded("mu_bar_submersion",
            [&] { return check_mu_bar_submersion(space, samples); });
  } else {
    rep.checks.push_back({"mu_bar_submersion", "skipped",
                          "skipped: moment-image containment did not pass",
                          Json::object()});
  }

  guarded("integrable_system",
          [&] { return check_integrable_system(space, samples); });

  // the rank criterion must agree with (dimension AND containment)
  {
    const CheckResult* dim = rep.find("iii_dimension");
    const CheckResult* integ = rep.find("integrable_system");
    CheckResult r;
    r.name = "integrability_consistency";
    if (!dim || !integ || !cont || integ->verdict == "error" ||
        cont->verdict == "indeterminate" || cont->verdict == "error") {
      r.verdict = "error";
      r.summary = "prerequisite verdicts unavailable or indeterminate";
    } else {
      const bool expected =
          dim->verdict == "pass" && cont->verdict == "pass";
      const bool got = integ->verdict == "pass";
      r.verdict = (expected == got) ? "pass" : "fail";
      r.summary = r.verdict == "pass"
                      ? "spanning verdict agrees with dimension and "
                        "containment"
                      : "spanning verdict contradicts dimension and "
                        "containment";
      r.evidence = Json{{"dimension_pass", dim->verdict == "pass"},
                        {"containment_pass", cont->verdict == "pass"},
                        {"spanning_pass", got}};
    }
    rep.checks.push_back(r);
  }

  // classification: conditions (ii)-(v) plus capabilities
  auto verdict_of = [&](const std::string& name) {
    const CheckResult* c = rep.find(name);
    return c ? c->verdict : std::string("(missing)");
  };
  const bool eligible = verdict_of("ii_free_action") == "free" &&
                        verdict_of("iii_dimension") == "pass" &&
                        verdict_of("iv_image_containment") == "pass" &&
                        verdict_of("iv_image_surjectivity") == "pass" &&
                        verdict_of("v_fibre_single_orbit") == "pass" &&
                        space.fibre_section && space.transporter;
  if (!eligible) {
    rep.checks.push_back(
        {"classification", "declined",
         "conditions (ii)-(v) not all verified; classification declined",
         Json{{"ii", verdict_of("ii_free_action")},
              {"iii", verdict_of("iii_dimension")},
              {"iv_containment", verdict_of("iv_image_containment")},
              {"iv_surjectivity", verdict_of("iv_image_surjectivity")},
              {"v", verdict_of("v_fibre_single_orbit")}}});
    return rep;
  }

  guarded("classification", [&] {
    CheckResult r;
    r.name = "classification";
    std::vector<ModelPoint> images;
    images.reserve(samples.size());
    for (const SpacePoint& p : samples) images.push_back(trivialize(space, p));

    // equivariance
    std::mt19937_64 rng(config.seed ^ 0xe911ull);
    double max_equiv = 0.0;
    for (size_t i = 0; i < samples.size(); ++i) {
      const Mat g = random_group(space.spec, rng);
      max_equiv = std::max(
          max_equiv, model_distance(trivialize(space, space.act(g, samples[i])),
                                    model_.act(g, images[i])));
    }

    // sample injectivity
    double min_image_sep = std::numeric_limits<double>::infinity();
    bool injective = true;
    for (size_t i = 0; i < samples.size(); ++i)
      for (size_t j = i + 1; j < samples.size(); ++j) {
        if ((space.embed(samples[i]) - space.embed(samples[j])).norm() < 1e-6)
          continue;
        const double sep = model_distance(images[i], images[j]);
        min_image_sep = std::min(min_image_sep, sep);
        if (sep < 1e-6) injective = false;
      }

    // differential invertibility at a sample subset
    const double h = slice_->tolerances().fd_step;
    auto embed_image = [&](const SpacePoint& p) {
      ModelPoint m = trivialize(space, p);
      Vec out(m.g.size() + m.coords.size());
      out << vec_of(m.g), m.coords;
      return out;
    };
    int min_jac_rank = space.tangent_dim;
    const int jac_samples =
        std::min<int>(config.jacobian_samples, static_cast<int>(samples.size()));
    for (int i = 0; i < jac_samples; ++i) {
      Mat jac = map_differential(space, samples[i], embed_image, h);
      min_jac_rank = std::min(min_jac_rank, numerical_rank(jac, 1e-6));
    }

    r.evidence = Json{{"max_equivariance_defect", max_equiv},
                      {"min_image_separation", min_image_sep},
                      {"min_jacobian_rank", min_jac_rank},
                      {"chart_dimension", space.tangent_dim},
                      {"example_image", to_json(images[0])}};
    if (max_equiv <= 1e-6 && injective && min_jac_rank == space.tangent_dim) {
      r.verdict = "pass";
      r.summary = "equivariant trivialization onto the model constructed and "
                  "verified";
    } else {
      r.verdict = "fail";
      r.summary = "trivialization constructed but failed verification";
    }
    return r;
  });

  return rep;
}

}  // namespace slicelab
