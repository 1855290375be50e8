#include "slicelab/scenarios.hpp"

#include "slicelab/sampling.hpp"

#include <cmath>
#include <numbers>

namespace slicelab {

ScenarioKind scenario_kind_from_string(const std::string& s) {
  if (s == "model") return ScenarioKind::model;
  if (s == "disguised") return ScenarioKind::disguised;
  if (s == "center_quotient") return ScenarioKind::center_quotient;
  if (s == "open_subvariety") return ScenarioKind::open_subvariety;
  if (s == "cotangent") return ScenarioKind::cotangent;
  throw std::invalid_argument("unknown scenario kind: " + s);
}

std::string to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::model: return "model";
    case ScenarioKind::disguised: return "disguised";
    case ScenarioKind::center_quotient: return "center_quotient";
    case ScenarioKind::open_subvariety: return "open_subvariety";
    case ScenarioKind::cotangent: return "cotangent";
  }
  throw std::logic_error("unreachable");
}

namespace {

// G x (base + span(family)): the model (family = slice kernel basis) and the
// full cotangent control (family = whole algebra basis) share all plumbing.
struct AffineFamily {
  std::shared_ptr<const SlodowySlice> slice;
  Mat base;
  std::vector<Mat> family;

  int n() const { return slice->spec().n; }
  int dim_g() const { return slice->spec().dim_g(); }
  int family_dim() const { return static_cast<int>(family.size()); }

  Mat family_matrix(const Vec& extra) const {
    Mat x = base;
    for (int k = 0; k < family_dim(); ++k) x += extra(k) * family[k];
    return x;
  }

  Mat family_direction(const Vec& chart_tail) const {
    Mat b = Mat::Zero(n(), n());
    for (int k = 0; k < family_dim(); ++k) b += chart_tail(k) * family[k];
    return b;
  }

  Mat moment(const SpacePoint& p) const {
    return -adjoint_action(p.g.inverse(), family_matrix(p.extra));
  }

  SpacePoint act(const Mat& g, const SpacePoint& p) const {
    return {p.g * g.inverse(), p.extra};
  }

  SpacePoint perturb(const SpacePoint& p, int k, Complex t) const {
    if (k < dim_g())
      return {p.g * group_exp(t * slice->basis().elements()[k]), p.extra};
    SpacePoint q = p;
    q.extra(k - dim_g()) += t;
    return q;
  }

  Vec embed(const SpacePoint& p) const {
    Vec out(p.g.size() + p.extra.size());
    out << vec_of(p.g), p.extra;
    return out;
  }

  Complex symplectic(const SpacePoint& p, const Vec& v, const Vec& w) const {
    const Mat ginv = p.g.inverse();
    const Mat xi = ginv * family_matrix(p.extra) * p.g;
    auto lift = [&](const Vec& chart) {
      Mat a = Mat::Zero(n(), n());
      for (int k = 0; k < dim_g(); ++k)
        a += chart(k) * slice->basis().elements()[k];
      Mat b = bracket(xi, a) + ginv * family_direction(chart.tail(family_dim())) * p.g;
      return std::pair<Mat, Mat>{a, b};
    };
    auto [a1, b1] = lift(v);
    auto [a2, b2] = lift(w);
    return trivialized_cotangent_form(xi, a1, b1, a2, b2);
  }
};

PresentedSpace model_like_space(std::shared_ptr<const SlodowySlice> slice,
                                const std::string& name) {
  auto fam = std::make_shared<AffineFamily>();
  fam->slice = slice;
  fam->base = slice->triple().xi;
  fam->family = slice->kernel_basis();

  const GroupSpec spec = slice->spec();
  PresentedSpace space;
  space.name = name;
  space.spec = spec;
  space.dimension = spec.dim_g() + spec.rank();
  space.tangent_dim = space.dimension;
  space.affine_note = "product of an affine group with an affine-linear slice";
  space.sample = [fam, spec](std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    std::vector<SpacePoint> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
      Mat g = random_group(spec, rng);
      Vec c = random_coords(spec.rank(), rng, 0.8);
      out.push_back({g, c});
    }
    return out;
  };
  space.moment = [fam](const SpacePoint& p) { return fam->moment(p); };
  space.act = [fam](const Mat& g, const SpacePoint& p) { return fam->act(g, p); };
  space.perturb = [fam](const SpacePoint& p, int k, Complex t) {
    return fam->perturb(p, k, t);
  };
  space.embed = [fam](const SpacePoint& p) { return fam->embed(p); };
  space.symplectic = [fam](const SpacePoint& p, const Vec& v, const Vec& w) {
    return fam->symplectic(p, v, w);
  };
  space.fibre_section = [slice, spec](const Mat& label) -> std::optional<SpacePoint> {
    const Mat twisted = negation_twist(*slice, label);
    return SpacePoint{Mat::Identity(spec.n, spec.n),
                      slice->membership(twisted).coords};
  };
  space.transporter = [](const SpacePoint& p,
                         const SpacePoint& q) -> std::optional<Mat> {
    if ((p.extra - q.extra).norm() > 1e-6) return std::nullopt;
    return q.g.inverse() * p.g;
  };
  return space;
}

ExpectedPattern all_pass_pattern(const std::string& classification) {
  return {{"ii_free_action", "free"},
          {"iii_dimension", "pass"},
          {"iv_image_containment", "pass"},
          {"iv_image_surjectivity", "pass"},
          {"v_fibre_single_orbit", "pass"},
          {"mu_bar_submersion", "pass"},
          {"integrable_system", "pass"},
          {"integrability_consistency", "pass"},
          {"classification", classification}};
}

Scenario build_model(const ScenarioSpec& spec, Tolerances tol) {
  Scenario sc;
  sc.spec = spec;
  sc.slice = std::make_shared<SlodowySlice>(GroupSpec(spec.n), tol);
  sc.space = model_like_space(sc.slice, "model");
  sc.expected = all_pass_pattern("pass");
  return sc;
}

Scenario build_disguised(const ScenarioSpec& spec, Tolerances tol) {
  Scenario sc = build_model(spec, tol);
  sc.space.name = "disguised";

  const GroupSpec gs = sc.slice->spec();
  std::mt19937_64 rng(spec.disguise_seed);
  const Mat conj = random_group(gs, rng, 0.4);
  const Mat conj_inv = conj.inverse();
  // well-conditioned affine reparametrization of the slice coordinates
  Mat reparam;
  for (;;) {
    reparam = Mat(gs.rank(), gs.rank());
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int i = 0; i < gs.rank(); ++i)
      for (int j = 0; j < gs.rank(); ++j)
        reparam(i, j) = Complex(gauss(rng), gauss(rng));
    Eigen::JacobiSVD<Mat> svd(reparam);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) > 0.1 * sv(0)) break;
  }
  const Mat reparam_inv = reparam.inverse();
  const Vec shift = random_coords(gs.rank(), rng, 0.5);

  auto hide = [conj, conj_inv, reparam, shift](const SpacePoint& p) {
    return SpacePoint{conj * p.g * conj_inv, reparam * p.extra + shift};
  };
  auto unhide = [conj, conj_inv, reparam_inv, shift](const SpacePoint& p) {
    return SpacePoint{conj_inv * p.g * conj, reparam_inv * (p.extra - shift)};
  };

  PresentedSpace inner = sc.space;  // the model, captured by value
  PresentedSpace& s = sc.space;
  s.sample = [inner, hide](std::uint64_t seed, int count) {
    auto pts = inner.sample(seed, count);
    for (auto& p : pts) p = hide(p);
    return pts;
  };
  s.moment = [inner, unhide](const SpacePoint& p) {
    return inner.moment(unhide(p));
  };
  s.act = [inner, hide, unhide](const Mat& g, const SpacePoint& p) {
    return hide(inner.act(g, unhide(p)));
  };
  s.perturb = [inner, hide, unhide](const SpacePoint& p, int k, Complex t) {
    return hide(inner.perturb(unhide(p), k, t));
  };
  // ambient embedding of the disguised presentation itself
  s.embed = [](const SpacePoint& p) {
    Vec out(p.g.size() + p.extra.size());
    out << vec_of(p.g), p.extra;
    return out;
  };
  s.symplectic = [inner, unhide](const SpacePoint& p, const Vec& v, const Vec& w) {
    return inner.symplectic(unhide(p), v, w);
  };
  s.fibre_section = [inner, hide](const Mat& label) -> std::optional<SpacePoint> {
    auto base = inner.fibre_section(label);
    if (!base) return std::nullopt;
    return hide(*base);
  };
  s.transporter = [inner, unhide](const SpacePoint& p,
                                  const SpacePoint& q) -> std::optional<Mat> {
    return inner.transporter(unhide(p), unhide(q));
  };
  return sc;
}

// canonical coset representative: rotate the largest-modulus entry's
// argument into (-pi/n, pi/n] by an n-th root of unity
Mat center_normalize(const Mat& g, int n) {
  int pi = 0, pj = 0;
  double best = -1.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (std::abs(g(i, j)) > best) {
        best = std::abs(g(i, j));
        pi = i;
        pj = j;
      }
  const double theta = std::arg(g(pi, pj));
  const long k = std::lround(theta * n / (2.0 * std::numbers::pi));
  if (k == 0) return g;
  const Complex zeta = std::polar(1.0, -2.0 * std::numbers::pi * k / n);
  return zeta * g;
}

Scenario build_center_quotient(const ScenarioSpec& spec, Tolerances tol) {
  Scenario sc = build_model(spec, tol);
  sc.space.name = "center_quotient";
  const int n = spec.n;

  PresentedSpace inner = sc.space;
  PresentedSpace& s = sc.space;
  auto norm_pt = [n](SpacePoint p) {
    p.g = center_normalize(p.g, n);
    return p;
  };
  s.sample = [inner, norm_pt](std::uint64_t seed, int count) {
    auto pts = inner.sample(seed, count);
    for (auto& p : pts) p = norm_pt(p);
    return pts;
  };
  s.act = [inner, norm_pt](const Mat& g, const SpacePoint& p) {
    return norm_pt(inner.act(g, p));
  };
  s.perturb = [inner, norm_pt](const SpacePoint& p, int k, Complex t) {
    return norm_pt(inner.perturb(p, k, t));
  };
  s.fibre_section = [inner, norm_pt](const Mat& label) -> std::optional<SpacePoint> {
    auto base = inner.fibre_section(label);
    if (!base) return std::nullopt;
    return norm_pt(*base);
  };
  // moment, embed, symplectic, transporter act on representatives unchanged

  sc.expected = {{"ii_free_action", "locally_free_not_free"},
                 {"iii_dimension", "pass"},
                 {"iv_image_containment", "pass"},
                 {"iv_image_surjectivity", "pass"},
                 {"v_fibre_single_orbit", "pass"},
                 {"mu_bar_submersion", "pass"},
                 {"integrable_system", "pass"},
                 {"integrability_consistency", "pass"},
                 {"classification", "declined"}};
  return sc;
}

Scenario build_open_subvariety(const ScenarioSpec& spec, Tolerances tol) {
  if (spec.box_radius <= 0.0)
    throw std::invalid_argument("open_subvariety: box radius must be positive");
  Scenario sc = build_model(spec, tol);
  sc.space.name = "open_subvariety";
  const double radius = spec.box_radius;
  const GroupSpec gs = sc.slice->spec();

  auto in_box = [radius](const Vec& coords) {
    for (int i = 0; i < coords.size(); ++i)
      if (std::abs(coords(i)) >= radius) return false;
    return true;
  };

  PresentedSpace inner = sc.space;
  PresentedSpace& s = sc.space;
  s.sample = [gs, radius](std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<SpacePoint> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
      Mat g = random_group(gs, rng);
      Vec c(gs.rank());
      for (int j = 0; j < gs.rank(); ++j) {
        const double r = 0.95 * radius * std::sqrt(unit(rng));
        const double phi = 2.0 * std::numbers::pi * unit(rng);
        c(j) = std::polar(r, phi);
      }
      out.push_back({g, c});
    }
    return out;
  };
  auto slice = sc.slice;
  s.fibre_section = [inner, slice, in_box](const Mat& label) -> std::optional<SpacePoint> {
    auto base = inner.fibre_section(label);
    if (!base || !in_box(base->extra)) return std::nullopt;  // partial section
    return base;
  };

  sc.expected = {{"ii_free_action", "free"},
                 {"iii_dimension", "pass"},
                 {"iv_image_containment", "pass"},
                 {"iv_image_surjectivity", "fail_proper_subset"},
                 {"v_fibre_single_orbit", "pass"},
                 {"mu_bar_submersion", "pass"},
                 {"integrable_system", "pass"},
                 {"integrability_consistency", "pass"},
                 {"classification", "declined"}};
  return sc;
}

Scenario build_cotangent(const ScenarioSpec& spec, Tolerances tol) {
  Scenario sc;
  sc.spec = spec;
  sc.slice = std::make_shared<SlodowySlice>(GroupSpec(spec.n), tol);
  const GroupSpec gs = sc.slice->spec();

  auto fam = std::make_shared<AffineFamily>();
  fam->slice = sc.slice;
  fam->base = Mat::Zero(gs.n, gs.n);
  fam->family = sc.slice->basis().elements();

  PresentedSpace& s = sc.space;
  s.name = "cotangent";
  s.spec = gs;
  s.dimension = 2 * gs.dim_g();
  s.tangent_dim = s.dimension;
  s.affine_note = "product of an affine group with its Lie algebra";
  s.sample = [fam, gs](std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    std::vector<SpacePoint> out;
    out.reserve(count);
    // deterministic zero-fibre point: its moment value is not regular
    out.push_back({Mat::Identity(gs.n, gs.n), Vec::Zero(gs.dim_g())});
    for (int i = 1; i < count; ++i) {
      Mat g = random_group(gs, rng);
      Vec c = random_coords(gs.dim_g(), rng, 0.8);
      out.push_back({g, c});
    }
    return out;
  };
  s.moment = [fam](const SpacePoint& p) { return fam->moment(p); };
  s.act = [fam](const Mat& g, const SpacePoint& p) { return fam->act(g, p); };
  s.perturb = [fam](const SpacePoint& p, int k, Complex t) {
    return fam->perturb(p, k, t);
  };
  s.embed = [fam](const SpacePoint& p) { return fam->embed(p); };
  s.symplectic = [fam](const SpacePoint& p, const Vec& v, const Vec& w) {
    return fam->symplectic(p, v, w);
  };
  // no fibre section, no transporter

  sc.expected = {{"ii_free_action", "free"},
                 {"iii_dimension", "fail"},
                 {"iv_image_containment", "fail"},
                 {"iv_image_surjectivity", "not_verifiable"},
                 {"v_fibre_single_orbit", "not_verifiable"},
                 {"mu_bar_submersion", "skipped"},
                 {"integrable_system", "fail"},
                 {"integrability_consistency", "pass"},
                 {"classification", "declined"}};
  return sc;
}

}  // namespace

Scenario build_scenario(const ScenarioSpec& spec, Tolerances tol) {
  switch (spec.kind) {
    case ScenarioKind::model: return build_model(spec, tol);
    case ScenarioKind::disguised: return build_disguised(spec, tol);
    case ScenarioKind::center_quotient: return build_center_quotient(spec, tol);
    case ScenarioKind::open_subvariety: return build_open_subvariety(spec, tol);
    case ScenarioKind::cotangent: return build_cotangent(spec, tol);
  }
  throw std::logic_error("unreachable");
}

}  // namespace slicelab
