#include "slicelab/model.hpp"

namespace slicelab {

Complex trivialized_cotangent_form(const Mat& xi, const Mat& a1, const Mat& b1,
                                   const Mat& a2, const Mat& b2) {
  return killing_form(b2, a1) - killing_form(b1, a2) +
         killing_form(xi, bracket(a1, a2));
}

ModelSpace::ModelSpace(std::shared_ptr<const SlodowySlice> slice)
    : slice_(std::move(slice)) {}

ModelPoint ModelSpace::act(const Mat& g, const ModelPoint& p) const {
  return {p.g * g.inverse(), p.coords};
}

Mat ModelSpace::moment(const ModelPoint& p) const {
  return -adjoint_action(p.g.inverse(), slice_matrix(p));
}

Complex ModelSpace::symplectic(const ModelPoint& p, const ModelTangent& v,
                               const ModelTangent& w) const {
  // Embedded base point and tangents: the curve (g exp(ta), x + t b) maps to
  // xi(t) = Ad_{exp(-ta) g^-1}(x + t b), with derivative [xi, a] + Ad_{g^-1} b.
  const Mat ginv = p.g.inverse();
  const Mat x = slice_matrix(p);
  const Mat xi = ginv * x * p.g;
  auto slice_dir = [&](const Vec& b) {
    Mat m = Mat::Zero(spec().n, spec().n);
    for (int k = 0; k < slice_->rank(); ++k) m += b(k) * slice_->kernel_basis()[k];
    return m;
  };
  const Mat bv = bracket(xi, v.a) + ginv * slice_dir(v.b) * p.g;
  const Mat bw = bracket(xi, w.a) + ginv * slice_dir(w.b) * p.g;
  return trivialized_cotangent_form(xi, v.a, bv, w.a, bw);
}

ModelTangent ModelSpace::fundamental_field(const Mat& theta,
                                           const ModelPoint& p) const {
  (void)p;  // the field is constant in the left trivialization
  return {-theta, Vec::Zero(slice_->rank())};
}

ModelTangent ModelSpace::tangent_unit(int k) const {
  ModelTangent t{Mat::Zero(spec().n, spec().n), Vec::Zero(slice_->rank())};
  if (k < spec().dim_g())
    t.a = slice_->basis().elements()[k];
  else
    t.b(k - spec().dim_g()) = 1.0;
  return t;
}

ModelTangent ModelSpace::tangent_from_chart(const Vec& chart) const {
  if (chart.size() != tangent_dim())
    throw std::invalid_argument("tangent_from_chart: length mismatch");
  ModelTangent t{Mat::Zero(spec().n, spec().n), Vec::Zero(slice_->rank())};
  for (int k = 0; k < spec().dim_g(); ++k)
    t.a += chart(k) * slice_->basis().elements()[k];
  t.b = chart.tail(slice_->rank());
  return t;
}

ModelPoint ModelSpace::perturb(const ModelPoint& p, const ModelTangent& v,
                               Complex t) const {
  return {p.g * group_exp(t * v.a), p.coords + t * v.b};
}

Mat ModelSpace::symplectic_gram(const ModelPoint& p) const {
  const int d = tangent_dim();
  Mat gram(d, d);
  std::vector<ModelTangent> units;
  units.reserve(d);
  for (int k = 0; k < d; ++k) units.push_back(tangent_unit(k));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) gram(i, j) = symplectic(p, units[i], units[j]);
  return gram;
}

ModelTangent ModelSpace::hamiltonian_field(
    const std::function<Complex(const ModelPoint&)>& f,
    const ModelPoint& p) const {
  const int d = tangent_dim();
  const double h = slice_->tolerances().fd_step;
  Vec df(d);
  for (int k = 0; k < d; ++k) {
    ModelTangent u = tangent_unit(k);
    df(k) = (f(perturb(p, u, h)) - f(perturb(p, u, -h))) / (2.0 * h);
  }
  Mat gram = symplectic_gram(p);
  Eigen::JacobiSVD<Mat> svd(gram);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) <= 1e-10 * sv(0))
    throw std::runtime_error(
        "hamiltonian_field: symplectic Gram matrix numerically singular");
  // omega(X_f, u_j) = sum_i x_i Gram_{ij} = df_j
  Vec x = gram.transpose().fullPivLu().solve(df);
  return tangent_from_chart(x);
}

Mat ModelSpace::mu_bar(const ModelPoint& p) const {
  return orbit_representative(*slice_, moment(p));
}

Mat negation_twist(const SlodowySlice& slice, const Mat& y) {
  return orbit_representative(slice, -y);
}

}  // namespace slicelab
