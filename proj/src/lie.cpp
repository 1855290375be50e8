#include "slicelab/lie.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <limits>
#include <sstream>

namespace slicelab {

bool is_traceless(const Mat& x, double tol) {
  return std::abs(x.trace()) <= tol;
}

bool is_unimodular(const Mat& g, double tol) {
  return std::abs(g.determinant() - Complex(1.0)) <= tol;
}

static void require_same_size(const Mat& a, const Mat& b, const char* who) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    std::ostringstream os;
    os << who << ": size mismatch (" << a.rows() << "x" << a.cols() << " vs "
       << b.rows() << "x" << b.cols() << ")";
    throw std::invalid_argument(os.str());
  }
}

Mat bracket(const Mat& a, const Mat& b) {
  require_same_size(a, b, "bracket");
  return a * b - b * a;
}

Mat adjoint_action(const Mat& g, const Mat& x) {
  require_same_size(g, x, "adjoint_action");
  return g * x * g.inverse();
}

Complex killing_form(const Mat& a, const Mat& b) {
  require_same_size(a, b, "killing_form");
  return 2.0 * static_cast<double>(a.rows()) * (a * b).trace();
}

AlgebraBasis::AlgebraBasis(const GroupSpec& spec, double rank_tol)
    : spec_(spec) {
  const int n = spec.n;
  elems_.reserve(spec.dim_g());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      Mat e = Mat::Zero(n, n);
      e(i, j) = 1.0;
      elems_.push_back(e);
    }
  for (int i = 0; i + 1 < n; ++i) {
    Mat e = Mat::Zero(n, n);
    e(i, i) = 1.0;
    e(i + 1, i + 1) = -1.0;
    elems_.push_back(e);
  }

  vec_basis_.resize(n * n, spec.dim_g());
  for (int k = 0; k < spec.dim_g(); ++k) vec_basis_.col(k) = vec_of(elems_[k]);
  qr_.compute(vec_basis_);

  // linear independence of the basis
  Eigen::JacobiSVD<Mat> svd(vec_basis_);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) <= rank_tol * sv(0))
    throw std::runtime_error("AlgebraBasis: degenerate basis");

  killing_gram_.resize(spec.dim_g(), spec.dim_g());
  for (int i = 0; i < spec.dim_g(); ++i)
    for (int j = 0; j < spec.dim_g(); ++j)
      killing_gram_(i, j) = killing_form(elems_[i], elems_[j]);
  Eigen::JacobiSVD<Mat> ksvd(killing_gram_);
  const auto& ksv = ksvd.singularValues();
  if (ksv(ksv.size() - 1) <= rank_tol * ksv(0))
    throw std::runtime_error("AlgebraBasis: Killing Gram matrix degenerate");
}

Vec AlgebraBasis::coords(const Mat& x) const {
  if (x.rows() != spec_.n || x.cols() != spec_.n)
    throw std::invalid_argument("AlgebraBasis::coords: size mismatch");
  return qr_.solve(vec_of(x));
}

Mat AlgebraBasis::from_coords(const Vec& c) const {
  if (c.size() != spec_.dim_g())
    throw std::invalid_argument("AlgebraBasis::from_coords: length mismatch");
  return mat_of(vec_basis_ * c, spec_.n);
}

Mat ad_matrix(const Mat& a, const AlgebraBasis& basis) {
  const int d = basis.size();
  Mat m(d, d);
  for (int j = 0; j < d; ++j)
    m.col(j) = basis.coords(bracket(a, basis.elements()[j]));
  return m;
}

Complex killing_form_oracle(const Mat& a, const Mat& b,
                            const AlgebraBasis& basis) {
  return (ad_matrix(a, basis) * ad_matrix(b, basis)).trace();
}

RegularityEvidence is_regular(const Mat& x, const AlgebraBasis& basis,
                              double tol) {
  RegularityEvidence ev;
  if (tol < 1e-15) {
    ev.verdict = Verdict::Indeterminate;
    ev.note = "rank tolerance below double-precision resolution";
    return ev;
  }
  Eigen::JacobiSVD<Mat> svd(ad_matrix(x, basis));
  ev.singular_values = svd.singularValues();
  const double smax = ev.singular_values(0);
  if (smax == 0.0) {  // ad_x = 0 exactly (x central, hence x = 0 in sl_n)
    ev.kernel_dim = basis.size();
    ev.verdict = (ev.kernel_dim == basis.spec().rank()) ? Verdict::True
                                                        : Verdict::False;
    return ev;
  }
  int kernel = 0;
  bool gap_hit = false;
  for (int i = 0; i < ev.singular_values.size(); ++i) {
    const double s = ev.singular_values(i);
    if (s <= tol * smax)
      ++kernel;
    else if (s < 10.0 * tol * smax)
      gap_hit = true;
  }
  ev.kernel_dim = kernel;
  if (gap_hit) {
    ev.verdict = Verdict::Indeterminate;
    ev.note = "singular value inside the (tol, 10*tol) guard band";
    return ev;
  }
  ev.verdict = (kernel == basis.spec().rank()) ? Verdict::True : Verdict::False;
  return ev;
}

int orbit_dimension(const Mat& x, const AlgebraBasis& basis, double tol) {
  RegularityEvidence ev = is_regular(x, basis, tol);
  if (ev.verdict == Verdict::Indeterminate)
    throw std::runtime_error("orbit_dimension: indeterminate kernel rank: " +
                             ev.note);
  return basis.spec().dim_g() - ev.kernel_dim;
}

Mat group_exp(const Mat& a) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("group_exp: matrix not square");
  return a.exp();
}

}  // namespace slicelab
