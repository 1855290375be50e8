#include "slicelab/slodowy.hpp"

#include <sstream>

namespace slicelab {

Sl2Triple principal_triple(const GroupSpec& spec) {
  const int n = spec.n;
  Sl2Triple t;
  t.xi = Mat::Zero(n, n);
  t.h = Mat::Zero(n, n);
  t.eta = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) t.h(i, i) = static_cast<double>(n - 1 - 2 * i);
  for (int i = 0; i + 1 < n; ++i) {
    t.xi(i, i + 1) = 1.0;
    t.eta(i + 1, i) = static_cast<double>((i + 1) * (n - i - 1));
  }
  return t;
}

std::vector<Mat> kernel_ad_eta(const Sl2Triple& triple,
                               const AlgebraBasis& basis, double rank_tol) {
  const GroupSpec& spec = basis.spec();
  Eigen::JacobiSVD<Mat> svd(ad_matrix(triple.eta, basis), Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  int kernel = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) <= rank_tol * smax) ++kernel;
  if (kernel != spec.rank()) {
    std::ostringstream os;
    os << "kernel_ad_eta: null space has dimension " << kernel
       << ", expected rank " << spec.rank() << " (rank tolerance " << rank_tol
       << "; singular values:";
    for (int i = 0; i < sv.size(); ++i) os << " " << sv(i);
    os << ")";
    throw std::runtime_error(os.str());
  }

  // null-space coordinates -> matrices, then Frobenius orthonormalization
  const int d = basis.size();
  Mat raw(spec.n * spec.n, kernel);
  for (int k = 0; k < kernel; ++k) {
    Vec c = svd.matrixV().col(d - kernel + k);
    raw.col(k) = vec_of(basis.from_coords(c));
  }
  Eigen::HouseholderQR<Mat> qr(raw);
  Mat q = qr.householderQ() * Mat::Identity(spec.n * spec.n, kernel);
  std::vector<Mat> out;
  out.reserve(kernel);
  for (int k = 0; k < kernel; ++k) out.push_back(mat_of(q.col(k), spec.n));
  return out;
}

SlodowySlice::SlodowySlice(const GroupSpec& spec, Tolerances tol)
    : spec_(spec),
      tol_(tol),
      basis_(spec, tol.rank),
      triple_(principal_triple(spec)),
      kernel_basis_(kernel_ad_eta(triple_, basis_, tol.rank)) {
  kernel_vec_.resize(spec.n * spec.n, rank());
  for (int k = 0; k < rank(); ++k) kernel_vec_.col(k) = vec_of(kernel_basis_[k]);
}

Mat SlodowySlice::point(const Vec& coords) const {
  if (coords.size() != rank())
    throw std::invalid_argument("SlodowySlice::point: coords length mismatch");
  return triple_.xi + mat_of(kernel_vec_ * coords, spec_.n);
}

SlodowySlice::Membership SlodowySlice::membership(const Mat& x) const {
  Membership m;
  Vec rhs = vec_of(x) - vec_of(triple_.xi);
  m.coords = kernel_vec_.adjoint() * rhs;  // columns are orthonormal
  m.residual = (rhs - kernel_vec_ * m.coords).norm();
  m.member = m.residual <= tol_.membership;
  return m;
}

}  // namespace slicelab
