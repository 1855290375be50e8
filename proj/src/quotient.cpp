#include "slicelab/quotient.hpp"

#include <sstream>

namespace slicelab {

Vec char_invariants(const Mat& x) {
  if (x.rows() != x.cols())
    throw std::invalid_argument("char_invariants: matrix not square");
  const int n = static_cast<int>(x.rows());
  // Faddeev-LeVerrier: M_{k+1} = x (M_k + c_k I), c_{k+1} = -tr(M_{k+1})/(k+1)
  Mat m = x;
  std::vector<Complex> c(n + 1);
  c[0] = 1.0;
  c[1] = -m.trace();
  for (int k = 2; k <= n; ++k) {
    m = x * (m + c[k - 1] * Mat::Identity(n, n));
    c[k] = -m.trace() / static_cast<double>(k);
  }
  Vec inv(n - 1);
  for (int k = 2; k <= n; ++k) inv(k - 2) = c[k];
  return inv;
}

NewtonResult invert_invariants(const SlodowySlice& slice, const Vec& inv,
                               int max_iterations) {
  const int r = slice.rank();
  if (inv.size() != r)
    throw std::invalid_argument("invert_invariants: invariant length mismatch");
  const double h = slice.tolerances().jac_step;
  const double target = slice.tolerances().newton_residual;

  auto residual = [&](const Vec& c) -> Vec {
    return char_invariants(slice.point(c)) - inv;
  };

  NewtonResult res;
  res.coords = Vec::Zero(r);
  Vec f = residual(res.coords);
  res.residual = f.norm();
  while (res.iterations < max_iterations && res.residual > target) {
    // complex Jacobian by real-step central differences (the map is
    // polynomial in the coordinates, so the real step gives the holomorphic
    // derivative)
    Mat jac(r, r);
    for (int j = 0; j < r; ++j) {
      Vec cp = res.coords, cm = res.coords;
      cp(j) += h;
      cm(j) -= h;
      jac.col(j) = (residual(cp) - residual(cm)) / (2.0 * h);
    }
    Vec step = jac.fullPivLu().solve(-f);
    double t = 1.0;
    Vec next;
    Vec fn;
    for (int back = 0; back < 40; ++back) {
      next = res.coords + t * step;
      fn = residual(next);
      if (fn.norm() < res.residual) break;
      t *= 0.5;
    }
    if (fn.norm() >= res.residual) break;  // stalled
    res.coords = next;
    f = fn;
    res.residual = f.norm();
    ++res.iterations;
  }
  res.converged = res.residual <= target;
  return res;
}

Mat slice_from_invariants(const SlodowySlice& slice, const Vec& inv) {
  NewtonResult r = invert_invariants(slice, inv);
  if (!r.converged) {
    std::ostringstream os;
    os << "slice_from_invariants: Newton did not converge; best residual "
       << r.residual << " after " << r.iterations << " iterations";
    throw std::runtime_error(os.str());
  }
  return slice.point(r.coords);
}

Mat orbit_representative(const SlodowySlice& slice, const Mat& x) {
  RegularityEvidence ev = is_regular(x, slice.basis(), slice.tolerances().rank);
  if (ev.verdict != Verdict::True) {
    std::ostringstream os;
    os << "orbit_representative: input not regular (kernel dim "
       << ev.kernel_dim << ", expected " << slice.rank() << ")";
    if (!ev.note.empty()) os << ": " << ev.note;
    throw std::domain_error(os.str());
  }
  return slice_from_invariants(slice, char_invariants(x));
}

SubmersionReport quotient_submersion_check(const SlodowySlice& slice,
                                           const std::vector<Mat>& samples) {
  const AlgebraBasis& basis = slice.basis();
  const int d = basis.size();
  const int r = slice.rank();
  const double h = slice.tolerances().jac_step;
  SubmersionReport rep;
  rep.expected_rank = r;
  rep.pass = true;
  for (const Mat& x : samples) {
    RegularityEvidence ev = is_regular(x, basis, slice.tolerances().rank);
    if (ev.verdict != Verdict::True)
      throw std::domain_error("quotient_submersion_check: sample not regular");
    Mat jac(r, d);
    for (int j = 0; j < d; ++j) {
      const Mat& e = basis.elements()[j];
      jac.col(j) =
          (char_invariants(x + h * e) - char_invariants(x - h * e)) / (2.0 * h);
    }
    Eigen::JacobiSVD<Mat> svd(jac);
    rep.singular_values.push_back(svd.singularValues());
    const auto& sv = rep.singular_values.back();
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
      if (sv(i) > 1e-7 * sv(0)) ++rank;
    if (rank != r) {
      rep.pass = false;
      rep.note = "rank deficiency at a regular sample";
    }
  }
  return rep;
}

}  // namespace slicelab
