#include "slicelab/conjugation.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace slicelab {

ConjugationWitness ConjugationWitness::make(Mat p, Mat source, Mat target,
                                            double residual_tol,
                                            double det_tol) {
  ConjugationWitness w{std::move(p), std::move(source), std::move(target), 0.0};
  w.residual = (w.p * w.source * w.p.inverse() - w.target).norm();
  if (w.residual > residual_tol) {
    std::ostringstream os;
    os << "ConjugationWitness: residual " << w.residual << " exceeds "
       << residual_tol;
    throw std::runtime_error(os.str());
  }
  const double det_gap = std::abs(w.p.determinant() - Complex(1.0));
  if (det_gap > det_tol) {
    std::ostringstream os;
    os << "ConjugationWitness: |det - 1| = " << det_gap << " exceeds "
       << det_tol;
    throw std::runtime_error(os.str());
  }
  return w;
}

static bool krylov_full_rank(const Mat& x, const Vec& v, double rank_tol) {
  const int n = static_cast<int>(x.rows());
  Mat krylov(n, n);
  Vec w = v;
  for (int k = 0; k < n; ++k) {
    krylov.col(k) = w;
    w = x * w;
  }
  Eigen::JacobiSVD<Mat> svd(krylov);
  const auto& sv = svd.singularValues();
  return sv(0) > 0.0 && sv(n - 1) > rank_tol * sv(0);
}

Vec cyclic_vector(const Mat& x, std::uint64_t seed, double rank_tol) {
  const int n = static_cast<int>(x.rows());
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int attempt = 0; attempt < 8; ++attempt) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = Complex(gauss(rng), gauss(rng));
    if (krylov_full_rank(x, v, rank_tol)) return v;
  }
  // deterministic sweep: standard basis vectors, then their partial sums
  for (int i = 0; i < n; ++i) {
    Vec v = Vec::Zero(n);
    v(i) = 1.0;
    if (krylov_full_rank(x, v, rank_tol)) return v;
  }
  Vec v = Vec::Zero(n);
  for (int i = 0; i < n; ++i) {
    v(i) = 1.0;
    if (krylov_full_rank(x, v, rank_tol)) return v;
  }
  throw std::runtime_error(
      "cyclic_vector: exhausted candidates; input is numerically derogatory");
}

// Null-space basis of M -> M x - y M as columns of an n^2 x k matrix.
static Mat intertwiner_null_space(const Mat& x, const Mat& y, double rank_tol) {
  const int n = static_cast<int>(x.rows());
  const Mat id = Mat::Identity(n, n);
  // vec(M x) = (x^T kron I) vec(M), vec(y M) = (I kron y) vec(M)
  Mat op = Mat::Zero(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      op.block(j * n, i * n, n, n) += x(i, j) * id;  // x^T kron I
      if (i == j) op.block(i * n, j * n, n, n) -= y;  // I kron y
    }
  Eigen::JacobiSVD<Mat> svd(op, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  int kernel = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) <= rank_tol * smax) ++kernel;
  if (kernel == 0)
    throw std::runtime_error(
        "conjugate_into_slice: intertwiner equation has no numerical null "
        "space (inputs not similar at tolerance)");
  Mat basis(n * n, kernel);
  for (int k = 0; k < kernel; ++k)
    basis.col(k) = svd.matrixV().col(n * n - kernel + k);
  return basis;
}

static std::optional<Mat> pick_invertible(const Mat& null_basis, int n,
                                          std::uint64_t seed) {
  const int k = static_cast<int>(null_basis.cols());
  auto usable = [&](const Vec& comb) -> std::optional<Mat> {
    Mat m = mat_of(null_basis * comb, n);
    Eigen::JacobiSVD<Mat> svd(m);
    const auto& sv = svd.singularValues();
    if (sv(0) > 0.0 && sv(n - 1) > 1e-6 * sv(0)) return m;
    return std::nullopt;
  };
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int attempt = 0; attempt < 8; ++attempt) {
    Vec comb(k);
    for (int i = 0; i < k; ++i) comb(i) = Complex(gauss(rng), gauss(rng));
    if (auto m = usable(comb)) return m;
  }
  for (int i = 0; i < k; ++i) {
    Vec comb = Vec::Zero(k);
    comb(i) = 1.0;
    if (auto m = usable(comb)) return m;
  }
  Vec comb = Vec::Zero(k);
  for (int i = 0; i < k; ++i) {
    comb(i) = 1.0;
    if (auto m = usable(comb)) return m;
  }
  return std::nullopt;
}

static Mat normalize_det(const Mat& m) {
  const int n = static_cast<int>(m.rows());
  const Complex det = m.determinant();
  if (det == Complex(0.0))
    throw std::runtime_error("normalize_det: singular matrix");
  // principal n-th root: argument in (-pi, pi]
  const Complex scale = std::pow(1.0 / det, 1.0 / static_cast<double>(n));
  return scale * m;
}

// Shared core: conjugate x onto an explicit target with the same invariants.
static ConjugationWitness conjugate_to(const SlodowySlice& slice, const Mat& x,
                                       const Mat& target, std::uint64_t seed) {
  const int n = slice.spec().n;
  Mat null_basis = intertwiner_null_space(x, target, 1e-8);
  auto m = pick_invertible(null_basis, n, seed);
  if (!m) {
    Eigen::JacobiSVD<Mat> svd(null_basis);
    std::ostringstream os;
    os << "conjugate_into_slice: no invertible intertwiner found "
       << "(null space dimension " << null_basis.cols()
       << ", basis condition data:";
    for (int i = 0; i < svd.singularValues().size(); ++i)
      os << " " << svd.singularValues()(i);
    os << ")";
    throw std::runtime_error(os.str());
  }
  return ConjugationWitness::make(normalize_det(*m), x, target);
}

ConjugationWitness conjugate_into_slice(const SlodowySlice& slice, const Mat& x,
                                        std::uint64_t seed) {
  return conjugate_to(slice, x, orbit_representative(slice, x), seed);
}

TransportResult transporter(const SlodowySlice& slice, const Mat& x1,
                            const Mat& x2, std::uint64_t seed,
                            double invariant_tol) {
  TransportResult res;
  res.invariant_gap = (char_invariants(x1) - char_invariants(x2)).norm();
  if (res.invariant_gap > invariant_tol) return res;
  const Mat y = orbit_representative(slice, x1);
  ConjugationWitness w1 = conjugate_to(slice, x1, y, seed);
  ConjugationWitness w2 = conjugate_to(slice, x2, y, seed + 1);
  Mat p = normalize_det(w2.p.inverse() * w1.p);
  res.witness = ConjugationWitness::make(p, x1, x2, 2e-6);
  return res;
}

}  // namespace slicelab
