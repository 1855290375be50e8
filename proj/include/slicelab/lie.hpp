#ifndef SLICELAB_LIE_HPP
#define SLICELAB_LIE_HPP

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <vector>

// Arithmetic of sl_n and SL_n: brackets, adjoint representations, the
// Killing form, regularity testing and tangent-space linear algebra under
// explicit tolerances.  Everything here is a pure function of its inputs.

namespace slicelab {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

struct Tolerances {
  double trace = 1e-9;       // tracelessness of algebra elements
  double det = 1e-9;         // |det - 1| for group elements
  double rank = 1e-9;        // relative singular-value cutoff for numerical rank
  double membership = 1e-8;  // Frobenius residual for slice membership
  double fd_step = 1e-5;     // central-difference step for geometric checks
  double jac_step = 1e-6;    // central-difference step for invariant Jacobians
  double newton_residual = 1e-10;
};

struct GroupSpec {
  int n;
  explicit GroupSpec(int n_) : n(n_) {
    if (n < 2) throw std::invalid_argument("GroupSpec: n must be >= 2");
  }
  int dim_g() const { return n * n - 1; }
  int rank() const { return n - 1; }
};

inline Vec vec_of(const Mat& m) {
  return Eigen::Map<const Vec>(m.data(), m.size());
}
inline Mat mat_of(const Vec& v, int n) {
  return Eigen::Map<const Mat>(v.data(), n, n);
}

bool is_traceless(const Mat& x, double tol = 1e-9);
bool is_unimodular(const Mat& g, double tol = 1e-9);

// [a,b] = ab - ba
Mat bracket(const Mat& a, const Mat& b);

// Ad_g(x) = g x g^{-1}
Mat adjoint_action(const Mat& g, const Mat& x);

// Killing form of sl_n, closed form 2n tr(ab).
Complex killing_form(const Mat& a, const Mat& b);

// Fixed basis of sl_n: E_ij for i != j in row-major (i,j) order, followed by
// E_ii - E_{i+1,i+1} for i = 0..n-2.  Coordinates are least-squares solves
// against this basis, so any traceless matrix is exactly representable.
class AlgebraBasis {
 public:
  explicit AlgebraBasis(const GroupSpec& spec, double rank_tol = 1e-9);

  const GroupSpec& spec() const { return spec_; }
  const std::vector<Mat>& elements() const { return elems_; }
  int size() const { return static_cast<int>(elems_.size()); }

  Vec coords(const Mat& x) const;
  Mat from_coords(const Vec& c) const;

  // Gram matrix of the Killing form on this basis.
  const Mat& killing_gram() const { return killing_gram_; }

 private:
  GroupSpec spec_;
  std::vector<Mat> elems_;
  Mat vec_basis_;  // n^2 x dim_g, columns vec(e_k)
  Eigen::ColPivHouseholderQR<Mat> qr_;
  Mat killing_gram_;
};

// Matrix of ad_a on the given basis: M coords(b) = coords([a,b]).
Mat ad_matrix(const Mat& a, const AlgebraBasis& basis);

// Killing form computed as tr(ad_a ad_b); reference route for tests.
Complex killing_form_oracle(const Mat& a, const Mat& b, const AlgebraBasis& basis);

enum class Verdict { True, False, Indeterminate };

struct RegularityEvidence {
  Verdict verdict = Verdict::Indeterminate;
  int kernel_dim = -1;
  Eigen::VectorXd singular_values;  // of ad_x, descending
  std::string note;
  bool regular() const { return verdict == Verdict::True; }
};

// x is regular iff dim ker(ad_x) equals rank(G).  Kernel dimension is the
// count of singular values <= tol * sigma_max; any singular value inside
// (tol, 10*tol) * sigma_max yields an indeterminate verdict instead of a
// boolean.  Tolerances below double resolution are refused the same way.
RegularityEvidence is_regular(const Mat& x, const AlgebraBasis& basis,
                              double tol = 1e-9);

// dim O(x) = dim(g) - dim ker(ad_x); throws on indeterminate rank.
int orbit_dimension(const Mat& x, const AlgebraBasis& basis, double tol = 1e-9);

// Matrix exponential; det(exp a) = exp(tr a).
Mat group_exp(const Mat& a);

}  // namespace slicelab

#endif
