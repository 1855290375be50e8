#ifndef SLICELAB_SLODOWY_HPP
#define SLICELAB_SLODOWY_HPP

#include "slicelab/lie.hpp"

#include <memory>

// Principal sl2-triples and the regular slice xi + ker(ad_eta), with
// membership testing and coordinate parametrization.

namespace slicelab {

struct Sl2Triple {
  Mat xi, h, eta;
};

// The standard principal triple: h = diag(n-1, n-3, ..., 1-n),
// xi = sum_i E_{i,i+1}, eta = sum_i i(n-i) E_{i+1,i}.  Integer matrices;
// the bracket relations hold exactly.
Sl2Triple principal_triple(const GroupSpec& spec);

// Null-space basis of ad_eta, re-orthonormalized under the Frobenius inner
// product; exactly rank(G) elements.  Throws (with singular-value
// diagnostics) if the numerical null space has the wrong dimension.
std::vector<Mat> kernel_ad_eta(const Sl2Triple& triple,
                               const AlgebraBasis& basis,
                               double rank_tol = 1e-9);

class SlodowySlice {
 public:
  explicit SlodowySlice(const GroupSpec& spec, Tolerances tol = {});

  const GroupSpec& spec() const { return spec_; }
  const Tolerances& tolerances() const { return tol_; }
  const Sl2Triple& triple() const { return triple_; }
  const AlgebraBasis& basis() const { return basis_; }
  const std::vector<Mat>& kernel_basis() const { return kernel_basis_; }
  int rank() const { return spec_.rank(); }

  // xi + sum_i coords_i * kernel_basis_i
  Mat point(const Vec& coords) const;

  struct Membership {
    bool member = false;
    Vec coords;
    double residual = 0.0;
  };
  // Least-squares solve of x - xi against the kernel basis.
  Membership membership(const Mat& x) const;

 private:
  GroupSpec spec_;
  Tolerances tol_;
  AlgebraBasis basis_;
  Sl2Triple triple_;
  std::vector<Mat> kernel_basis_;
  Mat kernel_vec_;  // n^2 x rank, Frobenius-orthonormal columns
};

}  // namespace slicelab

#endif
