#ifndef SLICELAB_MODEL_HPP
#define SLICELAB_MODEL_HPP

#include "slicelab/quotient.hpp"

#include <functional>
#include <memory>

// The model space G x S: right-translation action, moment map
// (g, x) -> -Ad_{g^-1}(x), a concrete symplectic form, fundamental and
// Hamiltonian vector fields, the induced slice-valued map, and the negation
// twist relating that map to slice projection.

namespace slicelab {

struct ModelPoint {
  Mat g;       // group factor, det 1
  Vec coords;  // slice coordinates, length rank(G)
};

struct ModelTangent {
  Mat a;  // left-trivialized group direction (tangent g*a)
  Vec b;  // slice direction
};

// Canonical left-trivialized cotangent form on G x g at base point xi:
//   omega((a1,b1),(a2,b2)) = <b2,a1> - <b1,a2> + <xi,[a1,a2]>
// with the Killing pairing.  Shared by the model (through an embedding) and
// the full-cotangent scenario (directly).
Complex trivialized_cotangent_form(const Mat& xi, const Mat& a1, const Mat& b1,
                                   const Mat& a2, const Mat& b2);

class ModelSpace {
 public:
  explicit ModelSpace(std::shared_ptr<const SlodowySlice> slice);

  const SlodowySlice& slice() const { return *slice_; }
  const GroupSpec& spec() const { return slice_->spec(); }
  int tangent_dim() const { return spec().dim_g() + spec().rank(); }

  Mat slice_matrix(const ModelPoint& p) const { return slice_->point(p.coords); }

  // g . (h, x) = (h g^-1, x)
  ModelPoint act(const Mat& g, const ModelPoint& p) const;

  // (g, x) -> -Ad_{g^-1}(x); lands in the regular locus
  Mat moment(const ModelPoint& p) const;

  // omega at p, via the embedding (g, x) -> (g, Ad_{g^-1} x) into the
  // left-trivialized cotangent model of G
  Complex symplectic(const ModelPoint& p, const ModelTangent& v,
                     const ModelTangent& w) const;

  // d/dt|_0 act(exp(t theta), p) = (-theta, 0)
  ModelTangent fundamental_field(const Mat& theta, const ModelPoint& p) const;

  // Solves omega_p(X_f, .) = df_p(.) in the chart basis; df by central
  // differences at the configured step.
  ModelTangent hamiltonian_field(
      const std::function<Complex(const ModelPoint&)>& f,
      const ModelPoint& p) const;

  // Unique slice point on the orbit of moment(p).
  Mat mu_bar(const ModelPoint& p) const;

  // Chart-basis tangent directions: dim(g) group units then rank slice units.
  ModelTangent tangent_unit(int k) const;
  ModelTangent tangent_from_chart(const Vec& chart) const;
  // Point moved along v by complex parameter t: (g exp(t a), coords + t b).
  ModelPoint perturb(const ModelPoint& p, const ModelTangent& v,
                     Complex t) const;

  // Gram matrix of omega on the chart basis.
  Mat symplectic_gram(const ModelPoint& p) const;

 private:
  std::shared_ptr<const SlodowySlice> slice_;
};

// Slice point of the orbit of -y, for y on the slice; an involution.
Mat negation_twist(const SlodowySlice& slice, const Mat& y);

}  // namespace slicelab

#endif
