#ifndef SLICELAB_QUOTIENT_HPP
#define SLICELAB_QUOTIENT_HPP

#include "slicelab/slodowy.hpp"

// Chevalley invariants (characteristic-polynomial coefficients) as the
// adjoint quotient, plus the slice's section of it realized both ways:
// invariants of a point, and the unique slice point with given invariants.

namespace slicelab {

// Coefficients (a_2, ..., a_n) of char(lambda) = lambda^n + a_2 lambda^{n-2}
// + ... + a_n, computed by the Faddeev-LeVerrier recurrence.  Length n-1.
Vec char_invariants(const Mat& x);

struct NewtonResult {
  Vec coords;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Newton iteration (damped, zero initial guess) on
// coords -> char_invariants(slice.point(coords)).
NewtonResult invert_invariants(const SlodowySlice& slice, const Vec& inv,
                               int max_iterations = 100);

// The unique slice point with the given invariants; throws on
// non-convergence with the best residual in the message.
Mat slice_from_invariants(const SlodowySlice& slice, const Vec& inv);

// Slice point of the adjoint orbit through a regular x; refuses non-regular
// input since invariants do not separate orbits off the regular locus.
Mat orbit_representative(const SlodowySlice& slice, const Mat& x);

struct SubmersionReport {
  bool pass = false;
  std::vector<Eigen::VectorXd> singular_values;  // per sample, descending
  int expected_rank = 0;
  std::string note;
};

// Finite-difference Jacobian of char_invariants over the dim(g) basis
// directions must have numerical rank = rank(G) at every regular sample.
SubmersionReport quotient_submersion_check(const SlodowySlice& slice,
                                           const std::vector<Mat>& samples);

}  // namespace slicelab

#endif
