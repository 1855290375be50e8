#ifndef SLICELAB_CONJUGATION_HPP
#define SLICELAB_CONJUGATION_HPP

#include "slicelab/quotient.hpp"

#include <cstdint>
#include <optional>

// Constructive conjugation: cyclic vectors, conjugating a regular element
// into the slice via intertwiner (Sylvester) solves, and orbit transporters.

namespace slicelab {

struct ConjugationWitness {
  Mat p;  // det(p) = 1, p * source * p^-1 = target
  Mat source, target;
  double residual = 0.0;

  // Validates the residual and determinant invariants; throws on violation.
  static ConjugationWitness make(Mat p, Mat source, Mat target,
                                 double residual_tol = 1e-7,
                                 double det_tol = 1e-9);
};

// A vector whose Krylov matrix [v, xv, ..., x^{n-1}v] has condition-checked
// full rank.  Seeded random draws with a deterministic fallback sweep of
// standard basis vectors and their partial sums; throws on exhaustion.
Vec cyclic_vector(const Mat& x, std::uint64_t seed, double rank_tol = 1e-9);

// Conjugates regular x onto its slice representative y: solves the
// intertwiner equation M x - y M = 0, picks an invertible solution, and
// rescales by the principal n-th root of 1/det(M) to land in SL_n.
ConjugationWitness conjugate_into_slice(const SlodowySlice& slice, const Mat& x,
                                        std::uint64_t seed = 0);

struct TransportResult {
  std::optional<ConjugationWitness> witness;
  double invariant_gap = 0.0;  // set when no transport exists
};

// Group element carrying x1 to x2 when their invariants agree within
// invariant_tol; otherwise reports the gap.
TransportResult transporter(const SlodowySlice& slice, const Mat& x1,
                            const Mat& x2, std::uint64_t seed = 0,
                            double invariant_tol = 1e-6);

}  // namespace slicelab

#endif
