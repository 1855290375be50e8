#ifndef SLICELAB_SAMPLING_HPP
#define SLICELAB_SAMPLING_HPP

#include "slicelab/lie.hpp"

#include <cstdint>
#include <random>

// Seeded sample generators.  Randomness is never internal to the math
// modules; callers draw here and pass the results in.

namespace slicelab {

inline Mat random_traceless(const GroupSpec& spec, std::mt19937_64& rng,
                            double scale = 1.0) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat m(spec.n, spec.n);
  for (int i = 0; i < spec.n; ++i)
    for (int j = 0; j < spec.n; ++j)
      m(i, j) = scale * Complex(gauss(rng), gauss(rng));
  m -= (m.trace() / static_cast<double>(spec.n)) * Mat::Identity(spec.n, spec.n);
  return m;
}

// exp of a modest traceless element: unimodular and well conditioned
inline Mat random_group(const GroupSpec& spec, std::mt19937_64& rng,
                        double scale = 0.3) {
  return group_exp(random_traceless(spec, rng, scale));
}

inline Vec random_coords(int len, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec v(len);
  for (int i = 0; i < len; ++i) v(i) = scale * Complex(gauss(rng), gauss(rng));
  return v;
}

}  // namespace slicelab

#endif
