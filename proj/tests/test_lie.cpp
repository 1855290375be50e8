#include <doctest.h>

#include "slicelab/lie.hpp"
#include "slicelab/quotient.hpp"
#include "slicelab/sampling.hpp"
#include "slicelab/slodowy.hpp"

#include <random>

using namespace slicelab;

namespace {
Mat sl2_xi() {
  Mat m = Mat::Zero(2, 2);
  m(0, 1) = 1.0;
  return m;
}
Mat sl2_eta() {
  Mat m = Mat::Zero(2, 2);
  m(1, 0) = 1.0;
  return m;
}
Mat sl2_h() {
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}
}  // namespace

TEST_CASE("bracket basics") {
  CHECK(((bracket(sl2_xi(), sl2_eta()) - sl2_h()).norm() == 0.0));

  std::mt19937_64 rng(11);
  for (int n : {2, 3, 4}) {
    GroupSpec spec(n);
    Mat x = random_traceless(spec, rng);
    CHECK(bracket(x, x).norm() == 0.0);
    CHECK(std::abs(bracket(x, random_traceless(spec, rng)).trace()) < 1e-12);
  }

  // principal triple relations, exact integer arithmetic
  for (int n : {2, 3, 4, 5}) {
    Sl2Triple t = principal_triple(GroupSpec(n));
    CHECK((bracket(t.xi, t.eta) - t.h).norm() == 0.0);
    CHECK((bracket(t.h, t.xi) - 2.0 * t.xi).norm() == 0.0);
    CHECK((bracket(t.h, t.eta) + 2.0 * t.eta).norm() == 0.0);
  }

  CHECK_THROWS_AS(bracket(Mat::Zero(2, 2), Mat::Zero(3, 3)),
                  std::invalid_argument);
}

TEST_CASE("Jacobi identity") {
  std::mt19937_64 rng(5);
  for (int n : {2, 3, 4}) {
    GroupSpec spec(n);
    for (int trial = 0; trial < 20; ++trial) {
      Mat a = random_traceless(spec, rng);
      Mat b = random_traceless(spec, rng);
      Mat c = random_traceless(spec, rng);
      Mat sum = bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) +
                bracket(c, bracket(a, b));
      CHECK(sum.norm() < 1e-10);
    }
  }
}

TEST_CASE("killing form values and properties") {
  GroupSpec spec(2);
  AlgebraBasis basis(spec);
  // oracle: ad_h has eigenvalues {2, 0, -2}, so tr(ad_h^2) = 8
  CHECK(std::abs(killing_form(sl2_h(), sl2_h()) - Complex(8.0)) < 1e-12);
  CHECK(std::abs(killing_form_oracle(sl2_h(), sl2_h(), basis) - Complex(8.0)) <
        1e-9);

  std::mt19937_64 rng(7);
  Mat x = random_traceless(spec, rng);
  CHECK(std::abs(killing_form(x, Mat::Zero(2, 2))) == 0.0);

  for (int n : {2, 3, 4}) {
    GroupSpec sp(n);
    AlgebraBasis b(sp);
    for (int trial = 0; trial < (n == 4 ? 20 : 100); ++trial) {
      Mat u = random_traceless(sp, rng);
      Mat v = random_traceless(sp, rng);
      Complex fast = killing_form(u, v);
      // symmetry
      CHECK(std::abs(fast - killing_form(v, u)) < 1e-9);
      // fast mode vs structure-constant trace
      CHECK(std::abs(fast - killing_form_oracle(u, v, b)) <
            1e-9 * (1.0 + std::abs(fast)));
      if (n <= 3) {
        // Ad-invariance
        Mat g = random_group(sp, rng);
        CHECK(std::abs(killing_form(adjoint_action(g, u),
                                    adjoint_action(g, v)) -
                       fast) < 1e-8 * (1.0 + std::abs(fast)));
      }
    }
  }
}

TEST_CASE("ad_matrix") {
  GroupSpec spec(2);
  AlgebraBasis basis(spec);
  CHECK(ad_matrix(Mat::Zero(2, 2), basis).norm() == 0.0);

  // eigenvalues of ad_h on sl_2 are {2, 0, -2}
  Eigen::ComplexEigenSolver<Mat> eig(ad_matrix(sl2_h(), basis));
  std::vector<double> re;
  for (int i = 0; i < 3; ++i) re.push_back(eig.eigenvalues()(i).real());
  std::sort(re.begin(), re.end());
  CHECK(std::abs(re[0] + 2.0) < 1e-10);
  CHECK(std::abs(re[1]) < 1e-10);
  CHECK(std::abs(re[2] - 2.0) < 1e-10);

  // ad of the coordinate property: M coords(b) = coords([a,b])
  std::mt19937_64 rng(3);
  Mat a = random_traceless(spec, rng), b = random_traceless(spec, rng);
  CHECK((ad_matrix(a, basis) * basis.coords(b) - basis.coords(bracket(a, b)))
            .norm() < 1e-10);

  // rank(ad_xi) = dim_g - rank for the principal nilpotent
  for (int n : {2, 3, 4, 5}) {
    GroupSpec sp(n);
    AlgebraBasis bb(sp);
    Sl2Triple t = principal_triple(sp);
    Eigen::JacobiSVD<Mat> svd(ad_matrix(t.xi, bb));
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()(i) > 1e-9 * svd.singularValues()(0)) ++rank;
    CHECK(rank == sp.dim_g() - sp.rank());
  }
}

TEST_CASE("adjoint action") {
  GroupSpec spec(3);
  std::mt19937_64 rng(17);
  Mat x = random_traceless(spec, rng);
  CHECK((adjoint_action(Mat::Identity(3, 3), x) - x).norm() == 0.0);

  for (int trial = 0; trial < 100; ++trial) {
    Mat g = random_group(spec, rng);
    Mat y = random_traceless(spec, rng);
    CHECK((adjoint_action(g, adjoint_action(g.inverse(), y)) - y).norm() <
          1e-9);
    // conjugation invariance of the characteristic polynomial
    CHECK((char_invariants(adjoint_action(g, y)) - char_invariants(y)).norm() <
          1e-8);
    CHECK(std::abs(adjoint_action(g, y).trace() - y.trace()) < 1e-9);
  }
}

TEST_CASE("regularity testing") {
  for (int n : {2, 3, 4, 5}) {
    GroupSpec spec(n);
    AlgebraBasis basis(spec);
    Sl2Triple t = principal_triple(spec);
    CHECK(is_regular(t.xi, basis).verdict == Verdict::True);
    CHECK(is_regular(t.eta, basis).verdict == Verdict::True);
    CHECK(is_regular(Mat::Zero(n, n), basis).verdict == Verdict::False);
  }

  // derogatory diagonal in sl_3: kernel of ad has dimension 4
  GroupSpec spec(3);
  AlgebraBasis basis(spec);
  Mat d = Mat::Zero(3, 3);
  d(0, 0) = 1.0;
  d(1, 1) = 1.0;
  d(2, 2) = -2.0;
  RegularityEvidence ev = is_regular(d, basis);
  CHECK(ev.verdict == Verdict::False);
  CHECK(ev.kernel_dim == 4);

  // impossible tolerance is refused, not misclassified
  CHECK(is_regular(d, basis, 1e-20).verdict == Verdict::Indeterminate);

  // conjugation invariance of the verdict
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    Mat x = random_traceless(spec, rng);
    Mat g = random_group(spec, rng);
    RegularityEvidence a = is_regular(x, basis);
    RegularityEvidence b = is_regular(adjoint_action(g, x), basis);
    if (a.verdict != Verdict::Indeterminate &&
        b.verdict != Verdict::Indeterminate)
      CHECK(a.verdict == b.verdict);
  }
}

TEST_CASE("orbit dimension") {
  GroupSpec s2(2);
  AlgebraBasis b2(s2);
  CHECK(orbit_dimension(sl2_h(), b2) == 2);
  CHECK(orbit_dimension(Mat::Zero(2, 2), b2) == 0);

  GroupSpec s3(3);
  SlodowySlice slice(s3);
  std::mt19937_64 rng(29);
  Vec c = random_coords(2, rng);
  CHECK(orbit_dimension(slice.point(c), slice.basis()) == 6);
}

TEST_CASE("group exponential") {
  CHECK((group_exp(Mat::Zero(3, 3)) - Mat::Identity(3, 3)).norm() == 0.0);

  // order-2 nilpotent: exp(t xi) = I + t xi
  const double t = 0.37;
  CHECK((group_exp(t * sl2_xi()) - (Mat::Identity(2, 2) + t * sl2_xi())).norm() <
        1e-15);

  GroupSpec spec(4);
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    Mat a = random_traceless(spec, rng);
    CHECK(std::abs(group_exp(a).determinant() - Complex(1.0)) < 1e-10);
  }
}

TEST_CASE("algebra basis") {
  for (int n : {2, 3, 4}) {
    GroupSpec spec(n);
    AlgebraBasis basis(spec);
    CHECK(basis.size() == spec.dim_g());
    Eigen::JacobiSVD<Mat> svd(basis.killing_gram());
    CHECK(svd.singularValues()(spec.dim_g() - 1) > 1e-9);

    std::mt19937_64 rng(37);
    Mat x = random_traceless(spec, rng);
    CHECK((basis.from_coords(basis.coords(x)) - x).norm() < 1e-12);
  }
  CHECK_THROWS_AS(GroupSpec(1), std::invalid_argument);
}
