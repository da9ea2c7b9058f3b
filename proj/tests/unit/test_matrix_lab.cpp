#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/SVD>
#include <gtest/gtest.h>

#include "schatten/errors.hpp"
#include "schatten/matrix_lab.hpp"

using namespace schatten;

namespace {

Eigen::VectorXd eigen_singular_values(const ComplexMatrix& t) {
  Eigen::JacobiSVD<ComplexMatrix> s(t);
  return s.singularValues();
}

}  // namespace

TEST(Svd, Examples) {
  RealMatrix d(2, 2);
  d << 3, 0, 0, -4;
  const SvdResult r = svd(d);
  EXPECT_NEAR(r.singular_values[0], 4.0, 1e-14);
  EXPECT_NEAR(r.singular_values[1], 3.0, 1e-14);

  ComplexMatrix c(2, 2);
  c << std::complex<double>(0, 1), 0, 0, std::complex<double>(0, 2);
  EXPECT_NEAR(svd(c).singular_values[0], 2.0, 1e-14);

  QuaternionMatrix q(2, 2);
  q << Quaternion::j(), Quaternion(0.0), Quaternion(0.0), Quaternion::k() * 3.0;
  const Eigen::VectorXd sq = svd(q).singular_values;
  ASSERT_EQ(sq.size(), 2);
  EXPECT_NEAR(sq[0], 3.0, 1e-14);
  EXPECT_NEAR(sq[1], 1.0, 1e-14);

  EXPECT_THROW(svd(RealMatrix(2, 3)), DimensionMismatch);

  RealMatrix swap(2, 2);
  swap << 0, 1, 1, 0;
  EXPECT_NEAR(svd(swap).singular_values[1], 1.0, 1e-14);
  QuaternionMatrix one(1, 1);
  one << Quaternion::i();
  EXPECT_NEAR(svd(one).singular_values[0], 1.0, 1e-14);
}

TEST(EntryIdentities, Examples) {
  RealMatrix d(2, 2);
  d << 1, 0, 0, 2;
  EntryIdentityTerms e = entry_identity_terms<double>(d);
  EXPECT_NEAR(e.lhs4, 17.0, 1e-12);
  EXPECT_NEAR(e.sum_abs4, 17.0, 1e-12);
  EXPECT_EQ(e.row_col_cross, 0.0);
  EXPECT_EQ(e.quartic_cross, 0.0);

  RealMatrix ones = RealMatrix::Ones(2, 2);
  e = entry_identity_terms<double>(ones);
  EXPECT_NEAR(e.lhs4, 16.0, 1e-12);
  EXPECT_NEAR(e.sum_abs4, 4.0, 1e-12);
  EXPECT_NEAR(e.row_col_cross, 8.0, 1e-12);
  EXPECT_NEAR(e.quartic_cross, 4.0, 1e-12);
  EXPECT_NEAR(e.lhs22, 0.0, 1e-12);
  EXPECT_NEAR(e.minors, 0.0, 1e-12);
}

TEST(SymmetryTransform, Examples) {
  RealMatrix d(2, 2);
  d << 1, 0, 0, 2;
  const RealMatrix r = symmetry_transform<double>(d, LeftRotation{std::numbers::pi / 2});
  EXPECT_NEAR(std::abs(r(0, 1)), 2.0, 1e-15);
  EXPECT_NEAR(std::abs(r(1, 0)), 1.0, 1e-15);
  EXPECT_NEAR(r(0, 0), 0.0, 1e-15);
  const Eigen::VectorXd s = svd(r).singular_values;
  EXPECT_NEAR(s[0], 2.0, 1e-14);
  EXPECT_NEAR(s[1], 1.0, 1e-14);
  const RealMatrix c = symmetry_transform<double>(d, RightPermutation{0, 1});
  EXPECT_EQ(c(0, 1), 1.0);
  EXPECT_EQ(c(1, 0), 2.0);
}

TEST(Svd, MatchesEigenJacobi) {
  std::mt19937_64 rng(21);
  for (int n = 1; n <= 6; ++n)
    for (int t = 0; t < 20; ++t) {
      const RealMatrix a = gaussian_matrix<double>(n, rng);
      const Eigen::VectorXd ref = Eigen::JacobiSVD<RealMatrix>(a).singularValues();
      EXPECT_LE((svd(a).singular_values - ref).norm(), 1e-11 * ref[0]);

      const ComplexMatrix z = gaussian_matrix<std::complex<double>>(n, rng);
      const Eigen::VectorXd zref = eigen_singular_values(z);
      EXPECT_LE((svd(z).singular_values - zref).norm(), 1e-11 * zref[0]);

      // Each quaternion singular value appears twice in the complex adjoint.
      const QuaternionMatrix h = gaussian_matrix<Quaternion>(n, rng);
      const Eigen::VectorXd href = eigen_singular_values(complex_adjoint(h));
      const Eigen::VectorXd hs = svd(h).singular_values;
      ASSERT_EQ(hs.size(), n);
      for (int i = 0; i < n; ++i) {
        EXPECT_NEAR(hs[i], href[2 * i], 1e-11 * href[0]);
        EXPECT_NEAR(hs[i], href[2 * i + 1], 1e-11 * href[0]);
      }
    }
}

TEST(SchattenNorm, Examples) {
  const Eigen::Vector2d s(4, 3);
  EXPECT_DOUBLE_EQ(schatten_norm(s, 2.0), 5.0);
  EXPECT_DOUBLE_EQ(schatten_norm(s, 1.0), 7.0);
  EXPECT_DOUBLE_EQ(schatten_norm(s, Exponent::infinity()), 4.0);
  const RealMatrix eye = RealMatrix::Identity(3, 3);
  EXPECT_NEAR(schatten_norm(eye, 1.0), 3.0, 1e-14);
  EXPECT_NEAR(schatten_norm(eye, Exponent::infinity()), 1.0, 1e-15);
  std::mt19937_64 rng(2);
  const RealMatrix a = gaussian_matrix<double>(5, rng);
  EXPECT_NEAR(schatten_norm(a, 2.0), std::sqrt(frobenius_sq(a)), 1e-12 * std::sqrt(frobenius_sq(a)));
}

TEST(EntryIdentities, HoldOnGaussianMatrices) {
  std::mt19937_64 rng(31);
  for (Field f : {Field::Real, Field::Complex, Field::Quaternion})
    for (int n = 1; n <= 5; ++n)
      for (int t = 0; t < 50; ++t) {
        const MatrixSample m = gaussian_matrix(f, n, rng);
        const EntryIdentityTerms e = entry_identity_terms(m);
        EXPECT_NEAR(e.lhs4, e.rhs4(), 1e-10 * e.scale);
        EXPECT_NEAR(e.lhs22, e.rhs22(), 1e-10 * e.scale);
        EXPECT_LE(e.quartic_cross_imag, 1e-10 * e.scale);
        if (f != Field::Quaternion) EXPECT_NEAR(e.lhs22, e.minors, 1e-10 * e.scale);
      }
}

TEST(SymmetryTransform, PreservesSingularValues) {
  std::mt19937_64 rng(41);
  const double pi = std::numbers::pi;
  const Quaternion unit = Quaternion(1, 1, 1, 1) * 0.5;
  const std::vector<Transform> common = {LeftPermutation{0, 2}, RightPermutation{1, 2}, LeftRotation{0.3},
                                         RightRotation{pi / 5}, ConjugateTranspose{}};
  for (Field f : {Field::Real, Field::Complex, Field::Quaternion}) {
    std::vector<Transform> all = common;
    if (f != Field::Quaternion) all.push_back(Transpose{});
    if (f == Field::Real) all.push_back(UnitScalar{true, 1, Quaternion(-1.0)});
    if (f == Field::Complex) all.push_back(UnitScalar{false, 2, Quaternion(0.6, 0.8, 0, 0)});
    if (f == Field::Quaternion) {
      all.push_back(UnitScalar{true, 0, unit});
      all.push_back(UnitScalar{false, 1, unit});
    }
    for (int t = 0; t < 20; ++t) {
      const MatrixSample m = gaussian_matrix(f, 4, rng);
      const Eigen::VectorXd s = svd(m).singular_values;
      for (const Transform& tr : all) {
        const Eigen::VectorXd s2 = svd(symmetry_transform(m, tr)).singular_values;
        EXPECT_LE((s - s2).norm(), 1e-11 * s[0]) << "field " << to_string(f) << " transform " << tr.index();
      }
    }
  }
}

TEST(SymmetryTransform, RejectsUnitOutsideField) {
  std::mt19937_64 rng(1);
  const MatrixSample m = gaussian_matrix(Field::Real, 3, rng);
  EXPECT_THROW(symmetry_transform(m, UnitScalar{true, 0, Quaternion::i()}), SpecificationError);
  EXPECT_THROW(symmetry_transform(m, LeftPermutation{0, 5}), DimensionMismatch);
}

TEST(AntisymHermitian, PairedSpectrum) {
  std::mt19937_64 rng(5);
  for (int n : {2, 3, 5, 6}) {
    const ComplexMatrix t = gaussian_antisym_hermitian(n, rng);
    EXPECT_LE((t - conjugate_transpose(t)).norm(), 1e-14);
    EXPECT_LE((t + t.transpose()).norm(), 1e-14);
    const Eigen::VectorXd s = svd(t).singular_values;
    for (int i = 0; i + 1 < 2 * (n / 2); i += 2) EXPECT_NEAR(s[i], s[i + 1], 1e-10 * s[0]);
    if (n % 2 == 1) EXPECT_NEAR(s[n - 1], 0.0, 1e-10 * s[0]);
  }
}
