#include <random>

#include <gtest/gtest.h>

#include "schatten/core_types.hpp"
#include "schatten/errors.hpp"
#include "schatten/quaternion.hpp"

using namespace schatten;

namespace {

Quaternion random_quaternion(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  return {g(rng), g(rng), g(rng), g(rng)};
}

double qdist(const Quaternion& a, const Quaternion& b) { return abs(a - b); }

}  // namespace

TEST(Quaternion, DefiningRelations) {
  EXPECT_EQ(Quaternion::i() * Quaternion::j(), Quaternion::k());
  EXPECT_EQ(Quaternion::j() * Quaternion::i(), -Quaternion::k());
  EXPECT_EQ(Quaternion::i() * Quaternion::i(), Quaternion(-1.0));
  EXPECT_EQ(conj(Quaternion(1, 1, 0, 0)), Quaternion(1, -1, 0, 0));
  EXPECT_DOUBLE_EQ(abs(Quaternion(1, 1, 1, 1)), 2.0);
}

TEST(Quaternion, AlgebraOnRandomTriples) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 1000; ++t) {
    const Quaternion a = random_quaternion(rng), b = random_quaternion(rng), c = random_quaternion(rng);
    const double scale = abs(a) * abs(b) * abs(c);
    EXPECT_LE(qdist((a * b) * c, a * (b * c)), 1e-12 * scale);
    EXPECT_LE(qdist(a * (b + c), a * b + a * c), 1e-12 * abs(a) * (abs(b) + abs(c)));
    EXPECT_LE(qdist(conj(a * b), conj(b) * conj(a)), 1e-12 * abs(a) * abs(b));
    EXPECT_NEAR(abs(a * b), abs(a) * abs(b), 1e-12 * abs(a) * abs(b));
    EXPECT_LE(qdist(conj(a) * a, Quaternion(abs2(a))), 1e-12 * abs2(a));
  }
}

TEST(Exponent, InfinityIsExact) {
  const Exponent inf = Exponent::infinity();
  EXPECT_TRUE(inf.is_infinite());
  EXPECT_EQ(inf.to_string(), "inf");
  EXPECT_EQ(Exponent::parse("inf"), inf);
  EXPECT_FALSE(Exponent(1e300) == inf);
  EXPECT_EQ(Exponent::parse("2.5").value(), 2.5);
  EXPECT_THROW(Exponent(0.5), DomainError);
  EXPECT_THROW(Exponent::parse("abc"), SpecificationError);
}

TEST(EnsembleParams, TotalDegree) {
  EXPECT_EQ((EnsembleParams{2, 2, 1, 2}).total_degree(), 8);
  EXPECT_EQ((EnsembleParams{1, 1, 0, 2}).total_degree(), 3);
  EXPECT_EQ((EnsembleParams{2, 2, 1, 2}).homogeneity_degree(), 6);
  EXPECT_EQ(parse_ensemble("2,4,3", 3), (EnsembleParams{2, 4, 3, 3}));
  EXPECT_THROW((EnsembleParams{0, 1, 0, 2}).validate(), SpecificationError);
  EXPECT_THROW(parse_ensemble("2,1", 2), SpecificationError);
}

TEST(EnsembleOf, FactTable) {
  const int n = 5;
  auto full_c = ensemble_of({Field::Complex, Subspace::Full, n, 2.0});
  EXPECT_EQ(full_c.params, (EnsembleParams{2, 2, 1, n}));
  EXPECT_EQ(full_c.params.total_degree(), 2 * n * n);

  auto sa_r = ensemble_of({Field::Real, Subspace::SelfAdjoint, n, 2.0});
  EXPECT_EQ(sa_r.params, (EnsembleParams{1, 1, 0, n}));
  EXPECT_EQ(sa_r.params.total_degree(), n * (n + 1) / 2);
  EXPECT_TRUE(sa_r.signed_eigenvalues);

  auto anti = ensemble_of({Field::Complex, Subspace::AntiSymHermitian, 5, 2.0});
  EXPECT_EQ(anti.params, (EnsembleParams{2, 2, 2, 2}));
  EXPECT_EQ(anti.multiplicity, 2);
  EXPECT_TRUE(anti.appended_zero);

  auto cs = ensemble_of({Field::Complex, Subspace::ComplexSymmetric, n, 2.0});
  EXPECT_EQ(cs.params, (EnsembleParams{2, 1, 1, n}));
}

TEST(EnsembleOf, IllegalPairsRejected) {
  EXPECT_THROW(ensemble_of({Field::Real, Subspace::AntiSymHermitian, 3, 2.0}), SpecificationError);
  EXPECT_THROW(ensemble_of({Field::Quaternion, Subspace::ComplexSymmetric, 3, 2.0}), SpecificationError);
}

TEST(EnsembleOf, GasDegreeEqualsDimension) {
  for (int n = 1; n <= 32; ++n) {
    for (Field f : {Field::Real, Field::Complex, Field::Quaternion}) {
      const SchattenSpec full{f, Subspace::Full, n, 2.0};
      EXPECT_EQ(ensemble_of(full).params.total_degree(), beta(f) * n * n);
      EXPECT_EQ(full.real_dimension(), beta(f) * n * n);
      const SchattenSpec sa{f, Subspace::SelfAdjoint, n, 2.0};
      EXPECT_EQ(ensemble_of(sa).params.total_degree(), sa.real_dimension());
    }
    const SchattenSpec cs{Field::Complex, Subspace::ComplexSymmetric, n, 2.0};
    EXPECT_EQ(ensemble_of(cs).params.total_degree(), cs.real_dimension());
    if (n >= 2) {
      const SchattenSpec anti{Field::Complex, Subspace::AntiSymHermitian, n, 2.0};
      EXPECT_EQ(ensemble_of(anti).params.total_degree(), anti.real_dimension());
      EXPECT_EQ(anti.real_dimension(), n * (n - 1) / 2);
    }
  }
}
