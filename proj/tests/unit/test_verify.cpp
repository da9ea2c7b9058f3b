#include <cmath>

#include <gtest/gtest.h>

#include "schatten/errors.hpp"
#include "schatten/verify.hpp"

using namespace schatten;

namespace {

CheckBudget budget(long gas_samples, long matrix_samples, std::uint64_t seed) {
  CheckBudget b;
  b.gas.samples = gas_samples;
  b.gas.burn_in = 3000;
  b.gas.thinning = 2;
  b.matrix.samples = matrix_samples;
  b.matrix.chains = 4;
  b.matrix.burn_in = 2000;
  b.matrix.thinning = 2;
  b.seed = seed;
  return b;
}

std::string describe(const CheckReport& r) {
  std::string s = r.claim + " [" + r.config + "]";
  for (const NamedValue& v : r.values) s += " " + v.name + "=" + std::to_string(v.value);
  return s + " " + r.note;
}

}  // namespace

TEST(Identities, QuadratureExamples) {
  const CheckReport a = check_identity1({2, 1, 0, 2}, 2.0);
  EXPECT_TRUE(a.pass) << describe(a);
  EXPECT_EQ(a.method, CheckMethod::Quadrature);
  EXPECT_NEAR(a.lhs.front() / a.rhs.front(), 1.0, 1e-6);
  EXPECT_TRUE(check_identity1({2, 2, 1, 2}, 1.0).pass);
  EXPECT_TRUE(check_identity2({2, 1, 0, 2}, 2.0).pass);
  EXPECT_TRUE(check_identity2({2, 1, 1, 2}, 2.0).pass);
  EXPECT_TRUE(check_identity2({2, 2, 1, 3}, 1.0, CheckMethod::Auto, 1e-5).pass);
  EXPECT_TRUE(check_identity3({2, 1, 0, 2}, 2.0).pass);
  EXPECT_TRUE(check_identity3({2, 2, 1, 2}, 4.0).pass);
  EXPECT_TRUE(check_identity3({2, 4, 3, 2}, 2.0).pass);
}

TEST(Identities, SharedDrawMonteCarlo) {
  const CheckReport r = check_identity1({2, 1, 0, 6}, 4.0, CheckMethod::Mc, 0.0, budget(60000, 0, 5));
  EXPECT_EQ(r.method, CheckMethod::Mc);
  EXPECT_GT(r.sigma, 0.0);
  EXPECT_TRUE(r.pass) << describe(r);
}

TEST(Identities, RejectOddA) { EXPECT_THROW(check_identity1({1, 1, 0, 2}, 2.0), DomainError); }

TEST(IntByParts, Examples) {
  EXPECT_TRUE(check_int_by_parts({2, 1, 0, 2}, 2.0, 2.0, Functional::one()).pass);
  EXPECT_TRUE(check_int_by_parts({1, 2, 0, 2}, 2.0, 2.0, Functional::one()).pass);
  EXPECT_TRUE(check_int_by_parts({2, 1, 1, 1}, 3.0, 1.5, Functional::one()).pass);
  const CheckReport r = check_int_by_parts({1, 1, 0, 3}, 1.0, 2.0, Functional::euclidean_power(2.0));
  EXPECT_TRUE(r.pass) << describe(r);
}

TEST(HomogeneousMoment, Examples) {
  for (double p : {1.0, 2.0, 4.0}) {
    const CheckReport r = check_homogeneous_moment({2, 2, 1, 2}, p, p + 2.0, Functional::coordinate_power(2.0));
    EXPECT_TRUE(r.pass) << describe(r);
  }
}

TEST(ZetaBounds, Examples) {
  EXPECT_EQ(zeta_lower(2, 2.0), 1.0);
  EXPECT_EQ(zeta_upper(2, 2.0), 1.0);
  EXPECT_EQ(zeta_lower(2, 4.0), 1.0);
  EXPECT_EQ(zeta_upper(2, 4.0), 1.5);
  EXPECT_EQ(zeta_lower(1, 2.0), 0.5);
  for (int a : {1, 2, 3, 4})
    for (double xi : {0.5, 2.0, 4.0}) EXPECT_TRUE(check_zeta_bounds(a, xi, 20000, 3).pass) << a << " " << xi;
}

TEST(HolderBand, Examples) {
  EXPECT_TRUE(check_holder_band(3.0, 10, 20000, 4).pass);
  EXPECT_TRUE(check_holder_band(1.0, 2, 20000, 4).pass);
}

TEST(HermitianSplit, Examples) {
  EXPECT_TRUE(check_hermitian_split(2, 2.0, 2.0, 1e-5).pass);
  EXPECT_TRUE(check_hermitian_split(3, 2.0, 2.0, 1e-4).pass);
  const CheckReport r = check_hermitian_split(2, Exponent::infinity(), 4.0, 1e-5);
  EXPECT_TRUE(r.pass) << describe(r);
}

TEST(Antisym, StructureAndNormalization) {
  EXPECT_TRUE(check_antisym_structure(4, 3.0, 100, 1).pass);
  EXPECT_TRUE(check_antisym_structure(5, 3.0, 100, 1).pass);
  const CheckReport r = check_antisym_normalization(4, 3.0, budget(40000, 40000, 9));
  EXPECT_TRUE(r.pass) << describe(r);
}

TEST(EntryIdentities, AllFields) {
  for (Field f : {Field::Real, Field::Complex, Field::Quaternion})
    EXPECT_TRUE(check_entry_identities(f, 4, 200, 2).pass) << to_string(f);
}

TEST(EntryCorrelations, EuclideanBall) {
  const CheckReport r = check_entry_correlations({Field::Real, Subspace::Full, 2, 2.0}, budget(0, 60000, 10));
  EXPECT_TRUE(r.pass) << describe(r);
}

TEST(SigmaP2, RealAndComplex) {
  for (Field f : {Field::Real, Field::Complex}) {
    const CheckReport r = check_sigma_p2({f, Subspace::Full, 2, 2.0}, budget(60000, 0, 11));
    EXPECT_TRUE(r.pass) << describe(r);
  }
}

TEST(SamplerAgreement, ExactAnchor) {
  const CheckReport r = check_sampler_agreement({2, 1, 0, 3}, budget(60000, 0, 12));
  EXPECT_TRUE(r.pass) << describe(r);
}

TEST(Equilibrium, Limits) {
  EXPECT_NEAR(equilibrium_ratio(1.0), 2.7, 1e-15);
  EXPECT_NEAR(equilibrium_ratio(2.0), 2.0, 1e-15);
  EXPECT_NEAR(equilibrium_ratio(Exponent::infinity()), 1.5, 1e-15);
  EXPECT_NEAR(equilibrium_ratio(1e9), 1.5, 1e-8);
}

TEST(IsotropicConstant, Constants) {
  EXPECT_NEAR(isotropic_constant_target(), 0.26650428867284237, 1e-15);
  EXPECT_NEAR(quoted_volume_root(Field::Real, 16) / quoted_volume_root(Field::Complex, 16), std::sqrt(2.0), 1e-14);
  EXPECT_THROW(quoted_volume_root(Field::Quaternion, 4), DomainError);
}

TEST(Reports, ReproducibleFromSeed) {
  const CheckBudget b = budget(5000, 0, 13);
  const CheckReport x = check_cross_term({2, 1, 0, 3}, 3.0, b);
  const CheckReport y = check_cross_term({2, 1, 0, 3}, 3.0, b);
  EXPECT_EQ(x.lhs, y.lhs);
  EXPECT_EQ(x.rhs, y.rhs);
  EXPECT_EQ(x.sigma, y.sigma);
  EXPECT_EQ(x.config, y.config);
}

TEST(Suites, NamesAndUnknown) {
  EXPECT_EQ(suite_names().size(), 7u);
  EXPECT_THROW(run_suite("nope", {}), SpecificationError);
  SuiteOptions o;
  o.ns = {2};
  o.ps = {2.0};
  const std::vector<CheckReport> r = run_suite("gamma", o);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_TRUE(r[0].pass);
}
