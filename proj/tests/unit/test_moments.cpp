#include <cmath>

#include <gtest/gtest.h>

#include "schatten/errors.hpp"
#include "schatten/functional.hpp"
#include "schatten/moments.hpp"
#include "schatten/samplers.hpp"

using namespace schatten;

namespace {

Budget small_budget(long samples) {
  Budget b;
  b.samples = samples;
  b.burn_in = 3000;
  b.thinning = 2;
  return b;
}

}  // namespace

TEST(EstimateMoment, ConstantFunctional) {
  const SampleBatch b = exact_p2_sample({2, 1, 0, 2}, 1000, 1);
  const MomentEstimate m = estimate_moment(b, Functional::one());
  EXPECT_EQ(m.value, 1.0);
  EXPECT_EQ(m.std_err, 0.0);
}

TEST(EstimateMoment, CoordinateSecondMomentOnExactDraws) {
  const SampleBatch b = exact_p2_sample({2, 1, 0, 2}, 100000, 2);
  const MomentEstimate m = estimate_moment(b, "x1^2");
  EXPECT_NEAR(m.value, 1.0, 3.0 * m.std_err);
  EXPECT_EQ(m.n_samples, 100000);
}

TEST(EstimateMoment, SymmetrizedLinearity) {
  for (int n : {2, 3, 5}) {
    const SampleBatch b = mcmc_sample({2, 2, 1, n}, 3.0, n, 2000, 4, 500, 1);
    const double whole = estimate_moment(b, "norm2^2").value;
    const double coord = estimate_moment(b, "x1^2").value;
    EXPECT_NEAR(whole, n * coord, 1e-12 * whole);
  }
}

TEST(EstimateMoment, ParseRoundTrip) {
  for (const std::string id : {"1", "x1^2", "x1^2x2^2", "sum|x|^4", "norm2^4", "norminf^2", "pq2^4"})
    EXPECT_EQ(Functional::parse(id).id(), id);
  EXPECT_EQ(Functional::parse("2*norm2^2*sum|x|^3").degree(), 5.0);
  EXPECT_THROW(Functional::parse("x3^2"), SpecificationError);
}

TEST(ClosedForm, Examples) {
  EXPECT_NEAR(closed_form_moment(1, 0, 2, 2.0), 0.5, 1e-15);
  EXPECT_NEAR(closed_form_moment(8, 0, 3.0, 3.0), 8.0 / 3.0, 1e-14);
  EXPECT_NEAR(closed_form_moment(4, 2, 4, 2.0), 12.0, 1e-13);
  EXPECT_THROW(closed_form_moment(4, 0, 2, Exponent::infinity()), DomainError);
}

TEST(ClosedForm, MultiplicativeInL) {
  for (double p : {1.0, 2.5, 7.0})
    for (double d : {1.0, 8.0, 50.0})
      EXPECT_NEAR(closed_form_moment(d, 1, 5, p),
                  closed_form_moment(d, 1, 2, p) * closed_form_moment(d + 2, 1, 3, p),
                  1e-12 * closed_form_moment(d, 1, 5, p));
}

// Each quadrature value is divided out by the closed form, so the comparison is relative.
TEST(ClosedForm, HomogeneousMomentsAgainstQuadrature) {
  for (const EnsembleParams& e : {EnsembleParams{2, 1, 0, 2}, EnsembleParams{2, 2, 1, 2}})
    for (double p : {1.0, 2.0, 4.0})
      for (double l : {2.0, p, p + 2.0}) {
        const Functional f = Functional::coordinate_power(2.0);
        const Functional g = Functional::norm_power(p, l) * f;
        const QuadratureResult q = quadrature_moments(e, p, {f, g}, 1e-10);
        const double ratio = q.moments[1].value / q.moments[0].value;
        const double expected = closed_form_moment(static_cast<double>(e.total_degree()), 2.0, l, p);
        EXPECT_NEAR(ratio / expected, 1.0, 1e-8) << e.to_string() << " p=" << p << " l=" << l;
      }
}

TEST(CubeMoments, OneDimensional) {
  const CubeMoments c = cube_moments({2, 1, 0, 1});
  EXPECT_NEAR(c.second, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(c.fourth, 1.0 / 5.0, 1e-15);
  EXPECT_NEAR(c.variance, 4.0 / 45.0, 1e-15);
}

// Frozen from the tensor quadrature oracle at n = 2.
TEST(CubeMoments, MatchQuadratureAtN2) {
  struct Row { EnsembleParams e; double second, fourth, pair; };
  for (const Row& r : {Row{{2, 1, 0, 2}, 2.0 / 5.0, 19.0 / 70.0, 1.0 / 10.0},
                       Row{{2, 2, 1, 2}, 1.0 / 2.0, 11.0 / 30.0, 1.0 / 6.0},
                       Row{{2, 1, 1, 2}, 1.0 / 2.0, 7.0 / 20.0, 1.0 / 5.0}}) {
    const CubeMoments c = cube_moments(r.e);
    EXPECT_NEAR(c.second, r.second, 1e-12) << r.e.to_string();
    EXPECT_NEAR(c.fourth, r.fourth, 1e-12) << r.e.to_string();
    EXPECT_NEAR(c.pair, r.pair, 1e-12) << r.e.to_string();
    EXPECT_NEAR(c.variance, 2 * r.fourth + 2 * r.pair - 4 * r.second * r.second, 1e-12);
  }
}

TEST(CubeMoments, FrozenLargerSizes) {
  const CubeMoments c = cube_moments({2, 1, 0, 16});
  EXPECT_NEAR(c.second, 0.48484848484848486, 1e-13);
  EXPECT_NEAR(c.fourth, 0.35974025974025969, 1e-13);
  EXPECT_NEAR(c.pair, 0.22727272727272727, 1e-13);
  EXPECT_NEAR(c.variance, 0.12131706677160992, 1e-10);
  EXPECT_NEAR(cube_moments({2, 2, 1, 3}).variance, 0.064285714285714057, 1e-10);
  EXPECT_THROW(cube_moments({1, 1, 0, 3}), DomainError);
}

TEST(SigmaPipeline, BallExamples) {
  Budget b = small_budget(60000);
  const SigmaEstimate r2 = sigma_pipeline({Field::Real, Subspace::Full, 2, 2.0}, SigmaSampler::Pushforward, b, 3);
  EXPECT_EQ(r2.dim, 4);
  EXPECT_NEAR(r2.sigma_sq, 0.5, 0.05);
  const SigmaEstimate c2 = sigma_pipeline({Field::Complex, Subspace::Full, 2, 2.0}, SigmaSampler::Pushforward, b, 4);
  EXPECT_NEAR(c2.sigma_sq, 1.0 / 3.0, 0.1 / 3.0);
  for (const Exponent& p : {Exponent(1.0), Exponent(3.0), Exponent::infinity()}) {
    const SigmaEstimate s = sigma_pipeline({Field::Real, Subspace::Full, 1, p}, SigmaSampler::Pushforward, b, 5);
    EXPECT_NEAR(s.sigma_sq, 0.8, 3.0 * s.sigma_sq_err) << p.to_string();
  }
}

TEST(VarMp, ExactP2TermsAndSign) {
  const VarMpEstimate v = var_mp_pipeline({2, 1, 0, 2}, 2.0, small_budget(50000), 6);
  EXPECT_EQ(v.sampler, "exact_p2");
  for (double t : {v.term_fourth, v.term_pair, v.term_square}) EXPECT_TRUE(std::isfinite(t));
  EXPECT_GT(v.variance.value, 0.0);
  // Var(||x||^2) = d/2 for the Gaussian-weighted gas.
  EXPECT_NEAR(v.variance.value, 2.0, 3.0 * v.variance.std_err);
}

TEST(VarMp, CubeAgainstClosedForm) {
  const EnsembleParams e{2, 1, 0, 8};
  const VarMpEstimate v = var_mp_pipeline(e, Exponent::infinity(), small_budget(80000), 7);
  const CubeMoments c = cube_moments(e);
  EXPECT_NEAR(v.variance.value, c.variance, 3.0 * v.variance.std_err);
  EXPECT_NEAR(v.second, c.second, 0.02 * c.second);
  EXPECT_LT(v.cross.value + 3.0 * v.cross.std_err, 0.0);
}

TEST(VarMp, JointCombinationMatchesParts) {
  const VarMpEstimate v = var_mp_pipeline({2, 2, 1, 3}, 4.0, small_budget(20000), 8);
  EXPECT_NEAR(v.variance.value, v.term_fourth + v.term_pair - v.term_square, 1e-12 * v.term_square);
  EXPECT_NEAR(v.ratio.value, v.fourth / (v.second * v.second), 1e-12 * v.ratio.value);
}
