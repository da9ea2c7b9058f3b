#include <cmath>
#include <cstdlib>

#include <gtest/gtest.h>

#include "schatten/density.hpp"
#include "schatten/errors.hpp"
#include "schatten/gamma.hpp"
#include "schatten/moments.hpp"
#include "schatten/samplers.hpp"
#include "schatten/statistics.hpp"

using namespace schatten;

namespace {

McmcConfig config(long samples, std::uint64_t seed, long thinning = 2) {
  McmcConfig c;
  c.samples = samples;
  c.seed = seed;
  c.burn_in = 3000;
  c.thinning = thinning;
  return c;
}

std::vector<double> column_max_abs(const SampleBatch& b) {
  std::vector<double> out(b.size());
  for (long k = 0; k < b.size(); ++k) out[k] = b.point(k).cwiseAbs().maxCoeff();
  return out;
}

}  // namespace

TEST(Mcmc, OneDimensionalSecondMoment) {
  const SampleBatch b = mcmc_sample({2, 1, 0, 1}, 2.0, config(40000, 17));
  const MomentEstimate m = estimate_moment(b, "x1^2");
  EXPECT_NEAR(m.value, 0.5, 3.0 * m.std_err) << m.std_err;
  EXPECT_FALSE(m.low_confidence);
}

TEST(Mcmc, CubeSecondMoment) {
  const SampleBatch b = mcmc_sample({2, 1, 0, 1}, Exponent::infinity(), config(40000, 18));
  EXPECT_LE(b.points.cwiseAbs().maxCoeff(), 1.0);
  const MomentEstimate m = estimate_moment(b, "x1^2");
  EXPECT_NEAR(m.value, 1.0 / 3.0, 3.0 * m.std_err);
}

TEST(Mcmc, NormMeanMatchesClosedForm) {
  const EnsembleParams e{2, 2, 1, 4};
  const SampleBatch b = mcmc_sample(e, 2.0, config(40000, 19));
  const MomentEstimate m = estimate_moment(b, "norm2^2");
  EXPECT_NEAR(m.value, 16.0, 3.0 * m.std_err) << m.std_err;
  EXPECT_LE(b.diagnostics.ess_norm_sq, static_cast<double>(b.size()));
  EXPECT_GT(b.diagnostics.mean_acceptance, 0.1);
  EXPECT_LT(b.diagnostics.mean_acceptance, 0.9);
}

TEST(Mcmc, CachedDensityStaysExact) {
  McmcConfig c = config(2000, 3);
  c.validate_cache = true;
  for (const EnsembleParams& e : {EnsembleParams{2, 1, 0, 3}, EnsembleParams{1, 2, 0, 3}, EnsembleParams{2, 4, 3, 2}})
    for (const Exponent& p : {Exponent(1.0), Exponent(3.0), Exponent::infinity()})
      EXPECT_NO_THROW(mcmc_sample(e, p, c)) << e.to_string() << " p=" << p.to_string();
}

TEST(Mcmc, ReplayIsBitIdenticalAcrossWorkerCounts) {
  const EnsembleParams e{2, 1, 1, 3};
  setenv("SCHATTEN_WORKERS", "1", 1);
  const SampleBatch a = mcmc_sample(e, 3.0, config(4000, 99));
  setenv("SCHATTEN_WORKERS", "3", 1);
  const SampleBatch b = mcmc_sample(e, 3.0, config(4000, 99));
  unsetenv("SCHATTEN_WORKERS");
  ASSERT_EQ(a.points.cols(), b.points.cols());
  EXPECT_TRUE((a.points.array() == b.points.array()).all());
  EXPECT_EQ(a.diagnostics.acceptance, b.diagnostics.acceptance);
  const SampleBatch c = mcmc_sample(e, 3.0, config(4000, 100));
  EXPECT_FALSE((a.points.array() == c.points.array()).all());
}

TEST(ExactP2, NormMeansMatchClosedForm) {
  for (const EnsembleParams& e : {EnsembleParams{2, 1, 0, 2}, EnsembleParams{1, 2, 0, 3}, EnsembleParams{1, 1, 0, 5},
                                  EnsembleParams{2, 4, 3, 3}, EnsembleParams{2, 1, 1, 4}}) {
    const SampleBatch b = exact_p2_sample(e, 50000, 7);
    EXPECT_TRUE(b.diagnostics.independent_draws);
    const MomentEstimate m = estimate_moment(b, "norm2^2");
    EXPECT_NEAR(m.value, e.total_degree() / 2.0, 3.0 * m.std_err) << e.to_string();
  }
}

TEST(ExactP2, Availability) {
  EXPECT_TRUE(exact_p2_available({2, 3, 1, 3}));
  EXPECT_TRUE(exact_p2_available({1, 4, 0, 3}));
  EXPECT_FALSE(exact_p2_available({1, 1, 1, 3}));
  EXPECT_THROW(exact_p2_sample({1, 1, 1, 3}, 10, 1), NotAvailable);
}

TEST(ExactP2, MaxCoordinateLawMatchesMcmc) {
  const EnsembleParams e{2, 1, 0, 3};
  const SampleBatch exact = exact_p2_sample(e, 100000, 11);
  const SampleBatch chain = mcmc_sample(e, 2.0, config(100000, 12, 4));
  const double ks = ks_distance(column_max_abs(exact), column_max_abs(chain));
  EXPECT_LT(ks, 0.02);
}

TEST(Pushforward, SupportAndSigns) {
  for (const Exponent& p : {Exponent(1.0), Exponent(2.0), Exponent(5.0)}) {
    const SampleBatch gas = mcmc_sample({1, 1, 0, 3}, p, config(4000, 21));
    const SampleBatch z = ball_pushforward(gas, 22);
    ASSERT_EQ(z.size(), gas.size());
    for (long k = 0; k < z.size(); ++k) {
      EXPECT_LE(lp_norm(z.point(k), p), 1.0 + 1e-12);
      for (int i = 0; i < 3; ++i)
        if (gas.point(k)[i] != 0.0) EXPECT_EQ(std::signbit(z.point(k)[i]), std::signbit(gas.point(k)[i]));
    }
  }
  const SampleBatch cube = mcmc_sample({2, 1, 0, 2}, Exponent::infinity(), config(1000, 1));
  EXPECT_TRUE((ball_pushforward(cube, 2).points.array() == cube.points.array()).all());
}

// E||z||^2 / E||x||^2 = d/(d+2) * Gamma(d/p) / Gamma((d+2)/p), estimated on one run.
TEST(Pushforward, MomentTransfer) {
  const EnsembleParams e{2, 1, 0, 3};
  const double d = static_cast<double>(e.total_degree());
  for (const Exponent& p : {Exponent(2.0), Exponent(4.0)}) {
    const SampleBatch gas = p.value() == 2.0 ? exact_p2_sample(e, 60000, 5) : mcmc_sample(e, p, config(60000, 5));
    const SampleBatch z = ball_pushforward(gas, 6);
    const MomentEstimate mx = estimate_moment(gas, "norm2^2");
    const MomentEstimate mz = estimate_moment(z, "norm2^2");
    const double ratio = mz.value / mx.value;
    const double err = ratio * std::hypot(mz.std_err / mz.value, mx.std_err / mx.value);
    const double expected = d / (d + 2.0) * std::exp(log_gamma(d / p.value()) - log_gamma((d + 2.0) / p.value()));
    EXPECT_NEAR(ratio, expected, 3.0 * err) << "p=" << p.to_string();
  }
}

TEST(HitAndRun, MembershipExamples) {
  RealMatrix a(2, 2);
  a << 0.5, 0, 0, 0.5;
  EXPECT_TRUE(in_schatten_ball(MatrixSample(a), Exponent::infinity()));
  a << 0.6, 0, 0, 0.6;
  EXPECT_FALSE(in_schatten_ball(MatrixSample(a), 1.0));
  EXPECT_TRUE(in_schatten_ball(MatrixSample(a), 2.0));
}

TEST(HitAndRun, BasisIsOrthonormal) {
  for (const SchattenSpec& s : {SchattenSpec{Field::Quaternion, Subspace::Full, 2, 2.0},
                                SchattenSpec{Field::Complex, Subspace::AntiSymHermitian, 3, 2.0},
                                SchattenSpec{Field::Complex, Subspace::ComplexSymmetric, 3, 2.0},
                                SchattenSpec{Field::Real, Subspace::SelfAdjoint, 3, 2.0}}) {
    const std::vector<MatrixSample> basis = subspace_basis(s);
    EXPECT_EQ(static_cast<long>(basis.size()), s.real_dimension()) << s.to_string();
    for (const MatrixSample& m : basis) EXPECT_NEAR(schatten_norm(m, 2.0), 1.0, 1e-14);
  }
}

TEST(HitAndRun, AgreesWithPushforward) {
  const SchattenSpec spec{Field::Real, Subspace::Full, 3, 4.0};
  Budget budget;
  budget.samples = 40000;
  budget.thinning = 2;
  const SigmaEstimate walk = sigma_pipeline(spec, SigmaSampler::HitAndRun, budget, 31);
  const SigmaEstimate push = sigma_pipeline(spec, SigmaSampler::Pushforward, budget, 32);
  EXPECT_NEAR(walk.mean_norm_sq, push.mean_norm_sq, 3.0 * std::hypot(walk.mean_norm_sq_err, push.mean_norm_sq_err));
}

TEST(HitAndRun, EntrySymmetries) {
  const SchattenSpec spec{Field::Real, Subspace::Full, 3, 1.0};
  HitAndRunConfig c;
  c.samples = 30000;
  c.chains = 3;
  c.thinning = 3;
  c.seed = 8;
  std::vector<Eigen::Vector3d> rows;
  const HitAndRunDiagnostics diag = matrix_hit_and_run_visit(spec, c, [&](int, const MatrixSample& m) {
    const RealMatrix& t = std::get<RealMatrix>(m);
    rows.emplace_back(t(0, 0) * t(0, 0), t(0, 1) * t(0, 1), t(1, 0) * t(1, 0));
  });
  Eigen::MatrixXd values(rows.size(), 3);
  for (std::size_t k = 0; k < rows.size(); ++k) values.row(k) = rows[k].transpose();
  const JointMean jm = joint_batch_means(values, diag.layout());
  for (auto [i, j] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
    const double diff = jm.mean[i] - jm.mean[j];
    const double var = jm.covariance(i, i) + jm.covariance(j, j) - 2.0 * jm.covariance(i, j);
    EXPECT_LE(std::abs(diff), 3.0 * std::sqrt(var)) << i << " vs " << j;
  }
}
