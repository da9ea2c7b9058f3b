#include <cmath>

#include "schatten/errors.hpp"
#include "schatten/moments.hpp"

namespace schatten {

namespace {

// sigma^2 = d (m2 - m1^2) / m1^2 from the joint means of ||T||^2 and ||T||^4.
SigmaEstimate sigma_from_norms(const Eigen::VectorXd& norm_sq, const ChainLayout& layout, long dim) {
  Eigen::MatrixXd values(norm_sq.size(), 2);
  values.col(0) = norm_sq;
  values.col(1) = norm_sq.array().square();
  const JointMean joint = joint_batch_means(values, layout);
  const double m1 = joint.mean[0];
  const double m2 = joint.mean[1];
  const double d = static_cast<double>(dim);
  auto se = [&](const Eigen::Vector2d& g) { return std::sqrt(std::max(0.0, g.dot(joint.covariance * g))); };

  SigmaEstimate out;
  out.dim = dim;
  out.n_samples = norm_sq.size();
  out.mean_norm_sq = m1;
  out.mean_norm_sq_err = std::sqrt(joint.covariance(0, 0));
  out.var_norm_sq = m2 - m1 * m1;
  out.var_norm_sq_err = se({-2.0 * m1, 1.0});
  out.sigma_sq = d * out.var_norm_sq / (m1 * m1);
  out.sigma_sq_err = se({-2.0 * d * m2 / (m1 * m1 * m1), d / (m1 * m1)});
  out.mean_over_dim = m1 / d;
  return out;
}

}  // namespace

std::string to_string(SigmaSampler sampler) {
  return sampler == SigmaSampler::Pushforward ? "pushforward" : "hit-and-run";
}

SigmaSampler parse_sigma_sampler(const std::string& text) {
  if (text == "pushforward") return SigmaSampler::Pushforward;
  if (text == "hit-and-run" || text == "hitandrun") return SigmaSampler::HitAndRun;
  throw SpecificationError("unknown sampler '" + text + "' (expected pushforward or hit-and-run)");
}

SampleBatch gas_sample(const EnsembleParams& params, const Exponent& p, const Budget& budget, std::uint64_t seed) {
  if (p.is_finite() && p.value() == 2.0 && exact_p2_available(params))
    return exact_p2_sample(params, budget.samples, seed);
  McmcConfig config;
  config.chains = budget.chains;
  config.samples = budget.samples;
  config.burn_in = budget.burn_in;
  config.thinning = budget.thinning;
  config.seed = seed;
  return mcmc_sample(params, p, config);
}

SigmaEstimate sigma_from_gas(const SchattenSpec& spec, const SampleBatch& gas, std::uint64_t seed) {
  spec.validate();
  const EnsembleMapping mapping = ensemble_of(spec);
  if (!(gas.params == mapping.params) || !(gas.p == spec.p))
    throw SpecificationError("gas batch does not belong to " + spec.to_string());
  const SampleBatch ball = ball_pushforward(gas, seed);
  // Each gas coordinate stands for `multiplicity` singular values, and the ball constraint
  // multiplicity * ||theta||_p^p <= 1 rescales the unit l_p ball by multiplicity^{-1/p}.
  const double m = mapping.multiplicity;
  const double scale = m * (spec.p.is_infinite() ? 1.0 : std::pow(m, -2.0 / spec.p.value()));
  const Eigen::VectorXd norm_sq = scale * ball.points.colwise().squaredNorm().transpose();
  SigmaEstimate out = sigma_from_norms(norm_sq, ball.diagnostics.layout(), spec.real_dimension());
  out.sampler = ball.diagnostics.sampler;
  return out;
}

SigmaEstimate sigma_pipeline(const SchattenSpec& spec, SigmaSampler sampler, const Budget& budget,
                             std::uint64_t seed) {
  spec.validate();
  if (sampler == SigmaSampler::Pushforward) {
    const EnsembleMapping mapping = ensemble_of(spec);
    return sigma_from_gas(spec, gas_sample(mapping.params, spec.p, budget, seed), seed);
  }
  HitAndRunConfig config;
  config.samples = budget.samples;
  config.burn_in = budget.burn_in;
  config.thinning = budget.thinning;
  config.chains = budget.chains;
  config.seed = seed;
  std::vector<std::vector<double>> per_chain(config.chains);
  const HitAndRunDiagnostics diag = matrix_hit_and_run_visit(
      spec, config, [&](int chain, const MatrixSample& t) {
        per_chain[chain].push_back(std::visit([](const auto& m) { return frobenius_sq(m); }, t));
      });
  Eigen::VectorXd norm_sq(config.samples);
  long k = 0;
  for (const auto& chain : per_chain)
    for (double v : chain) norm_sq[k++] = v;
  SigmaEstimate out = sigma_from_norms(norm_sq, diag.layout(), spec.real_dimension());
  out.sampler = "hit-and-run";
  return out;
}

VarMpEstimate var_mp_from_batch(const SampleBatch& batch) {
  const int n = batch.params.n;
  const double nn = n;
  std::vector<Functional> functionals = {Functional::coordinate_power(4.0), Functional::coordinate_power(2.0)};
  if (n >= 2) functionals.push_back(Functional::pair_product(2.0));
  const JointMoments jm = estimate_moments(batch, functionals);
  const double F = jm.joint.mean[0];
  const double S = jm.joint.mean[1];
  const double P = n >= 2 ? jm.joint.mean[2] : 0.0;
  const Eigen::Index k = static_cast<Eigen::Index>(functionals.size());
  auto grad = [&](double gf, double gs, double gp) {
    Eigen::VectorXd g(k);
    g[0] = gf;
    g[1] = gs;
    if (k > 2) g[2] = gp;
    return g;
  };

  VarMpEstimate out;
  out.fourth = F;
  out.second = S;
  out.pair = P;
  out.term_fourth = nn * F;
  out.term_pair = nn * (nn - 1.0) * P;
  out.term_square = nn * nn * S * S;
  out.variance = delta_method(jm, out.term_fourth + out.term_pair - out.term_square,
                              grad(nn, -2.0 * nn * nn * S, nn * (nn - 1.0)));
  if (n >= 2) out.cross = delta_method(jm, P - S * S, grad(0.0, -2.0 * S, 1.0));
  out.ratio = delta_method(jm, F / (S * S), grad(1.0 / (S * S), -2.0 * F / (S * S * S), 0.0));
  out.mean_norm_sq = delta_method(jm, nn * S, grad(0.0, nn, 0.0));
  out.n_samples = batch.size();
  out.ess = batch.diagnostics.ess_norm_sq;
  out.sampler = batch.diagnostics.sampler;
  return out;
}

VarMpEstimate var_mp_pipeline(const EnsembleParams& params, const Exponent& p, const Budget& budget,
                              std::uint64_t seed) {
  return var_mp_from_batch(gas_sample(params, p, budget, seed));
}

CubeMoments cube_moments(const EnsembleParams& params) {
  params.validate();
  if (params.a != 2) throw DomainError("cube_moments needs a = 2");
  const double n = params.n;
  const double b = params.b;
  const double c = params.c;
  const double d = static_cast<double>(params.total_degree());
  const double k1 = 2.0 * d + (1.0 - c) * n;
  const double k3 = 2.0 * d + (3.0 - c) * n;
  const double kb = 2.0 * d + (1.0 - b - c) * n;
  const double spread = n * d - 2.0 * d + (1.0 + c) * n;
  CubeMoments out;
  out.second = d / k1;
  out.fourth = d / k3 - b * n * d * spread / (k1 * kb * k3);
  out.pair = params.n >= 2 ? d * spread / ((n - 1.0) * k1 * kb) : 0.0;
  out.variance = n * out.fourth + n * (n - 1.0) * out.pair - n * n * out.second * out.second;
  return out;
}

}  // namespace schatten
