#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "schatten/core_types.hpp"
#include "schatten/functional.hpp"
#include "schatten/samplers.hpp"
#include "schatten/statistics.hpp"

namespace schatten {

enum class EstimateMethod { Mc, Quadrature, ClosedForm };
std::string to_string(EstimateMethod method);

constexpr double kLowConfidenceEss = 100.0;

// Estimate of M_p(F)/M_p(1). For quadrature and closed forms std_err is an absolute error bound.
struct MomentEstimate {
  std::string functional;
  double value = 0.0;
  double std_err = 0.0;
  long n_samples = 0;  // draws, or integrand evaluations for quadrature
  double ess = 0.0;
  EstimateMethod method = EstimateMethod::Mc;
  bool low_confidence = false;
};

// Several functionals evaluated on the same draws, keeping their joint covariance.
struct JointMoments {
  std::vector<Functional> functionals;
  JointMean joint;
  long n_samples = 0;

  MomentEstimate estimate(std::size_t k) const;
};

// Value and standard error of a scalar built from jointly estimated moments.
struct DerivedEstimate {
  double value = 0.0;
  double std_err = 0.0;
};

MomentEstimate estimate_moment(const SampleBatch& batch, const Functional& f);
MomentEstimate estimate_moment(const SampleBatch& batch, const std::string& functional_id);
JointMoments estimate_moments(const SampleBatch& batch, const std::vector<Functional>& functionals);

// sum_k w_k M_k with the covariance of the joint estimator.
DerivedEstimate linear_combination(const JointMoments& moments, const Eigen::VectorXd& weights);
// g(M) with the delta-method error g'(M)^T Cov g'(M).
DerivedEstimate delta_method(const JointMoments& moments, double value, const Eigen::VectorXd& gradient);

// Gamma((d+l+s)/p) / Gamma((d+s)/p) for finite p.
double closed_form_moment(double d, double s, double l, const Exponent& p);

struct QuadratureResult {
  std::vector<MomentEstimate> moments;
  int level = 0;
  double truncation_radius = 1.0;
  double tail_bound = 0.0;  // certified bound on the relative mass beyond the truncation box
};

// Deterministic M_p(F)/M_p(1) for n <= 3 over the ordered magnitude sectors. Throws OracleFailure
// when the requested absolute tolerance is not met at the finest level.
QuadratureResult quadrature_moments(const EnsembleParams& params, const Exponent& p,
                                    const std::vector<Functional>& functionals, double abs_tol, int max_level = 0);
MomentEstimate quadrature_moment(const EnsembleParams& params, const Exponent& p, const Functional& f,
                                 double abs_tol);

// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};
GaussRule gauss_legendre(int points);

// ---- pipelines ----

enum class SigmaSampler { Pushforward, HitAndRun };
std::string to_string(SigmaSampler sampler);
SigmaSampler parse_sigma_sampler(const std::string& text);

struct Budget {
  long samples = 100000;
  int chains = 4;
  long burn_in = 2000;
  long thinning = 1;
};

struct SigmaEstimate {
  double sigma_sq = 0.0;
  double sigma_sq_err = 0.0;
  double var_norm_sq = 0.0;
  double var_norm_sq_err = 0.0;
  double mean_norm_sq = 0.0;
  double mean_norm_sq_err = 0.0;
  long dim = 0;  // real dimension d of E
  double mean_over_dim = 0.0;  // E||T||_2^2 / d
  long n_samples = 0;
  std::string sampler;
};

// Thin-shell parameter of the uniform measure on K_{p,E}, from the singular-value law.
SigmaEstimate sigma_pipeline(const SchattenSpec& spec, SigmaSampler sampler, const Budget& budget,
                             std::uint64_t seed);
// Same, from a gas batch of the ensemble of `spec` (pushforward route).
SigmaEstimate sigma_from_gas(const SchattenSpec& spec, const SampleBatch& gas, std::uint64_t seed);

// Var_{M_p}(||x||_2^2) = n M(x1^4) + n(n-1) M(x1^2 x2^2) - n^2 M(x1^2)^2, all three on shared draws.
struct VarMpEstimate {
  double fourth = 0.0;        // M(x1^4)/M(1)
  double pair = 0.0;          // M(x1^2 x2^2)/M(1)
  double second = 0.0;        // M(x1^2)/M(1)
  double term_fourth = 0.0;   // n M(x1^4)
  double term_pair = 0.0;     // n(n-1) M(x1^2 x2^2)
  double term_square = 0.0;   // n^2 M(x1^2)^2
  DerivedEstimate variance;   // the signed combination
  DerivedEstimate cross;      // M(x1^2 x2^2) - M(x1^2)^2
  DerivedEstimate ratio;      // M(x1^4) / M(x1^2)^2
  DerivedEstimate mean_norm_sq;
  long n_samples = 0;
  double ess = 0.0;
  std::string sampler;
};

VarMpEstimate var_mp_from_batch(const SampleBatch& batch);
// Exact tridiagonal draws at p = 2 when available, Metropolis otherwise.
VarMpEstimate var_mp_pipeline(const EnsembleParams& params, const Exponent& p, const Budget& budget,
                              std::uint64_t seed);
SampleBatch gas_sample(const EnsembleParams& params, const Exponent& p, const Budget& budget, std::uint64_t seed);

// Var_{M_inf}(||x||_2^2) in closed form for a = 2, with its three moment terms.
struct CubeMoments {
  double second = 0.0;
  double fourth = 0.0;
  double pair = 0.0;
  double variance = 0.0;
};
CubeMoments cube_moments(const EnsembleParams& params);

}  // namespace schatten
