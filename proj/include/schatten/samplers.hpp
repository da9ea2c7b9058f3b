#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "schatten/core_types.hpp"
#include "schatten/density.hpp"
#include "schatten/matrix_lab.hpp"
#include "schatten/statistics.hpp"

namespace schatten {

struct SamplerDiagnostics {
  std::string sampler;
  int chains = 1;
  long burn_in = 0;
  long thinning = 1;
  bool independent_draws = false;
  std::vector<long> chain_lengths;
  std::vector<double> acceptance;  // per chain, coordinate moves after burn-in
  double mean_acceptance = 1.0;
  double ess_norm_sq = 0.0;        // effective sample size of ||x||_2^2

  ChainLayout layout() const;
};

// Unweighted draws; column k of `points` is the k-th gas point.
struct SampleBatch {
  EnsembleParams params;
  Exponent p = 2.0;
  Eigen::MatrixXd points;
  SamplerDiagnostics diagnostics;

  long size() const { return points.cols(); }
  auto point(long k) const { return points.col(k); }
};

struct McmcConfig {
  int chains = 4;
  long samples = 10000;  // total kept draws over all chains
  long burn_in = 2000;   // sweeps per chain, adaptation only happens here
  long thinning = 1;     // sweeps between kept draws
  std::uint64_t seed = 1;
  bool scale_moves = true;       // joint dilation move once per sweep
  bool validate_cache = false;   // recompute the cached log density after every sweep
};

// Per-chain state of the coordinate-wise random-walk Metropolis sampler.
struct ChainState {
  GasPoint position;
  double log_density = 0.0;
  Eigen::VectorXd step_sizes;
  Eigen::VectorXd powers;  // position_i^a
  std::vector<long> accepted;
  std::vector<long> proposed;
  double scale_step = 0.1;
  long scale_accepted = 0;
  long scale_proposed = 0;
  std::uint64_t stream = 0;
};

ChainState init_chain(const EnsembleParams& params, const Exponent& p, std::uint64_t stream);
// One sweep: a random-walk update of every coordinate, a sign move, and optionally a dilation move.
void mcmc_sweep(ChainState& state, const EnsembleParams& params, const Exponent& p, std::mt19937_64& rng,
                bool scale_moves);

SampleBatch mcmc_sample(const EnsembleParams& params, const Exponent& p, const McmcConfig& config);
SampleBatch mcmc_sample(const EnsembleParams& params, const Exponent& p, int n_chains, long n_samples,
                        std::uint64_t seed, long burn_in, long thinning);

// Exact draws at p = 2 from tridiagonal beta-ensemble models. a = 1 needs c = 0; a = 2 allows any b, c.
SampleBatch exact_p2_sample(const EnsembleParams& params, long n_samples, std::uint64_t seed);
bool exact_p2_available(const EnsembleParams& params);

// x -> u^{1/d} x / ||x||_p; p = inf returns the draws unchanged.
SampleBatch ball_pushforward(const SampleBatch& gas, std::uint64_t seed);

// Hit-and-run over the real coordinates of E, started at 0.
struct HitAndRunConfig {
  long samples = 10000;
  long burn_in = 1000;
  long thinning = 1;  // steps between kept samples
  std::uint64_t seed = 1;
  int chains = 1;
};

struct HitAndRunDiagnostics {
  int chains = 1;
  long burn_in = 0;
  long thinning = 1;
  std::vector<long> chain_lengths;
  ChainLayout layout() const;
};

// Streams each kept sample to `visit(chain, sample)` in deterministic order.
HitAndRunDiagnostics matrix_hit_and_run_visit(const SchattenSpec& spec, const HitAndRunConfig& config,
                                              const std::function<void(int, const MatrixSample&)>& visit);

std::vector<MatrixSample> matrix_hit_and_run(const SchattenSpec& spec, long n_samples, std::uint64_t seed,
                                             long burn_in);

// Schatten-ball membership ||T||_{S_p} <= 1 with fast paths for p = 2 and p = inf.
bool in_schatten_ball(const MatrixSample& t, const Exponent& p);

// Coordinates of E: basis matrices orthonormal for the real trace inner product.
std::vector<MatrixSample> subspace_basis(const SchattenSpec& spec);

}  // namespace schatten
