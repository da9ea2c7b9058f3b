#include "schatten/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "schatten/errors.hpp"
#include "schatten/parallel.hpp"
#include "schatten/rng.hpp"

namespace schatten {

namespace {

constexpr double kTargetAcceptance = 0.44;
constexpr long kAdaptWindow = 50;
constexpr long kResyncPeriod = 256;
constexpr int kChunk = 8;

// |v|^p with an integer fast path.
struct PowerFn {
  double p = 2.0;
  int ip = 2;
  bool integer = true;

  explicit PowerFn(const Exponent& e) {
    if (e.is_finite()) {
      p = e.value();
      integer = p == std::floor(p) && p <= 32.0;
      ip = integer ? static_cast<int>(p) : 0;
    }
  }
  double operator()(double v) const {
    const double a = std::abs(v);
    return integer ? ipow(a, ip) : std::pow(a, p);
  }
};

double sum_power(const GasPoint& x, const PowerFn& pw) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) s += pw(x[i]);
  return s;
}

}  // namespace

ChainLayout SamplerDiagnostics::layout() const {
  ChainLayout layout;
  layout.chain_lengths = chain_lengths;
  layout.independent = independent_draws;
  return layout;
}

ChainState init_chain(const EnsembleParams& params, const Exponent& p, std::uint64_t stream) {
  params.validate();
  const int n = params.n;
  ChainState s;
  s.stream = stream;
  s.position.resize(n);
  for (int i = 0; i < n; ++i) {
    if (params.a % 2 == 0) {
      s.position[i] = (i + 0.5) / n;
    } else {
      s.position[i] = -1.0 + (2.0 * i + 1.0) / n + 0.25 / n;
    }
  }
  double rho = 1.0;
  if (p.is_finite()) {
    const PowerFn pw(p);
    const double d = static_cast<double>(params.total_degree());
    rho = std::pow(d / (p.value() * sum_power(s.position, pw)), 1.0 / p.value());
    s.position *= rho;
  }
  s.powers.resize(n);
  for (int i = 0; i < n; ++i) s.powers[i] = ipow(s.position[i], params.a);
  s.log_density = log_f_p(params, p, s.position);
  if (!std::isfinite(s.log_density)) throw NumericalError("initial chain state has zero density");
  s.step_sizes = Eigen::VectorXd::Constant(n, 0.5 * rho / n);
  s.accepted.assign(n, 0);
  s.proposed.assign(n, 0);
  s.scale_step = 0.5 / std::sqrt(static_cast<double>(params.total_degree()));
  return s;
}

void mcmc_sweep(ChainState& state, const EnsembleParams& params, const Exponent& p, std::mt19937_64& rng,
                bool scale_moves) {
  const int n = params.n;
  const int a = params.a;
  const double b = params.b;
  const double c = params.c;
  const bool infinite = p.is_infinite();
  const PowerFn pw(p);
  std::normal_distribution<double> normal(0.0, 1.0);
  GasPoint& x = state.position;
  Eigen::VectorXd& xa = state.powers;

  for (int i = 0; i < n; ++i) {
    const double cur = x[i];
    const double prop = cur + state.step_sizes[i] * normal(rng);
    const double log_u = std::log(uniform_open(rng));
    ++state.proposed[i];
    if (infinite && std::abs(prop) > 1.0) continue;
    if (c > 0.0 && prop == 0.0) continue;
    const double prop_a = ipow(prop, a);
    const double cur_a = xa[i];
    double log_ratio = 0.0;
    double num = 1.0;
    double den = 1.0;
    int in_chunk = 0;
    bool vanished = false;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      num *= std::abs(prop_a - xa[j]);
      den *= std::abs(cur_a - xa[j]);
      if (++in_chunk == kChunk) {
        if (num == 0.0) { vanished = true; break; }
        log_ratio += std::log(num / den);
        num = den = 1.0;
        in_chunk = 0;
      }
    }
    if (vanished || num == 0.0) continue;
    if (in_chunk > 0) log_ratio += std::log(num / den);
    double delta = b * log_ratio;
    if (c > 0.0) delta += c * std::log(std::abs(prop / cur));
    if (!infinite) delta -= pw(prop) - pw(cur);
    if (log_u < delta) {
      x[i] = prop;
      xa[i] = prop_a;
      state.log_density += delta;
      ++state.accepted[i];
    }
  }

  // The density is invariant under independent sign flips (a even) or a global flip (a odd).
  if (a % 2 == 0) {
    std::uint64_t bits = 0;
    for (int i = 0; i < n; ++i) {
      if (i % 64 == 0) bits = rng();
      if (bits & 1ULL) x[i] = -x[i];
      bits >>= 1;
    }
  } else if (rng() & 1ULL) {
    x = -x;
    xa = -xa;
  }

  if (scale_moves) {
    const double d = static_cast<double>(params.total_degree());
    const double log_lambda = state.scale_step * normal(rng);
    const double log_u = std::log(uniform_open(rng));
    const double lambda = std::exp(log_lambda);
    ++state.scale_proposed;
    double delta_density = (d - n) * log_lambda;
    bool allowed = true;
    if (infinite) {
      allowed = lambda * x.cwiseAbs().maxCoeff() <= 1.0;
    } else {
      const double s = sum_power(x, pw);
      delta_density -= (std::pow(lambda, pw.p) - 1.0) * s;
    }
    // The dilation has Jacobian lambda^n.
    if (allowed && log_u < delta_density + n * log_lambda) {
      x *= lambda;
      xa *= ipow(lambda, a);
      state.log_density += delta_density;
      ++state.scale_accepted;
    }
  }
}

SampleBatch mcmc_sample(const EnsembleParams& params, const Exponent& p, const McmcConfig& config) {
  params.validate();
  if (config.samples < 1) throw SpecificationError("mcmc_sample needs at least one sample");
  if (config.chains < 1) throw SpecificationError("mcmc_sample needs at least one chain");
  if (config.thinning < 1 || config.burn_in < 0) throw SpecificationError("bad burn-in or thinning");
  const int n = params.n;
  const int chains = config.chains;
  std::vector<long> counts(chains, config.samples / chains);
  for (long k = 0; k < config.samples % chains; ++k) ++counts[k];

  std::vector<Eigen::MatrixXd> draws(chains);
  std::vector<double> acceptance(chains, 0.0);
  parallel_for(static_cast<std::size_t>(chains), [&](std::size_t k) {
    std::mt19937_64 rng = make_stream(config.seed, k);
    ChainState state = init_chain(params, p, k);
    std::vector<long> acc_mark(n, 0);
    std::vector<long> prop_mark(n, 0);
    long scale_acc_mark = 0;
    long scale_prop_mark = 0;
    for (long sweep = 1; sweep <= config.burn_in; ++sweep) {
      mcmc_sweep(state, params, p, rng, config.scale_moves);
      if (sweep % kAdaptWindow == 0) {
        for (int i = 0; i < n; ++i) {
          const double rate = static_cast<double>(state.accepted[i] - acc_mark[i]) /
                              static_cast<double>(std::max(1L, state.proposed[i] - prop_mark[i]));
          state.step_sizes[i] *= std::exp(std::clamp(2.0 * (rate - kTargetAcceptance), -1.0, 1.0));
          acc_mark[i] = state.accepted[i];
          prop_mark[i] = state.proposed[i];
        }
        const double rate = static_cast<double>(state.scale_accepted - scale_acc_mark) /
                            static_cast<double>(std::max(1L, state.scale_proposed - scale_prop_mark));
        state.scale_step *= std::exp(std::clamp(2.0 * (rate - kTargetAcceptance), -1.0, 1.0));
        scale_acc_mark = state.scale_accepted;
        scale_prop_mark = state.scale_proposed;
      }
      if (sweep % kResyncPeriod == 0) state.log_density = log_f_p(params, p, state.position);
    }
    std::fill(state.accepted.begin(), state.accepted.end(), 0L);
    std::fill(state.proposed.begin(), state.proposed.end(), 0L);

    Eigen::MatrixXd out(n, counts[k]);
    long sweeps = 0;
    for (long s = 0; s < counts[k]; ++s) {
      for (long t = 0; t < config.thinning; ++t) {
        mcmc_sweep(state, params, p, rng, config.scale_moves);
        if (config.validate_cache) {
          const double fresh = log_f_p(params, p, state.position);
          if (std::abs(fresh - state.log_density) > 1e-8 * std::max(1.0, std::abs(fresh)))
            throw NumericalError("cached log density drifted from log_f_p");
        }
        if (++sweeps % kResyncPeriod == 0) state.log_density = log_f_p(params, p, state.position);
      }
      out.col(s) = state.position;
    }
    long acc = 0;
    long prop = 0;
    for (int i = 0; i < n; ++i) {
      acc += state.accepted[i];
      prop += state.proposed[i];
    }
    acceptance[k] = prop > 0 ? static_cast<double>(acc) / prop : 0.0;
    draws[k] = std::move(out);
  });

  SampleBatch batch;
  batch.params = params;
  batch.p = p;
  batch.points.resize(n, config.samples);
  long offset = 0;
  for (int k = 0; k < chains; ++k) {
    batch.points.middleCols(offset, counts[k]) = draws[k];
    offset += counts[k];
  }
  SamplerDiagnostics& diag = batch.diagnostics;
  diag.sampler = "mcmc";
  diag.chains = chains;
  diag.burn_in = config.burn_in;
  diag.thinning = config.thinning;
  diag.independent_draws = false;
  diag.chain_lengths = counts;
  diag.acceptance = acceptance;
  double mean_acc = 0.0;
  for (double v : acceptance) mean_acc += v;
  diag.mean_acceptance = mean_acc / chains;
  const Eigen::VectorXd norm_sq = batch.points.colwise().squaredNorm().transpose();
  diag.ess_norm_sq = batch_means(norm_sq, diag.layout()).ess;
  return batch;
}

SampleBatch mcmc_sample(const EnsembleParams& params, const Exponent& p, int n_chains, long n_samples,
                        std::uint64_t seed, long burn_in, long thinning) {
  McmcConfig config;
  config.chains = n_chains;
  config.samples = n_samples;
  config.seed = seed;
  config.burn_in = burn_in;
  config.thinning = thinning;
  return mcmc_sample(params, p, config);
}

}  // namespace schatten
