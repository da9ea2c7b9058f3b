#include <cmath>

#include <Eigen/Eigenvalues>

#include "schatten/errors.hpp"
#include "schatten/parallel.hpp"
#include "schatten/rng.hpp"
#include "schatten/samplers.hpp"

namespace schatten {

namespace {

constexpr long kBlocks = 16;

double chi(std::mt19937_64& rng, double dof) {
  std::chi_squared_distribution<double> dist(dof);
  return std::sqrt(dist(rng));
}

// Hermite model: (1/sqrt 2) tridiag(N(0,2); chi_{b(n-1)}, ..., chi_b) has eigenvalue density
// prod |l_i - l_j|^b exp(-sum l^2 / 2); x = l / sqrt 2 targets exp(-sum x^2).
void hermite_draw(const EnsembleParams& params, std::mt19937_64& rng, Eigen::Ref<Eigen::VectorXd> out) {
  const int n = params.n;
  std::normal_distribution<double> normal(0.0, std::sqrt(2.0));
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(std::max(n - 1, 0));
  for (int k = 0; k < n; ++k) diag[k] = normal(rng) / std::sqrt(2.0);
  for (int k = 0; k + 1 < n; ++k) sub[k] = chi(rng, static_cast<double>(params.b) * (n - 1 - k)) / std::sqrt(2.0);
  if (n == 1) {
    out[0] = diag[0] / std::sqrt(2.0);
    return;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  out = solver.eigenvalues() / std::sqrt(2.0);
}

// Laguerre model: B lower bidiagonal with diagonal chi_{c+1+b(n-1-k)} and subdiagonal chi_{b(n-1-k)}.
// The eigenvalues l of B B^T have density prod |l_i - l_j|^b prod l^{(c-1)/2} exp(-sum l / 2), so
// y = l / 2 matches the substitution y = x^2 and x = +-sqrt(y) with independent signs.
void laguerre_draw(const EnsembleParams& params, std::mt19937_64& rng, Eigen::Ref<Eigen::VectorXd> out) {
  const int n = params.n;
  Eigen::VectorXd alpha(n);
  Eigen::VectorXd beta_sub(std::max(n - 1, 0));
  for (int k = 0; k < n; ++k) alpha[k] = chi(rng, params.c + 1.0 + static_cast<double>(params.b) * (n - 1 - k));
  for (int k = 0; k + 1 < n; ++k) beta_sub[k] = chi(rng, static_cast<double>(params.b) * (n - 1 - k));
  Eigen::VectorXd lambda(n);
  if (n == 1) {
    lambda[0] = alpha[0] * alpha[0];
  } else {
    Eigen::VectorXd diag(n);
    Eigen::VectorXd sub(n - 1);
    for (int k = 0; k < n; ++k) diag[k] = alpha[k] * alpha[k] + (k > 0 ? beta_sub[k - 1] * beta_sub[k - 1] : 0.0);
    for (int k = 0; k + 1 < n; ++k) sub[k] = alpha[k] * beta_sub[k];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    lambda = solver.eigenvalues();
  }
  std::uint64_t bits = rng();
  for (int k = 0; k < n; ++k) {
    if (k % 64 == 0 && k > 0) bits = rng();
    const double mag = std::sqrt(std::max(lambda[k], 0.0) / 2.0);
    out[k] = (bits & 1ULL) ? -mag : mag;
    bits >>= 1;
  }
}

}  // namespace

bool exact_p2_available(const EnsembleParams& params) {
  return (params.a == 1 && params.c == 0) || params.a == 2;
}

SampleBatch exact_p2_sample(const EnsembleParams& params, long n_samples, std::uint64_t seed) {
  params.validate();
  if (!exact_p2_available(params))
    throw NotAvailable("no exact p=2 model for ensemble " + params.to_string());
  if (n_samples < 1) throw SpecificationError("exact_p2_sample needs at least one sample");
  SampleBatch batch;
  batch.params = params;
  batch.p = 2.0;
  batch.points.resize(params.n, n_samples);
  parallel_for(kBlocks, [&](std::size_t block) {
    const long lo = n_samples * static_cast<long>(block) / kBlocks;
    const long hi = n_samples * static_cast<long>(block + 1) / kBlocks;
    std::mt19937_64 rng = make_stream(seed, block);
    for (long s = lo; s < hi; ++s) {
      if (params.a == 1)
        hermite_draw(params, rng, batch.points.col(s));
      else
        laguerre_draw(params, rng, batch.points.col(s));
    }
  });
  SamplerDiagnostics& diag = batch.diagnostics;
  diag.sampler = "exact_p2";
  diag.independent_draws = true;
  diag.chain_lengths = {n_samples};
  diag.acceptance = {1.0};
  const Eigen::VectorXd norm_sq = batch.points.colwise().squaredNorm().transpose();
  diag.ess_norm_sq = batch_means(norm_sq, diag.layout()).ess;
  return batch;
}

}  // namespace schatten
