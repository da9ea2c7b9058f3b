#include <cmath>
#include <numbers>
#include <sstream>

#include "schatten/errors.hpp"
#include "schatten/gamma.hpp"
#include "schatten/rng.hpp"
#include "schatten/verify.hpp"

namespace schatten {

namespace {

enum EntryStat {
  kMeanSq,        // |a_ij|^2
  kSameRow,       // |a_ij|^2 |a_ik|^2, j != k
  kSameColumn,    // |a_ji|^2 |a_ki|^2, j != k
  kDisjoint,      // |a_ij|^2 |a_lk|^2, i != l, j != k
  kQuartic,       // Re(a_ij conj(a_lj) a_lk conj(a_ik)), i != l, j != k
  kDiagonalPair,  // Re(a_ii conj(a_jj)), i != j
  kDiagonalSq,    // |a_ii|^2
  kOffDiagonalSq, // |a_ij|^2, i != j
  kNormSq,
  kNormFourth,
  kStatCount
};

// Entry statistics averaged over all index tuples; each average has the law of a single tuple.
template <typename Scalar>
Eigen::VectorXd entry_stats(const Matrix<Scalar>& t) {
  const int n = static_cast<int>(t.rows());
  const double nn = n;
  Eigen::MatrixXd a2(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a2(i, j) = abs2(t(i, j));
  const double total = a2.sum();
  const double sq = a2.array().square().sum();
  const double rows = a2.rowwise().sum().squaredNorm();
  const double cols = a2.colwise().sum().squaredNorm();
  double quartic = 0.0;
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < n; ++l) {
      if (l == i) continue;
      for (int j = 0; j < n; ++j) {
        const Scalar left = t(i, j) * conj(t(l, j));
        for (int k = 0; k < n; ++k) {
          if (k == j) continue;
          quartic += real(left * t(l, k) * conj(t(i, k)));
        }
      }
    }
  double diag_pair = 0.0;
  double diag_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    diag_sq += a2(i, i);
    for (int j = 0; j < n; ++j)
      if (j != i) diag_pair += real(t(i, i) * conj(t(j, j)));
  }
  const double pairs = nn * nn * (nn - 1.0);
  const double disjoint = nn * (nn - 1.0) * nn * (nn - 1.0);
  Eigen::VectorXd s(kStatCount);
  s[kMeanSq] = total / (nn * nn);
  s[kSameRow] = (rows - sq) / pairs;
  s[kSameColumn] = (cols - sq) / pairs;
  s[kDisjoint] = (total * total - rows - cols + sq) / disjoint;
  s[kQuartic] = quartic / disjoint;
  s[kDiagonalPair] = diag_pair / (nn * (nn - 1.0));
  s[kDiagonalSq] = diag_sq / nn;
  s[kOffDiagonalSq] = (total - diag_sq) / (nn * (nn - 1.0));
  s[kNormSq] = total;
  s[kNormFourth] = total * total;
  return s;
}

double combined_se(const JointMean& joint, const Eigen::VectorXd& g) {
  return std::sqrt(std::max(0.0, g.dot(joint.covariance * g)));
}

Eigen::VectorXd unit_weights(std::initializer_list<std::pair<int, double>> entries) {
  Eigen::VectorXd g = Eigen::VectorXd::Zero(kStatCount);
  for (const auto& [k, w] : entries) g[k] += w;
  return g;
}

HitAndRunConfig matrix_config(const CheckBudget& budget, std::uint64_t stream) {
  HitAndRunConfig config = budget.matrix;
  config.seed = stream_seed(budget.seed, stream);
  return config;
}

}  // namespace

CheckReport check_entry_correlations(const SchattenSpec& spec, const CheckBudget& budget) {
  spec.validate();
  if (spec.subspace != Subspace::Full) throw DomainError("entry correlations are checked on full matrix spaces");
  if (spec.n < 2) throw DomainError("entry correlations need n >= 2");
  const HitAndRunConfig config = matrix_config(budget, 0xe47);
  std::vector<std::vector<Eigen::VectorXd>> per_chain(config.chains);
  const HitAndRunDiagnostics diag = matrix_hit_and_run_visit(spec, config, [&](int chain, const MatrixSample& t) {
    per_chain[chain].push_back(std::visit([](const auto& m) { return entry_stats(m); }, t));
  });
  Eigen::MatrixXd values(config.samples, static_cast<Eigen::Index>(kStatCount));
  long row = 0;
  for (const auto& chain : per_chain)
    for (const Eigen::VectorXd& s : chain) values.row(row++) = s.transpose();
  const JointMean joint = joint_batch_means(values, diag.layout());
  const Eigen::VectorXd& m = joint.mean;
  const double b = beta(spec.field);

  CheckReport report;
  report.claim = "entry_correlations";
  report.config = spec.to_string();
  report.method = CheckMethod::Mc;
  report.provenance = Provenance::Quoted;
  bool ok = true;
  double worst_sigma = 0.0;
  auto zero_within = [&](const std::string& name, const Eigen::VectorXd& g) {
    const double v = g.dot(m);
    const double s = combined_se(joint, g);
    report.values.push_back({name, v});
    report.values.push_back({name + "_se", s});
    worst_sigma = std::max(worst_sigma, s);
    if (std::abs(v) > 3.0 * s) ok = false;
  };
  zero_within("row_pair_identity_residual",
              unit_weights({{kSameRow, 1.0}, {kDisjoint, -1.0}, {kQuartic, -2.0 / b}}));
  zero_within("diagonal_offdiagonal_gap", unit_weights({{kDiagonalSq, 1.0}, {kOffDiagonalSq, -1.0}}));
  zero_within("row_column_gap", unit_weights({{kSameRow, 1.0}, {kSameColumn, -1.0}}));
  zero_within("diagonal_product", unit_weights({{kDiagonalPair, 1.0}}));

  const double sq = m[kMeanSq];
  report.lhs = {m[kSameRow]};
  report.rhs = {sq * sq};
  if (spec.p.is_infinite()) {
    // E|a_ij|^2|a_ik|^2 < E|a_ij|^2 E|a_ik|^2 under the premises c4 < 2 and sigma^2 < n.
    Eigen::VectorXd g = unit_weights({{kSameRow, 1.0}});
    g[kMeanSq] = -2.0 * sq;
    const double gap = m[kSameRow] - sq * sq;
    const double s = combined_se(joint, g);
    const CubeMoments cm = cube_moments({2, beta(spec.field), beta(spec.field) - 1, spec.n});
    const double c4 = cm.fourth / (cm.second * cm.second);
    const double d = static_cast<double>(spec.real_dimension());
    const double n2 = m[kNormSq];
    const double sigma_sq = d * (m[kNormFourth] - n2 * n2) / (n2 * n2);
    report.values.push_back({"row_gap", gap});
    report.values.push_back({"row_gap_se", s});
    report.values.push_back({"row_gap_significance", s > 0.0 ? -gap / s : 0.0});
    report.values.push_back({"c4_closed_form", c4});
    report.values.push_back({"sigma_sq", sigma_sq});
    worst_sigma = std::max(worst_sigma, s);
    if (!(c4 < 2.0 && sigma_sq < spec.n)) {
      ok = false;
      report.note = "premises c4 < 2 and sigma^2 < n not met";
    }
    if (gap + 3.0 * s >= 0.0) ok = false;
  } else if (spec.p.value() == 2.0) {
    zero_within("quartic", unit_weights({{kQuartic, 1.0}}));
    zero_within("row_disjoint_gap", unit_weights({{kSameRow, 1.0}, {kDisjoint, -1.0}}));
  }
  report.sigma = worst_sigma;
  report.tolerance = 3.0 * worst_sigma;
  report.pass = ok;
  return report;
}

CheckReport check_antisym_normalization(int n, const Exponent& p, const CheckBudget& budget) {
  const SchattenSpec spec{Field::Complex, Subspace::AntiSymHermitian, n, p};
  spec.validate();
  const EnsembleMapping mapping = ensemble_of(spec);

  // Route A: uniform samples of the matrix ball.
  const HitAndRunConfig config = matrix_config(budget, 0xa57);
  std::vector<std::vector<double>> per_chain(config.chains);
  const HitAndRunDiagnostics diag = matrix_hit_and_run_visit(spec, config, [&](int chain, const MatrixSample& t) {
    per_chain[chain].push_back(std::visit([](const auto& m) { return frobenius_sq(m); }, t));
  });
  Eigen::VectorXd norm_sq(config.samples);
  long k = 0;
  for (const auto& chain : per_chain)
    for (double v : chain) norm_sq[k++] = v;
  const SeriesMean direct = batch_means(norm_sq, diag.layout());

  // Route B: gas moment of the paired singular values.
  const double D = static_cast<double>(spec.real_dimension());
  const double m = mapping.multiplicity;
  double factor = m;
  if (p.is_finite()) factor *= std::pow(m, -2.0 / p.value()) * gamma_ratio(D, p.value(), 2.0).value;
  const Functional f = Functional::euclidean_power(2.0);
  MomentEstimate gas;
  std::string route;
  if (mapping.params.n <= 3) {
    gas = quadrature_moment(mapping.params, p, f, 1e-8);
    route = "quadrature";
  } else {
    gas = estimate_moment(gas_sample(mapping.params, p, budget.gas, stream_seed(budget.seed, 0xa58)), f);
    route = "mcmc";
  }
  const double via_gas = factor * gas.value;
  const double s = std::hypot(direct.std_err, factor * gas.std_err);

  CheckReport report;
  report.claim = "antisym_normalization";
  report.config = spec.to_string();
  report.lhs = {direct.mean};
  report.rhs = {via_gas};
  report.sigma = s;
  report.tolerance = 3.0 * s;
  report.method = CheckMethod::Mc;
  report.provenance = Provenance::Oracle;
  report.pass = std::abs(direct.mean - via_gas) <= 3.0 * s;
  report.values = {{"hit_and_run_se", direct.std_err}, {"gas_moment", gas.value}, {"factor", factor}};
  report.note = "gas route by " + route;
  return report;
}

double isotropic_constant_target() { return 1.0 / std::sqrt(std::numbers::pi * std::exp(1.5)); }

double quoted_volume_root(Field field, int n) {
  if (n < 1) throw SpecificationError("n must be positive");
  const double e32 = std::exp(1.5);
  switch (field) {
    case Field::Real: return 0.5 * std::sqrt(2.0 * std::numbers::pi * e32 / n);
    case Field::Complex: return 0.5 * std::sqrt(std::numbers::pi * e32 / n);
    default: throw DomainError("volume asymptotics are quoted for R and C only");
  }
}

CheckReport check_isotropic_constant_limit(Field field, int n, const CheckBudget& budget, double rel_tol) {
  const double root = quoted_volume_root(field, n);
  const int b = beta(field);
  const EnsembleParams params{2, b, b - 1, n};
  const Exponent inf = Exponent::infinity();
  const SampleBatch batch = gas_sample(params, inf, budget.gas, stream_seed(budget.seed, 0x150));
  const MomentEstimate e = estimate_moment(batch, Functional::euclidean_power(2.0));
  const double d = static_cast<double>(params.total_degree());
  const double scale = 1.0 / (d * root * root);
  const double L = std::sqrt(e.value * scale);
  const double L_se = 0.5 * L * e.std_err / e.value;
  const double closed = n * cube_moments(params).second;
  const double target = isotropic_constant_target();

  CheckReport report;
  report.claim = "isotropic_constant_limit";
  report.config = "field=" + to_string(field) + " n=" + std::to_string(n) + " p=inf";
  report.lhs = {L};
  report.rhs = {target};
  report.sigma = L_se;
  report.tolerance = rel_tol * target;
  report.method = CheckMethod::Mc;
  report.provenance = Provenance::Quoted;
  report.pass = std::abs(L - target) <= rel_tol * target;
  report.values = {{"L", L},
                   {"mean_norm_sq", e.value},
                   {"mean_norm_sq_se", e.std_err},
                   {"mean_norm_sq_closed_form", closed},
                   {"L_closed_form", std::sqrt(closed * scale)},
                   {"volume_root", root},
                   {"consistency_residual", d * L * L * root * root - e.value},
                   {"relative_error", (L - target) / target}};
  report.note = batch.diagnostics.sampler;
  return report;
}

}  // namespace schatten
