#include <cmath>
#include <sstream>

#include "schatten/errors.hpp"
#include "schatten/verify.hpp"

namespace schatten {

namespace {

struct Term {
  double weight = 1.0;
  Functional f;
};

std::string describe(const EnsembleParams& params, const Exponent& p) {
  return "ensemble=" + params.to_string() + " p=" + p.to_string();
}

// Compares sum(lhs) with sum(rhs), both sides built from moment ratios of one ensemble.
CheckReport compare_terms(const std::string& claim, const EnsembleParams& params, const Exponent& p,
                          const std::vector<Term>& lhs, const std::vector<Term>& rhs, CheckMethod method,
                          double tolerance, const CheckBudget& budget) {
  if (method == CheckMethod::Auto) method = params.n <= 3 ? CheckMethod::Quadrature : CheckMethod::Mc;
  std::vector<Functional> functionals;
  Eigen::VectorXd wl(static_cast<Eigen::Index>(lhs.size() + rhs.size()));
  Eigen::VectorXd wr = Eigen::VectorXd::Zero(wl.size());
  wl.setZero();
  Eigen::Index k = 0;
  for (const Term& t : lhs) {
    functionals.push_back(t.f);
    wl[k++] = t.weight;
  }
  for (const Term& t : rhs) {
    functionals.push_back(t.f);
    wr[k++] = t.weight;
  }

  CheckReport report;
  report.claim = claim;
  report.config = describe(params, p);
  report.method = method;
  report.provenance = Provenance::Oracle;

  if (method == CheckMethod::Quadrature) {
    // A coarse pass fixes the magnitudes, so the tolerance handed to the oracle can respect both the
    // requested accuracy and the floating-point floor of large moments.
    const QuadratureResult coarse = quadrature_moments(params, p, functionals, 1e30);
    double largest = 0.0;
    for (const MomentEstimate& m : coarse.moments) largest = std::max(largest, std::abs(m.value));
    const double weight_sum = wl.cwiseAbs().sum() + wr.cwiseAbs().sum();
    const double qtol = std::max(tolerance / (4.0 * weight_sum), 1e-13 * largest);
    const QuadratureResult fine = quadrature_moments(params, p, functionals, qtol);
    Eigen::VectorXd values(wl.size());
    Eigen::VectorXd errors(wl.size());
    for (Eigen::Index i = 0; i < values.size(); ++i) {
      values[i] = fine.moments[i].value;
      errors[i] = fine.moments[i].std_err;
    }
    const double l = wl.dot(values);
    const double r = wr.dot(values);
    report.lhs = {l};
    report.rhs = {r};
    report.tolerance = tolerance;
    report.pass = std::abs(l - r) <= tolerance;
    report.values.push_back({"difference", l - r});
    report.values.push_back({"quadrature_error", wl.cwiseAbs().dot(errors) + wr.cwiseAbs().dot(errors)});
    report.values.push_back({"quadrature_level", static_cast<double>(fine.level)});
    for (std::size_t i = 0; i < functionals.size(); ++i)
      report.values.push_back({"M(" + functionals[i].id() + ")", values[static_cast<Eigen::Index>(i)]});
    return report;
  }
  if (method != CheckMethod::Mc) throw SpecificationError(claim + " supports quadrature or mc");

  const SampleBatch batch = gas_sample(params, p, budget.gas, budget.seed);
  const JointMoments jm = estimate_moments(batch, functionals);
  const DerivedEstimate l = linear_combination(jm, wl);
  const DerivedEstimate r = linear_combination(jm, wr);
  const DerivedEstimate diff = linear_combination(jm, wl - wr);
  report.lhs = {l.value};
  report.rhs = {r.value};
  report.sigma = diff.std_err;
  report.tolerance = 3.0 * diff.std_err;
  report.pass = std::abs(diff.value) <= report.tolerance;
  report.values.push_back({"difference", diff.value});
  report.values.push_back({"samples", static_cast<double>(batch.size())});
  report.values.push_back({"ess_norm_sq", batch.diagnostics.ess_norm_sq});
  report.note = batch.diagnostics.sampler;
  return report;
}

void require_identity_domain(const EnsembleParams& params, const Exponent& p) {
  params.validate();
  if (params.a != 2) throw DomainError("the moment identities need a = 2");
  if (p.is_infinite()) throw DomainError("the moment identities need a finite p");
}

}  // namespace

CheckReport check_identity1(const EnsembleParams& params, const Exponent& p, CheckMethod method, double tolerance,
                            const CheckBudget& budget) {
  require_identity_domain(params, p);
  const double n = params.n;
  const double d = static_cast<double>(params.total_degree());
  const double kappa = (2.0 * d + (1.0 - params.c) * n) / n;
  const double pv = p.value();
  return compare_terms("identity1", params, p, {{kappa, Functional::euclidean_power(2.0)}},
                       {{pv, Functional::lp_sum(pv + 2.0)}}, method, tolerance, budget);
}

CheckReport check_identity2(const EnsembleParams& params, const Exponent& p, CheckMethod method, double tolerance,
                            const CheckBudget& budget) {
  require_identity_domain(params, p);
  const double n = params.n;
  const double d = static_cast<double>(params.total_degree());
  const double kappa = (2.0 * d + (1.0 - params.c) * n) / n;
  const double pv = p.value();
  return compare_terms("identity2", params, p, {{kappa, Functional::euclidean_power(4.0)}},
                       {{pv, Functional::euclidean_power(2.0) * Functional::lp_sum(pv + 2.0)},
                        {-2.0, Functional::lp_sum(4.0)}},
                       method, tolerance, budget);
}

CheckReport check_identity3(const EnsembleParams& params, const Exponent& p, CheckMethod method, double tolerance,
                            const CheckBudget& budget) {
  require_identity_domain(params, p);
  const double n = params.n;
  const double d = static_cast<double>(params.total_degree());
  const double kappa = (2.0 * d + (3.0 - params.c) * n) / n;
  const double pv = p.value();
  std::vector<Term> rhs = {{pv, Functional::lp_sum(pv + 4.0)}};
  if (params.n >= 2) rhs.push_back({-(d - (params.c + 1.0) * n), Functional::pair_product(2.0)});
  return compare_terms("identity3", params, p, {{kappa, Functional::lp_sum(4.0)}}, rhs, method, tolerance, budget);
}

CheckReport check_int_by_parts(const EnsembleParams& params, const Exponent& p, double xi, const Functional& f,
                               double tolerance) {
  params.validate();
  if (p.is_infinite()) throw DomainError("integration by parts needs a finite p");
  if (!(xi > 0.0)) throw DomainError("integration by parts check needs xi > 0");
  if (params.n > 3) throw SpecificationError("integration by parts check runs on the quadrature oracle (n <= 3)");
  const double pv = p.value();
  std::vector<Term> rhs = {{pv, f * Functional::lp_sum(xi + pv)}};
  // sum_i |x_i|^xi x_i d_i f for f = coefficient * ||x||_2^k is k f ||x||_2^{-2} sum |x_i|^{xi+2}.
  if (!f.atoms().empty()) {
    const auto& atoms = f.atoms();
    if (atoms.size() != 1 || atoms[0].kind != AtomKind::NormPower || !(atoms[0].q == Exponent(2.0)))
      throw SpecificationError("integration by parts check supports f = 1 or f = ||x||_2^k");
    const double k = atoms[0].k;
    Functional deriv = Functional::lp_sum(xi + 2.0).scaled(k * f.coefficient());
    if (k != 2.0) deriv = deriv * Functional::euclidean_power(k - 2.0);
    rhs.push_back({-1.0, deriv});
  }
  if (params.n >= 2)
    rhs.push_back({-static_cast<double>(params.a) * params.b, f * Functional::pair_quotient(params.a, xi)});
  std::ostringstream claim;
  claim << "int_by_parts";
  CheckReport report = compare_terms(claim.str(), params, p, {{xi + params.c + 1.0, f * Functional::lp_sum(xi)}},
                                     rhs, CheckMethod::Quadrature, tolerance, {});
  std::ostringstream cfg;
  cfg.precision(17);
  cfg << report.config << " xi=" << xi << " f=" << f.id();
  report.config = cfg.str();
  return report;
}

CheckReport check_homogeneous_moment(const EnsembleParams& params, const Exponent& p, double l, const Functional& f,
                                     double tolerance) {
  params.validate();
  if (p.is_infinite()) throw DomainError("the homogeneous moment formula needs a finite p");
  const double d = static_cast<double>(params.total_degree());
  const double s = f.degree();
  const Functional g = Functional::norm_power(p, l) * f;
  const QuadratureResult coarse = quadrature_moments(params, p, {g, f}, 1e30);
  const double qtol = std::max(tolerance * std::abs(coarse.moments[1].value) / 8.0,
                               1e-13 * std::max(std::abs(coarse.moments[0].value), 1.0));
  const QuadratureResult q = quadrature_moments(params, p, {g, f}, qtol);
  const double num = q.moments[0].value;
  const double den = q.moments[1].value;
  const double ratio = num / den;
  const double expected = closed_form_moment(d, s, l, p);

  CheckReport report;
  report.claim = "homogeneous_moment";
  std::ostringstream cfg;
  cfg.precision(17);
  cfg << describe(params, p) << " l=" << l << " f=" << f.id();
  report.config = cfg.str();
  report.lhs = {ratio};
  report.rhs = {expected};
  report.tolerance = tolerance;
  report.method = CheckMethod::Quadrature;
  report.provenance = Provenance::ClosedForm;
  report.pass = std::abs(ratio - expected) <= tolerance;
  report.values.push_back({"quadrature_error", (q.moments[0].std_err + std::abs(ratio) * q.moments[1].std_err) /
                                                   std::abs(den)});
  return report;
}

CheckReport check_hermitian_split(int n, const Exponent& p, double xi, double tolerance) {
  if (n < 1 || n > 3) throw SpecificationError("hermitian split check runs on the quadrature oracle (1 <= n <= 3)");
  if (!(xi > 0.0)) throw DomainError("hermitian split check needs xi > 0");
  const Functional f = Functional::lp_sum(xi);
  const double qtol = tolerance / 20.0;
  const MomentEstimate whole = quadrature_moment({1, 2, 0, n}, p, f, qtol);
  const MomentEstimate first = quadrature_moment({2, 2, 0, (n + 1) / 2}, p, f, qtol);
  double rhs = first.value;
  double err = whole.std_err + first.std_err;
  if (n / 2 >= 1) {
    const MomentEstimate second = quadrature_moment({2, 2, 2, n / 2}, p, f, qtol);
    rhs += second.value;
    err += second.std_err;
  }
  CheckReport report;
  report.claim = "hermitian_split";
  std::ostringstream cfg;
  cfg.precision(17);
  cfg << "n=" << n << " p=" << p.to_string() << " xi=" << xi;
  report.config = cfg.str();
  report.lhs = {whole.value};
  report.rhs = {rhs};
  report.tolerance = tolerance;
  report.method = CheckMethod::Quadrature;
  report.provenance = Provenance::Oracle;
  report.pass = std::abs(whole.value - rhs) <= tolerance;
  report.values.push_back({"quadrature_error", err});
  return report;
}

}  // namespace schatten
