#include <algorithm>
#include <cmath>
#include <map>

#include <Eigen/Eigenvalues>

#include "schatten/errors.hpp"
#include "schatten/gamma.hpp"
#include "schatten/moments.hpp"
#include "schatten/parallel.hpp"

namespace schatten {

namespace {

constexpr int kRulePoints = 12;
constexpr double kTailTarget = 1e-18;
constexpr int kMaxRadialPanelsFinite = 64;
constexpr int kMaxRadialPanelsCube = 32;

// Composite rule on [lo, hi] with `panels` equal panels.
struct Composite {
  std::vector<double> nodes;
  std::vector<double> weights;
};

Composite composite(const GaussRule& rule, double lo, double hi, int panels) {
  Composite c;
  const double width = (hi - lo) / panels;
  for (int k = 0; k < panels; ++k) {
    const double mid = lo + (k + 0.5) * width;
    for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) {
      c.nodes.push_back(mid + 0.5 * width * rule.nodes[i]);
      c.weights.push_back(0.5 * width * rule.weights[i]);
    }
  }
  return c;
}

// log of the bound Gamma(A, z)/Gamma(A) <= z^{A-1} e^{-z} / (Gamma(A) (1 - (A-1)/z)), z > A - 1.
double log_tail_bound(double A, double z) {
  double v = (A - 1.0) * std::log(z) - z - log_gamma(A);
  if (A > 1.0) v -= std::log1p(-(A - 1.0) / z);
  return v;
}

// Smallest z (to bisection accuracy) with the tail bound below the target.
double truncation_z(double A) {
  const double target = std::log(kTailTarget);
  double lo = std::max(A, 1.0);
  double hi = 2.0 * lo + 60.0;
  while (log_tail_bound(A, hi) > target) hi *= 2.0;
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (log_tail_bound(A, mid) > target) lo = mid;
    else hi = mid;
  }
  return hi;
}

struct Plan {
  EnsembleParams params;
  Exponent p = 2.0;
  std::vector<Functional> functionals;
  std::vector<double> degrees;     // distinct radial degrees s
  std::vector<int> degree_index;   // functional -> entry of `degrees`, last entry of functionals is "1"
  std::vector<double> shift;       // per degree, max of the radial log integrand at S = 1
  std::vector<Eigen::VectorXd> signs;
  double radius = 1.0;
  double tail = 0.0;
};

struct LevelResult {
  std::vector<double> sums;  // per functional, scaled by exp(-shift)
  long evaluations = 0;
};

LevelResult integrate_level(const Plan& plan, const GaussRule& rule, int level) {
  const int n = plan.params.n;
  const double d = static_cast<double>(plan.params.total_degree());
  const bool cube = plan.p.is_infinite();
  const double pv = cube ? 0.0 : plan.p.value();
  const int radial_panels = cube ? std::min(2 << level, kMaxRadialPanelsCube)
                                 : std::min(8 << level, kMaxRadialPanelsFinite);
  const Composite radial = composite(rule, 0.0, plan.radius, radial_panels);
  const Composite angular = composite(rule, 0.0, 1.0, 1 << level);
  const std::size_t nr = radial.nodes.size();
  const std::size_t nt = angular.nodes.size();
  const std::size_t nf = plan.functionals.size();
  const std::size_t ns = plan.degrees.size();

  std::vector<double> log_r(nr);
  std::vector<double> r_pow(nr);
  for (std::size_t k = 0; k < nr; ++k) {
    log_r[k] = std::log(radial.nodes[k]);
    r_pow[k] = cube ? 0.0 : std::pow(radial.nodes[k], pv);
  }

  // Outer jobs run over the first angular variable (or a single job for n = 1).
  const std::size_t outer = n >= 2 ? nt : 1;
  const std::size_t inner = n >= 3 ? nt : 1;
  std::vector<std::vector<double>> partial(outer, std::vector<double>(nf, 0.0));

  parallel_for(outer, [&](std::size_t i) {
    Eigen::VectorXd tau(n);
    Eigen::VectorXd x(n);
    std::vector<double> radial_integral(ns);
    std::vector<double>& acc = partial[i];
    for (std::size_t j = 0; j < inner; ++j) {
      // tau_n = 1, tau_k = tau_{k+1} t_k; t_{n-1} is the outer variable.
      double weight = 1.0;
      tau[n - 1] = 1.0;
      if (n >= 2) {
        tau[n - 2] = angular.nodes[i];
        weight *= angular.weights[i];
      }
      if (n >= 3) {
        tau[n - 3] = tau[n - 2] * angular.nodes[j];
        weight *= angular.weights[j] * tau[n - 2];
      }
      double S = 0.0;
      if (!cube)
        for (int k = 0; k < n; ++k) S += std::pow(tau[k], pv);

      for (std::size_t s = 0; s < ns; ++s) {
        const double power = d + plan.degrees[s] - 1.0;
        double sum = 0.0;
        for (std::size_t k = 0; k < nr; ++k) {
          const double e = power * log_r[k] - (cube ? 0.0 : r_pow[k] * S) - plan.shift[s];
          sum += radial.weights[k] * std::exp(e);
        }
        radial_integral[s] = sum;
      }

      for (const Eigen::VectorXd& sign : plan.signs) {
        x = sign.cwiseProduct(tau);
        const double lf = log_f(plan.params, x);
        if (!std::isfinite(lf)) continue;
        const double base = weight * std::exp(lf);
        for (std::size_t f = 0; f < nf; ++f)
          acc[f] += base * plan.functionals[f].symmetrized(x) * radial_integral[plan.degree_index[f]];
      }
    }
  });

  LevelResult result;
  result.sums.assign(nf, 0.0);
  for (std::size_t i = 0; i < outer; ++i)
    for (std::size_t f = 0; f < nf; ++f) result.sums[f] += partial[i][f];
  result.evaluations = static_cast<long>(outer * inner * plan.signs.size());
  return result;
}

std::vector<double> ratios(const Plan& plan, const LevelResult& level) {
  const std::size_t nf = plan.functionals.size();
  const double norm = level.sums[nf - 1];
  const double norm_shift = plan.shift[plan.degree_index[nf - 1]];
  std::vector<double> out(nf - 1);
  for (std::size_t f = 0; f + 1 < nf; ++f)
    out[f] = level.sums[f] / norm * std::exp(plan.shift[plan.degree_index[f]] - norm_shift);
  return out;
}

}  // namespace

GaussRule gauss_legendre(int points) {
  if (points < 1) throw SpecificationError("Gauss-Legendre rule needs at least one point");
  // Golub-Welsch: eigenvalues of the Jacobi matrix of the Legendre recurrence.
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(points);
  Eigen::VectorXd sub(std::max(points - 1, 0));
  for (int k = 1; k < points; ++k) sub[k - 1] = k / std::sqrt(4.0 * k * k - 1.0);
  GaussRule rule;
  if (points == 1) {
    rule.nodes = Eigen::VectorXd::Zero(1);
    rule.weights = Eigen::VectorXd::Constant(1, 2.0);
    return rule;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  rule.nodes = solver.eigenvalues();
  rule.weights = 2.0 * solver.eigenvectors().row(0).transpose().array().square();
  return rule;
}

QuadratureResult quadrature_moments(const EnsembleParams& params, const Exponent& p,
                                    const std::vector<Functional>& functionals, double abs_tol, int max_level) {
  params.validate();
  if (params.n > 3) throw SpecificationError("quadrature oracle supports n <= 3");
  if (!(abs_tol > 0.0)) throw SpecificationError("quadrature tolerance must be positive");
  if (max_level <= 0) max_level = params.n <= 2 ? 8 : 6;
  const int n = params.n;
  const double d = static_cast<double>(params.total_degree());

  Plan plan;
  plan.params = params;
  plan.p = p;
  plan.functionals = functionals;
  plan.functionals.push_back(Functional::one());
  std::map<double, int> seen;
  for (const Functional& f : plan.functionals) {
    const double s = f.degree();
    auto it = seen.find(s);
    if (it == seen.end()) {
      it = seen.emplace(s, static_cast<int>(plan.degrees.size())).first;
      plan.degrees.push_back(s);
    }
    plan.degree_index.push_back(it->second);
  }
  for (double s : plan.degrees) {
    const double power = d + s - 1.0;
    if (p.is_infinite() || power <= 0.0) {
      plan.shift.push_back(0.0);
    } else {
      const double q = power / p.value();
      plan.shift.push_back(q * (std::log(q) - 1.0));
    }
  }
  if (p.is_finite()) {
    // max_i |x_i| > R forces ||x||_p > R, whose relative mass under an s-homogeneous weight is
    // the regularized upper incomplete gamma Q((d+s)/p, R^p).
    double worst = -std::numeric_limits<double>::infinity();
    double z = 0.0;
    for (double s : plan.degrees) z = std::max(z, truncation_z((d + s) / p.value()));
    for (double s : plan.degrees) worst = std::max(worst, log_tail_bound((d + s) / p.value(), z));
    plan.radius = std::pow(z, 1.0 / p.value());
    plan.tail = std::exp(worst);
  }

  if (params.a % 2 == 0) {
    plan.signs.push_back(Eigen::VectorXd::Ones(n));
  } else {
    for (int mask = 0; mask < (1 << n); ++mask) {
      Eigen::VectorXd sign(n);
      for (int k = 0; k < n; ++k) sign[k] = (mask >> k) & 1 ? -1.0 : 1.0;
      plan.signs.push_back(sign);
    }
  }

  const GaussRule rule = gauss_legendre(kRulePoints);
  std::vector<double> previous;
  long evaluations = 0;
  double worst_gap = 0.0;
  for (int level = 0; level <= max_level; ++level) {
    const LevelResult result = integrate_level(plan, rule, level);
    evaluations += result.evaluations;
    const std::vector<double> current = ratios(plan, result);
    if (!previous.empty()) {
      worst_gap = 0.0;
      bool ok = true;
      std::vector<double> errors(current.size());
      for (std::size_t f = 0; f < current.size(); ++f) {
        const double gap = std::abs(current[f] - previous[f]);
        // Truncation perturbs numerator and denominator by at most their tail fractions.
        errors[f] = gap + 2.0 * plan.tail * std::abs(current[f]);
        worst_gap = std::max(worst_gap, errors[f]);
        if (!(errors[f] <= 0.5 * abs_tol)) ok = false;
      }
      if (ok) {
        QuadratureResult out;
        out.level = level;
        out.truncation_radius = plan.radius;
        out.tail_bound = plan.tail;
        for (std::size_t f = 0; f < current.size(); ++f) {
          MomentEstimate m;
          m.functional = functionals[f].id();
          m.value = current[f];
          m.std_err = errors[f];
          m.n_samples = evaluations;
          m.method = EstimateMethod::Quadrature;
          out.moments.push_back(m);
        }
        return out;
      }
    }
    previous = current;
  }
  throw OracleFailure("quadrature did not reach tolerance " + std::to_string(abs_tol) + " for " +
                      params.to_string() + " at p=" + p.to_string() + " (last error estimate " +
                      std::to_string(worst_gap) + ")");
}

MomentEstimate quadrature_moment(const EnsembleParams& params, const Exponent& p, const Functional& f,
                                 double abs_tol) {
  return quadrature_moments(params, p, {f}, abs_tol).moments.front();
}

}  // namespace schatten
