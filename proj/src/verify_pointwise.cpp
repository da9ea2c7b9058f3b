#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "schatten/errors.hpp"
#include "schatten/gamma.hpp"
#include "schatten/matrix_lab.hpp"
#include "schatten/rng.hpp"
#include "schatten/verify.hpp"

namespace schatten {

namespace {

constexpr double kPointwiseSlack = 1e-12;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

double zeta_lower(int a, double xi) {
  const double mid = (a + xi) / (2.0 * a);
  return std::min(a % 2 != 0 ? 0.5 : 1.0, mid);
}

double zeta_upper(int a, double xi) { return std::max(1.0, (a + xi) / (2.0 * a)); }

CheckReport check_zeta_bounds(int a, double xi, long trials, std::uint64_t seed) {
  if (a < 1) throw DomainError("zeta bounds need a >= 1");
  if (!(xi >= 0.0)) throw DomainError("zeta bounds need xi >= 0");
  if (trials < 1) throw SpecificationError("zeta bounds need at least one trial");
  const double lo = zeta_lower(a, xi);
  const double hi = zeta_upper(a, xi);
  std::mt19937_64 rng = make_stream(seed, 0x2e7a);
  std::normal_distribution<double> normal(0.0, 1.0);
  double min_ratio = std::numeric_limits<double>::infinity();
  double max_ratio = -std::numeric_limits<double>::infinity();
  long violations = 0;
  long used = 0;
  for (long t = 0; t < trials; ++t) {
    const double u = normal(rng) * std::exp(normal(rng));
    double v = 0.0;
    switch (t % 3) {
      case 0: v = normal(rng) * std::exp(normal(rng)); break;
      case 1: v = u * (1.0 + 1e-3 * normal(rng)); break;          // nearly coincident
      default: v = -u * std::exp(0.5 * normal(rng)); break;        // opposite signs
    }
    if (u == v || ipow(u, a) == ipow(v, a)) continue;
    ++used;
    const double middle = pair_quotient_term(u, v, a, xi);
    const double scale = std::pow(std::abs(u), xi) + std::pow(std::abs(v), xi);
    const double ratio = middle / scale;
    min_ratio = std::min(min_ratio, ratio);
    max_ratio = std::max(max_ratio, ratio);
    if (ratio < lo * (1.0 - kPointwiseSlack) || ratio > hi * (1.0 + kPointwiseSlack)) ++violations;
  }
  CheckReport report;
  report.claim = "zeta_bounds";
  report.config = "a=" + std::to_string(a) + " xi=" + fmt(xi) + " trials=" + std::to_string(trials);
  report.lhs = {min_ratio, max_ratio};
  report.rhs = {lo, hi};
  report.tolerance = kPointwiseSlack;
  report.method = CheckMethod::Pointwise;
  report.provenance = Provenance::ClosedForm;
  report.pass = violations == 0 && used > 0;
  report.values = {{"zeta1", lo}, {"zeta2", hi}, {"violations", static_cast<double>(violations)},
                   {"pairs", static_cast<double>(used)}};
  return report;
}

CheckReport check_holder_band(const Exponent& p, int n, long trials, std::uint64_t seed) {
  if (p.is_infinite()) throw DomainError("the Holder band needs a finite p");
  if (n < 1 || trials < 1) throw SpecificationError("the Holder band needs n >= 1 and trials >= 1");
  const double pv = p.value();
  std::mt19937_64 rng = make_stream(seed, 0x401d);
  std::normal_distribution<double> normal(0.0, 1.0);
  double max_upper = 0.0;  // max ||x||_{p+2}^{p+2} / ||x||_p^{p+2}
  double min_lower = std::numeric_limits<double>::infinity();  // min ||x||_{p+2}^{p+2} / (||x||_p^{p+2} n^{-2/p})
  Eigen::VectorXd x(n);
  for (long t = 0; t < trials; ++t) {
    switch (t % 5) {
      case 0: x = Eigen::VectorXd::Unit(n, 0); break;
      case 1: x = Eigen::VectorXd::Ones(n); break;
      case 2: for (int i = 0; i < n; ++i) x[i] = normal(rng); break;
      case 3: for (int i = 0; i < n; ++i) x[i] = normal(rng) * std::exp(2.0 * normal(rng)); break;
      default:
        x.setZero();
        x[static_cast<int>(rng() % n)] = normal(rng);
        x[static_cast<int>(rng() % n)] += normal(rng);
    }
    const double sp = lp_sum(x, pv);
    if (!(sp > 0.0)) continue;
    const double big = std::pow(sp, (pv + 2.0) / pv);
    const double mid = lp_sum(x, pv + 2.0);
    max_upper = std::max(max_upper, mid / big);
    min_lower = std::min(min_lower, mid / (big * std::pow(static_cast<double>(n), -2.0 / pv)));
  }
  CheckReport report;
  report.claim = "holder_band";
  report.config = "p=" + p.to_string() + " n=" + std::to_string(n) + " trials=" + std::to_string(trials);
  report.lhs = {max_upper, min_lower};
  report.rhs = {1.0, 1.0};
  report.tolerance = kPointwiseSlack;
  report.method = CheckMethod::Pointwise;
  report.provenance = Provenance::ClosedForm;
  report.pass = max_upper <= 1.0 + kPointwiseSlack && min_lower >= 1.0 - kPointwiseSlack;
  return report;
}

GammaGrid GammaGrid::log_spaced(double lo, double hi, int per_decade) {
  GammaGrid grid;
  const int steps = static_cast<int>(std::lround(std::log10(hi / lo) * per_decade));
  for (int k = 0; k <= steps; ++k) {
    const double v = lo * std::pow(10.0, static_cast<double>(k) / per_decade);
    grid.d.push_back(v);
    grid.p.push_back(v);
  }
  return grid;
}

CheckReport check_gamma_estimates(const GammaGrid& grid, double band_lo, double band_hi, double discrepancy_c) {
  double alpha = std::numeric_limits<double>::infinity();
  double gamma = 0.0;
  double worst_discrepancy = 0.0;
  long nonpositive = 0;
  long points = 0;
  for (double d : grid.d) {
    for (double p : grid.p) {
      ++points;
      const double gap = gamma_gap(d, p);
      if (!(gap > 0.0)) ++nonpositive;
      const double r2 = gamma_ratio(d, p, 2.0).value;
      const double normalized = gap / (r2 * r2);
      alpha = std::min(alpha, normalized * p * (p + d));
      gamma = std::max(gamma, normalized * p * d);
      if (d < grid.min_discrepancy_d) continue;
      for (double q : grid.q) {
        const GammaRatio g = gamma_ratio(d, p, q);
        worst_discrepancy = std::max(worst_discrepancy, std::abs(std::pow(g.discrepancy, 1.0 / q) - 1.0) * d / q);
      }
    }
  }
  CheckReport report;
  report.claim = "gamma_estimates";
  report.config = "grid=" + std::to_string(grid.d.size()) + "x" + std::to_string(grid.p.size());
  report.lhs = {alpha, gamma, worst_discrepancy};
  report.rhs = {band_lo, band_hi, discrepancy_c};
  report.tolerance = 0.0;
  report.method = CheckMethod::ClosedForm;
  report.provenance = Provenance::ClosedForm;
  report.pass = nonpositive == 0 && alpha >= band_lo && gamma <= band_hi && worst_discrepancy <= discrepancy_c;
  report.values = {{"alpha_min", alpha}, {"gamma_max", gamma}, {"discrepancy_c", worst_discrepancy},
                   {"nonpositive_gaps", static_cast<double>(nonpositive)}, {"points", static_cast<double>(points)}};
  return report;
}

CheckReport check_entry_identities(Field field, int n, long trials, std::uint64_t seed, double rel_tol) {
  if (n < 1 || trials < 1) throw SpecificationError("entry identities need n >= 1 and trials >= 1");
  std::mt19937_64 rng = make_stream(seed, 0xe000 + 16 * static_cast<std::uint64_t>(field) + n);
  double err4 = 0.0;
  double err22 = 0.0;
  double err_minors = 0.0;
  double err_imag = 0.0;
  const bool commutative = field != Field::Quaternion;
  for (long t = 0; t < trials; ++t) {
    const MatrixSample m = gaussian_matrix(field, n, rng);
    const EntryIdentityTerms terms = entry_identity_terms(m);
    err4 = std::max(err4, std::abs(terms.lhs4 - terms.rhs4()) / terms.scale);
    err22 = std::max(err22, std::abs(terms.lhs22 - terms.rhs22()) / terms.scale);
    err_imag = std::max(err_imag, terms.quartic_cross_imag / terms.scale);
    if (commutative) err_minors = std::max(err_minors, std::abs(terms.lhs22 - terms.minors) / terms.scale);
  }
  CheckReport report;
  report.claim = "entry_identities";
  report.config = "field=" + to_string(field) + " n=" + std::to_string(n) + " trials=" + std::to_string(trials);
  report.lhs = {err4, err22, err_minors};
  report.rhs = {0.0, 0.0, 0.0};
  report.tolerance = rel_tol;
  report.method = CheckMethod::Pointwise;
  report.provenance = Provenance::Definition;
  report.pass = err4 <= rel_tol && err22 <= rel_tol && err_minors <= rel_tol && err_imag <= rel_tol;
  report.values = {{"max_rel_err_quartic", err4}, {"max_rel_err_pairs", err22}, {"max_rel_err_minors", err_minors},
                   {"max_rel_imag_cross", err_imag}};
  if (!commutative) report.note = "minor form not applicable over H";
  return report;
}

CheckReport check_antisym_structure(int n, const Exponent& p, long trials, std::uint64_t seed) {
  if (n < 2) throw DomainError("anti-symmetric Hermitian matrices need n >= 2");
  std::mt19937_64 rng = make_stream(seed, 0xa500 + n);
  double pair_err = 0.0;
  double zero_err = 0.0;
  double norm_err = 0.0;
  for (long t = 0; t < trials; ++t) {
    const ComplexMatrix m = gaussian_antisym_hermitian(n, rng);
    const Eigen::VectorXd s = svd(m).singular_values;
    const double top = s[0];
    Eigen::VectorXd theta(n / 2);
    for (int k = 0; k < n / 2; ++k) {
      pair_err = std::max(pair_err, std::abs(s[2 * k] - s[2 * k + 1]) / top);
      theta[k] = 0.5 * (s[2 * k] + s[2 * k + 1]);
    }
    if (n % 2 == 1) zero_err = std::max(zero_err, s[n - 1] / top);
    double lhs = 0.0;
    double rhs = 0.0;
    if (p.is_infinite()) {
      lhs = schatten_norm(s, p);
      rhs = theta.maxCoeff();
    } else {
      lhs = std::pow(schatten_norm(s, p), p.value());
      rhs = 2.0 * lp_sum(theta, p.value());
    }
    norm_err = std::max(norm_err, std::abs(lhs - rhs) / std::max(std::abs(lhs), 1e-300));
  }
  CheckReport report;
  report.claim = "antisym_structure";
  report.config = "n=" + std::to_string(n) + " p=" + p.to_string() + " trials=" + std::to_string(trials);
  report.lhs = {pair_err, zero_err, norm_err};
  report.rhs = {0.0, 0.0, 0.0};
  report.tolerance = 1e-10;
  report.method = CheckMethod::Pointwise;
  report.provenance = Provenance::Definition;
  report.pass = pair_err <= 1e-10 && zero_err <= 1e-10 && norm_err <= 1e-10;
  return report;
}

}  // namespace schatten
