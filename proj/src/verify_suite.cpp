#include <algorithm>
#include <functional>

#include "schatten/errors.hpp"
#include "schatten/parallel.hpp"
#include "schatten/verify.hpp"

namespace schatten {

std::string to_string(Provenance provenance) {
  switch (provenance) {
    case Provenance::Quoted: return "quoted";
    case Provenance::ClosedForm: return "closed_form";
    case Provenance::Oracle: return "oracle";
    case Provenance::Definition: return "definition";
  }
  return "unknown";
}

std::string to_string(CheckMethod method) {
  switch (method) {
    case CheckMethod::Auto: return "auto";
    case CheckMethod::Quadrature: return "quadrature";
    case CheckMethod::Mc: return "mc";
    case CheckMethod::ClosedForm: return "closed_form";
    case CheckMethod::Pointwise: return "pointwise";
  }
  return "unknown";
}

double CheckReport::value(const std::string& name) const {
  for (const NamedValue& v : values)
    if (v.name == name) return v.value;
  throw SpecificationError("report " + claim + " has no value '" + name + "'");
}

namespace {

using Job = std::function<CheckReport()>;

const std::vector<std::string> kSuites = {"all",      "identities", "gamma",          "entries",
                                          "thinshell", "negcorr",   "hermitian-split"};

std::vector<EnsembleParams> identity_table() {
  return {{2, 1, 0, 1}, {2, 2, 1, 1}, {2, 4, 3, 1}, {2, 1, 1, 1}, {2, 2, 0, 1}, {2, 2, 2, 1}};
}

std::vector<EnsembleParams> full_table() { return {{2, 1, 0, 1}, {2, 2, 1, 1}}; }

double tol_or(const SuiteOptions& o, double fallback) { return o.tolerance > 0.0 ? o.tolerance : fallback; }

bool is_full_ensemble(const EnsembleParams& e) { return e.a == 2 && e.c == e.b - 1 && e.b <= 2; }

void identities(const SuiteOptions& o, std::vector<Job>& jobs) {
  const auto table = o.ensembles.empty() ? identity_table() : o.ensembles;
  for (EnsembleParams e : table)
    for (int n : o.ns) {
      e.n = n;
      for (const Exponent& p : o.ps) {
        if (p.is_infinite()) continue;
        if (e.a == 2) {
          const double tol = tol_or(o, 1e-6);
          jobs.push_back([=] { return check_identity1(e, p, CheckMethod::Auto, tol, o.budget); });
          jobs.push_back([=] { return check_identity2(e, p, CheckMethod::Auto, tol, o.budget); });
          jobs.push_back([=] { return check_identity3(e, p, CheckMethod::Auto, tol, o.budget); });
        }
        if (n <= 3) {
          const double tol = tol_or(o, 1e-5);
          for (const Functional& f : {Functional::one(), Functional::euclidean_power(2.0)})
            jobs.push_back([=] { return check_int_by_parts(e, p, 2.0, f, tol); });
          jobs.push_back([=] { return check_homogeneous_moment(e, p, 2.0, Functional::coordinate_power(2.0), tol); });
        }
      }
    }
  for (int a : {1, 2, 4})
    for (double xi : {2.0, 4.0}) jobs.push_back([=] { return check_zeta_bounds(a, xi, 100000, o.budget.seed); });
  for (const Exponent& p : o.ps)
    if (p.is_finite())
      for (int n : o.ns) jobs.push_back([=] { return check_holder_band(p, n, 100000, o.budget.seed); });
}

void gamma(const SuiteOptions&, std::vector<Job>& jobs) {
  jobs.push_back([] { return check_gamma_estimates(GammaGrid::log_spaced(1.0, 1e4, 10)); });
}

void entries(const SuiteOptions& o, std::vector<Job>& jobs) {
  for (Field f : {Field::Real, Field::Complex, Field::Quaternion})
    for (int n : o.ns) jobs.push_back([=] { return check_entry_identities(f, n, 1000, o.budget.seed); });
  for (Field f : {Field::Real, Field::Complex})
    for (int n : o.ns)
      if (n >= 2)
        for (const Exponent& p : o.ps)
          jobs.push_back([=] { return check_entry_correlations({f, Subspace::Full, n, p}, o.budget); });
}

void thinshell(const SuiteOptions& o, std::vector<Job>& jobs) {
  const std::vector<int> sizes = o.ns.size() == 2 ? o.ns : std::vector<int>{8, 16};
  for (Field f : {Field::Real, Field::Complex}) {
    jobs.push_back([=] { return check_thinshell_large_p(f, sizes, o.budget); });
    for (int n : o.ns)
      for (const Exponent& p : o.ps) {
        const SchattenSpec spec{f, Subspace::Full, n, p};
        jobs.push_back([=] { return check_sigma_band(spec, SigmaSampler::Pushforward, o.budget); });
        if (p.is_finite() && p.value() == 2.0) jobs.push_back([=] { return check_sigma_p2(spec, o.budget); });
      }
  }
}

void negcorr(const SuiteOptions& o, std::vector<Job>& jobs) {
  const auto table = o.ensembles.empty() ? full_table() : o.ensembles;
  for (EnsembleParams e : table) {
    if (e.a != 2) continue;
    for (const Exponent& p : o.ps) {
      jobs.push_back([=] { return check_neg_correlation_threshold(e, p, o.ns, o.budget); });
      for (int n : o.ns) {
        e.n = n;
        if (n >= 2) jobs.push_back([=] { return check_cross_term(e, p, o.budget); });
        if (is_full_ensemble(e)) jobs.push_back([=] { return check_orders(e, p, o.budget); });
        if (p.is_finite() && p.value() == 2.0 && exact_p2_available(e))
          jobs.push_back([=] { return check_sampler_agreement(e, o.budget); });
      }
    }
  }
}

void hermitian_split(const SuiteOptions& o, std::vector<Job>& jobs) {
  const double tol = tol_or(o, 1e-4);
  for (int n : o.ns)
    for (const Exponent& p : o.ps) {
      if (n <= 3)
        for (double xi : {2.0, 4.0}) jobs.push_back([=] { return check_hermitian_split(n, p, xi, tol); });
      if (n >= 2) {
        jobs.push_back([=] { return check_antisym_structure(n, p, 200, o.budget.seed); });
        jobs.push_back([=] { return check_antisym_normalization(n, p, o.budget); });
      }
    }
}

}  // namespace

std::vector<std::string> suite_names() { return kSuites; }

std::vector<CheckReport> run_suite(const std::string& name, const SuiteOptions& options) {
  if (std::find(kSuites.begin(), kSuites.end(), name) == kSuites.end())
    throw SpecificationError("unknown suite '" + name + "'");
  if (options.ns.empty() || options.ps.empty()) throw SpecificationError("suite grid is empty");
  std::vector<Job> jobs;
  const bool all = name == "all";
  if (all || name == "identities") identities(options, jobs);
  if (all || name == "gamma") gamma(options, jobs);
  if (all || name == "entries") entries(options, jobs);
  if (all || name == "thinshell") thinshell(options, jobs);
  if (all || name == "negcorr") negcorr(options, jobs);
  if (all || name == "hermitian-split") hermitian_split(options, jobs);
  std::vector<CheckReport> reports(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t k) { reports[k] = jobs[k](); });
  std::stable_sort(reports.begin(), reports.end(),
                   [](const CheckReport& x, const CheckReport& y) { return x.claim < y.claim; });
  return reports;
}

}  // namespace schatten
