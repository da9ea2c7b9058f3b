#include "cli.hpp"

#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "output.hpp"
#include "schatten/errors.hpp"
#include "schatten/gamma.hpp"
#include "schatten/rng.hpp"
#include "schatten/verify.hpp"

namespace schatten::cli {

namespace {

using Json = nlohmann::ordered_json;

Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

std::vector<Exponent> exponents(const RunConfig& c) {
  std::vector<Exponent> out;
  for (const std::string& p : c.ps) out.push_back(Exponent::parse(p));
  return out;
}

std::vector<EnsembleParams> ensembles(const RunConfig& c, int n) {
  std::vector<EnsembleParams> out;
  for (const std::string& e : c.ensembles) out.push_back(parse_ensemble(e, n));
  return out;
}

Budget budget_of(const RunConfig& c) {
  Budget b;
  b.samples = c.samples;
  b.chains = c.chains;
  b.burn_in = c.burn_in;
  b.thinning = c.thinning;
  return b;
}

CheckBudget check_budget_of(const RunConfig& c) {
  CheckBudget b;
  b.gas = budget_of(c);
  b.matrix.samples = c.samples;
  b.matrix.chains = c.chains;
  b.matrix.burn_in = c.burn_in;
  b.matrix.thinning = c.thinning;
  b.matrix.seed = c.seed;
  b.seed = c.seed;
  return b;
}

SchattenSpec spec_of(const RunConfig& c, int n, const Exponent& p) {
  SchattenSpec spec{parse_field(c.field), parse_subspace(c.subspace), n, p};
  spec.validate();
  return spec;
}

template <typename T>
const T& single(const std::vector<T>& v, const char* flag) {
  if (v.size() != 1) throw SpecificationError(std::string("exactly one ") + flag + " value expected");
  return v.front();
}

Json report_json(const CheckReport& r) {
  Json j;
  j["record"] = "check";
  j["claim"] = r.claim;
  j["config"] = r.config;
  j["method"] = to_string(r.method);
  j["provenance"] = to_string(r.provenance);
  j["pass"] = r.pass;
  Json lhs = Json::array();
  for (double v : r.lhs) lhs.push_back(finite_or_null(v));
  Json rhs = Json::array();
  for (double v : r.rhs) rhs.push_back(finite_or_null(v));
  j["lhs"] = lhs;
  j["rhs"] = rhs;
  j["tolerance"] = finite_or_null(r.tolerance);
  j["sigma"] = finite_or_null(r.sigma);
  Json values = Json::object();
  for (const NamedValue& v : r.values) values[v.name] = finite_or_null(v.value);
  j["values"] = values;
  j["note"] = r.note;
  return j;
}

Json moment_json(const EnsembleParams& e, const Exponent& p, const MomentEstimate& m) {
  Json j;
  j["record"] = "moment";
  j["ensemble"] = e.to_string();
  j["p"] = p.to_string();
  j["functional"] = m.functional;
  j["value"] = finite_or_null(m.value);
  j["std_err"] = finite_or_null(m.std_err);
  j["n_samples"] = m.n_samples;
  j["ess"] = finite_or_null(m.ess);
  j["method"] = to_string(m.method);
  j["low_confidence"] = m.low_confidence;
  return j;
}

Json sigma_json(const SchattenSpec& spec, const SigmaEstimate& s) {
  Json j;
  j["record"] = "sigma";
  j["spec"] = spec.to_string();
  j["sigma_sq"] = finite_or_null(s.sigma_sq);
  j["sigma_sq_err"] = finite_or_null(s.sigma_sq_err);
  j["var_norm_sq"] = finite_or_null(s.var_norm_sq);
  j["var_norm_sq_err"] = finite_or_null(s.var_norm_sq_err);
  j["mean_norm_sq"] = finite_or_null(s.mean_norm_sq);
  j["mean_norm_sq_err"] = finite_or_null(s.mean_norm_sq_err);
  j["dim"] = s.dim;
  j["mean_over_dim"] = finite_or_null(s.mean_over_dim);
  j["n_samples"] = s.n_samples;
  j["sampler"] = s.sampler;
  return j;
}

int cmd_verify(const RunConfig& c, RecordWriter& w) {
  SuiteOptions o;
  o.ns = c.ns.empty() ? std::vector<int>{2} : c.ns;
  o.ps = c.ps.empty() ? std::vector<Exponent>{2.0} : exponents(c);
  o.ensembles = ensembles(c, 1);
  o.budget = check_budget_of(c);
  o.tolerance = c.tolerance;
  const std::vector<CheckReport> reports = run_suite(c.suite, o);
  long passed = 0;
  for (const CheckReport& r : reports) {
    w.record(report_json(r));
    passed += r.pass ? 1 : 0;
  }
  const long total = static_cast<long>(reports.size());
  return passed == total ? kExitPass : kExitCheckFailed;
}

int cmd_estimate(const RunConfig& c, RecordWriter& w) {
  const int n = single(c.ns, "--n");
  const Exponent p = Exponent::parse(single(c.ps, "--p"));
  if (c.mode == "sigma") {
    const SchattenSpec spec = spec_of(c, n, p);
    w.record(sigma_json(spec, sigma_pipeline(spec, parse_sigma_sampler(c.sampler), budget_of(c), c.seed)));
    return kExitPass;
  }
  std::vector<Functional> fs;
  for (const std::string& id : c.functionals) fs.push_back(Functional::parse(id));
  if (fs.empty() && c.method == "closed-form") fs.push_back(Functional::one());
  if (fs.empty()) throw SpecificationError("estimate moment needs at least one --functional");
  for (const EnsembleParams& e : ensembles(c, n)) {
    e.validate();
    if (c.method == "quadrature") {
      const double tol = c.tolerance > 0.0 ? c.tolerance : 1e-8;
      for (const MomentEstimate& m : quadrature_moments(e, p, fs, tol).moments) w.record(moment_json(e, p, m));
    } else if (c.method == "mc") {
      const SampleBatch batch = gas_sample(e, p, budget_of(c), c.seed);
      const JointMoments jm = estimate_moments(batch, fs);
      for (std::size_t k = 0; k < fs.size(); ++k) w.record(moment_json(e, p, jm.estimate(k)));
    } else if (c.method == "closed-form") {
      // M(||x||_p^l f)/M(f) for homogeneous f.
      for (const Functional& f : fs) {
        MomentEstimate m;
        m.functional = (Functional::norm_power(p, c.l) * f).id() + "/" + f.id();
        m.value = closed_form_moment(static_cast<double>(e.total_degree()), f.degree(), c.l, p);
        m.method = EstimateMethod::ClosedForm;
        w.record(moment_json(e, p, m));
      }
    } else {
      throw SpecificationError("unknown method '" + c.method + "' (expected quadrature, mc or closed-form)");
    }
  }
  return kExitPass;
}

int cmd_sample(const RunConfig& c, RecordWriter& w) {
  const int n = single(c.ns, "--n");
  const Exponent p = Exponent::parse(single(c.ps, "--p"));
  if (c.mode == "matrix") {
    const SchattenSpec spec = spec_of(c, n, p);
    HitAndRunConfig config;
    config.samples = c.samples;
    config.chains = c.chains;
    config.burn_in = c.burn_in;
    config.thinning = c.thinning;
    config.seed = c.seed;
    long index = 0;
    matrix_hit_and_run_visit(spec, config, [&](int chain, const MatrixSample& t) {
      Json j;
      j["record"] = "matrix";
      j["index"] = index++;
      j["chain"] = chain;
      const Eigen::VectorXd s = svd(t).singular_values;
      j["singular_values"] = std::vector<double>(s.data(), s.data() + s.size());
      j["norm"] = schatten_norm(s, p);
      w.record(j);
    });
    return kExitPass;
  }
  const EnsembleParams e = single(ensembles(c, n), "--ensemble");
  e.validate();
  SampleBatch batch = gas_sample(e, p, budget_of(c), c.seed);
  if (c.mode == "ball") batch = ball_pushforward(batch, c.seed);
  else if (c.mode != "gas") throw SpecificationError("unknown sample kind '" + c.mode + "'");
  long index = 0;
  long chain = 0;
  long left = batch.diagnostics.chain_lengths.empty() ? batch.size() : batch.diagnostics.chain_lengths[0];
  for (long k = 0; k < batch.size(); ++k) {
    while (left == 0 && chain + 1 < static_cast<long>(batch.diagnostics.chain_lengths.size()))
      left = batch.diagnostics.chain_lengths[++chain];
    --left;
    Json j;
    j["record"] = c.mode;
    j["index"] = index++;
    j["chain"] = chain;
    const auto x = batch.point(k);
    j["x"] = std::vector<double>(x.data(), x.data() + x.size());
    w.record(j);
  }
  return kExitPass;
}

int cmd_sweep(const RunConfig& c, RecordWriter& w) {
  if (c.ns.empty() || c.ps.empty() || c.ensembles.empty())
    throw SpecificationError("sweep needs --n, --p and --ensemble grids");
  std::uint64_t point = 0;
  for (int n : c.ns)
    for (const Exponent& p : exponents(c))
      for (const EnsembleParams& e : ensembles(c, n)) {
        e.validate();
        const VarMpEstimate v = var_mp_pipeline(e, p, budget_of(c), stream_seed(c.seed, point++));
        auto row = [&](const std::string& q, double value, double se) {
          Json j;
          j["record"] = "sweep";
          j["n"] = n;
          j["p"] = p.to_string();
          j["ensemble"] = e.to_string();
          j["quantity"] = q;
          j["value"] = finite_or_null(value);
          j["std_err"] = finite_or_null(se);
          j["sampler"] = v.sampler;
          w.record(j);
        };
        row("second", v.second, std::nan(""));
        row("fourth", v.fourth, std::nan(""));
        row("pair", v.pair, std::nan(""));
        row("cross", v.cross.value, v.cross.std_err);
        row("variance", v.variance.value, v.variance.std_err);
        row("ratio", v.ratio.value, v.ratio.std_err);
        row("mean_norm_sq", v.mean_norm_sq.value, v.mean_norm_sq.std_err);
      }
  return kExitPass;
}

int cmd_gamma(const RunConfig& c, RecordWriter& w) {
  if (c.gamma_d.empty() || c.gamma_p.empty()) throw SpecificationError("gamma needs --d and --p");
  const std::vector<double> qs = c.gamma_q.empty() ? std::vector<double>{2.0} : c.gamma_q;
  for (double d : c.gamma_d)
    for (double p : c.gamma_p)
      for (double q : qs) {
        const GammaRatio g = gamma_ratio(d, p, q);
        Json j;
        j["record"] = "gamma";
        j["d"] = d;
        j["p"] = p;
        j["q"] = q;
        j["value"] = finite_or_null(g.value);
        j["approximant"] = finite_or_null(g.approximant);
        j["discrepancy"] = finite_or_null(g.discrepancy);
        j["gap"] = finite_or_null(gamma_gap(d, p));
        w.record(j);
      }
  return kExitPass;
}

void add_common(CLI::App* app, RunConfig& c) {
  app->add_option("--n", c.ns, "matrix size or gas dimension (comma-separated list)")->delimiter(',');
  app->add_option("--p", c.ps, "Schatten exponent, 'inf' for the operator norm (comma-separated list)")
      ->delimiter(',');
  app->add_option("--ensemble", c.ensembles, "gas parameters a,b,c (repeat the flag for several)");
  app->add_option("--field", c.field, "R, C or H");
  app->add_option("--subspace", c.subspace, "full, self-adjoint, antisym-hermitian or complex-symmetric");
  app->add_option("--samples", c.samples, "kept draws over all chains");
  app->add_option("--chains", c.chains, "independent chains");
  app->add_option("--burn-in", c.burn_in, "burn-in steps per chain");
  app->add_option("--thinning", c.thinning, "steps between kept draws");
  app->add_option("--seed", c.seed, "64-bit seed");
  app->add_option("--tolerance", c.tolerance, "tolerance override");
  app->add_option("--output,-o", c.output, "output file, '-' for standard output");
  app->add_option("--format", c.format, "jsonl or csv")->check(CLI::IsMember({"jsonl", "csv"}));
}

}  // namespace

Json to_json(const RunConfig& c) {
  Json j;
  j["subcommand"] = c.subcommand;
  j["mode"] = c.mode;
  j["suite"] = c.suite;
  j["field"] = c.field;
  j["subspace"] = c.subspace;
  j["ensembles"] = c.ensembles;
  j["n"] = c.ns;
  j["p"] = c.ps;
  j["sampler"] = c.sampler;
  j["functionals"] = c.functionals;
  j["method"] = c.method;
  j["l"] = c.l;
  j["samples"] = c.samples;
  j["chains"] = c.chains;
  j["burn_in"] = c.burn_in;
  j["thinning"] = c.thinning;
  j["seed"] = c.seed;
  j["tolerance"] = c.tolerance;
  j["gamma_d"] = c.gamma_d;
  j["gamma_p"] = c.gamma_p;
  j["gamma_q"] = c.gamma_q;
  j["output"] = c.output;
  j["format"] = c.format;
  return j;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Schatten-ball moment and thin-shell experiments", "schatten-lab"};
  app.require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "run named check suites");
  add_common(verify, c);
  verify->add_option("--suite", c.suite, "suite name")->check(CLI::IsMember(suite_names()));

  auto* estimate = app.add_subcommand("estimate", "moment ratios or the thin-shell parameter");
  estimate->require_subcommand(1);
  auto* moment = estimate->add_subcommand("moment", "M_p(F)/M_p(1) for gas ensembles");
  add_common(moment, c);
  moment->add_option("--functional,-f", c.functionals, "functional id, e.g. x1^2 or norm2^2*sum|x|^4");
  moment->add_option("--method", c.method, "quadrature, mc or closed-form");
  moment->add_option("--l", c.l, "norm power for closed-form");
  auto* sigma = estimate->add_subcommand("sigma", "sigma^2 of the uniform measure on a Schatten ball");
  add_common(sigma, c);
  sigma->add_option("--sampler", c.sampler, "pushforward or hit-and-run");

  auto* sample = app.add_subcommand("sample", "stream sampler output");
  sample->require_subcommand(1);
  auto* sample_gas = sample->add_subcommand("gas", "draws from the gas density");
  auto* sample_ball = sample->add_subcommand("ball", "gas draws pushed forward into the l_p ball");
  auto* sample_matrix = sample->add_subcommand("matrix", "hit-and-run draws on the Schatten ball");
  for (auto* s : {sample_gas, sample_ball, sample_matrix}) add_common(s, c);

  auto* sweep = app.add_subcommand("sweep", "grid over (n, p, ensemble) in long format");
  add_common(sweep, c);

  auto* gamma = app.add_subcommand("gamma", "tabulate Gamma ratios and gaps");
  gamma->add_option("--d", c.gamma_d, "dimensions")->delimiter(',');
  gamma->add_option("--p", c.gamma_p, "exponents")->delimiter(',');
  gamma->add_option("--q", c.gamma_q, "shifts")->delimiter(',');
  gamma->add_option("--output,-o", c.output, "output file");
  gamma->add_option("--format", c.format, "jsonl or csv")->check(CLI::IsMember({"jsonl", "csv"}));

  std::vector<const char*> argv = {"schatten-lab"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  for (auto* s : app.get_subcommands()) {
    c.subcommand = s->get_name();
    for (auto* m : s->get_subcommands()) c.mode = m->get_name();
  }

  try {
    const auto file = open_output(c.output);
    std::ostream& sink = file ? static_cast<std::ostream&>(*file) : out;
    RecordWriter writer(sink, parse_format(c.format));
    writer.header(to_json(c));
    if (c.subcommand == "verify") return cmd_verify(c, writer);
    if (c.subcommand == "estimate") return cmd_estimate(c, writer);
    if (c.subcommand == "sample") return cmd_sample(c, writer);
    if (c.subcommand == "sweep") return cmd_sweep(c, writer);
    return cmd_gamma(c, writer);
  } catch (const OracleFailure& e) {
    err << "oracle failure: " << e.what() << '\n';
    return kExitOracle;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitOracle;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace schatten::cli
