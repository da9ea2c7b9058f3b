#include "schatten/moments.hpp"

#include <cmath>

#include "schatten/errors.hpp"
#include "schatten/gamma.hpp"
#include "schatten/parallel.hpp"

namespace schatten {

namespace {

constexpr long kEvalBlock = 4096;

Eigen::MatrixXd evaluate(const SampleBatch& batch, const std::vector<Functional>& functionals) {
  const long count = batch.size();
  const Eigen::Index k = static_cast<Eigen::Index>(functionals.size());
  Eigen::MatrixXd values(count, k);
  const std::size_t blocks = static_cast<std::size_t>((count + kEvalBlock - 1) / kEvalBlock);
  parallel_for(blocks, [&](std::size_t block) {
    const long lo = static_cast<long>(block) * kEvalBlock;
    const long hi = std::min(count, lo + kEvalBlock);
    for (long s = lo; s < hi; ++s)
      for (Eigen::Index f = 0; f < k; ++f) values(s, f) = functionals[f].symmetrized(batch.points.col(s));
  });
  return values;
}

}  // namespace

std::string to_string(EstimateMethod method) {
  switch (method) {
    case EstimateMethod::Mc: return "mc";
    case EstimateMethod::Quadrature: return "quadrature";
    case EstimateMethod::ClosedForm: return "closed_form";
  }
  return "?";
}

MomentEstimate JointMoments::estimate(std::size_t k) const {
  if (k >= functionals.size()) throw DimensionMismatch("moment index out of range");
  MomentEstimate m;
  m.functional = functionals[k].id();
  m.value = joint.mean[k];
  const double se2 = joint.covariance(k, k);
  m.std_err = std::sqrt(se2);
  m.n_samples = n_samples;
  if (se2 > 0.0 && std::isfinite(se2))
    m.ess = std::min(joint.variance[k] / se2, static_cast<double>(n_samples));
  else if (se2 == 0.0)
    m.ess = static_cast<double>(n_samples);
  m.method = EstimateMethod::Mc;
  m.low_confidence = m.ess < kLowConfidenceEss;
  return m;
}

JointMoments estimate_moments(const SampleBatch& batch, const std::vector<Functional>& functionals) {
  if (batch.size() < 1) throw SpecificationError("cannot estimate moments from an empty batch");
  if (functionals.empty()) throw SpecificationError("no functionals requested");
  JointMoments out;
  out.functionals = functionals;
  out.n_samples = batch.size();
  out.joint = joint_batch_means(evaluate(batch, functionals), batch.diagnostics.layout());
  return out;
}

MomentEstimate estimate_moment(const SampleBatch& batch, const Functional& f) {
  return estimate_moments(batch, {f}).estimate(0);
}

MomentEstimate estimate_moment(const SampleBatch& batch, const std::string& functional_id) {
  return estimate_moment(batch, Functional::parse(functional_id));
}

DerivedEstimate linear_combination(const JointMoments& moments, const Eigen::VectorXd& weights) {
  if (weights.size() != moments.joint.mean.size()) throw DimensionMismatch("weight count differs from moment count");
  DerivedEstimate out;
  out.value = weights.dot(moments.joint.mean);
  out.std_err = std::sqrt(std::max(0.0, weights.dot(moments.joint.covariance * weights)));
  return out;
}

DerivedEstimate delta_method(const JointMoments& moments, double value, const Eigen::VectorXd& gradient) {
  DerivedEstimate out = linear_combination(moments, gradient);
  out.value = value;
  return out;
}

double closed_form_moment(double d, double s, double l, const Exponent& p) {
  if (p.is_infinite()) throw DomainError("closed_form_moment needs a finite p");
  if (!(s > -d) || !(l + s > -d)) throw DomainError("closed_form_moment needs s > -d and l + s > -d");
  const double pv = p.value();
  return std::exp(log_gamma_difference((d + s) / pv, l / pv));
}

}  // namespace schatten
