#include "schatten/density.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "schatten/errors.hpp"

namespace schatten {

namespace {

constexpr double kMinusInf = -std::numeric_limits<double>::infinity();

void check_dimension(const EnsembleParams& params, const GasRef& x) {
  if (x.size() != params.n)
    throw DimensionMismatch("gas point has " + std::to_string(x.size()) + " coordinates, ensemble expects " +
                            std::to_string(params.n));
}

}  // namespace

double log_f(const EnsembleParams& params, const GasRef& x) {
  check_dimension(params, x);
  const int n = params.n;
  double pair = 0.0;
  for (int i = 0; i < n; ++i) {
    const double xi = ipow(x[i], params.a);
    for (int j = i + 1; j < n; ++j) {
      const double diff = std::abs(xi - ipow(x[j], params.a));
      if (diff == 0.0) return kMinusInf;
      pair += std::log(diff);
    }
  }
  double single = 0.0;
  if (params.c > 0) {
    for (int i = 0; i < n; ++i) {
      const double v = std::abs(x[i]);
      if (v == 0.0) return kMinusInf;
      single += std::log(v);
    }
  }
  return params.b * pair + params.c * single;
}

double log_f_p(const EnsembleParams& params, const Exponent& p, const GasRef& x) {
  check_dimension(params, x);
  if (p.is_infinite()) {
    if (x.size() > 0 && x.cwiseAbs().maxCoeff() > 1.0) return kMinusInf;
    return log_f(params, x);
  }
  const double base = log_f(params, x);
  if (base == kMinusInf) return base;
  return base - lp_sum(x, p.value());
}

long homogeneity_degree(const EnsembleParams& params) { return params.homogeneity_degree(); }

double lp_sum(const GasRef& x, double xi) {
  double s = 0.0;
  if (xi == 2.0) return x.squaredNorm();
  for (Eigen::Index i = 0; i < x.size(); ++i) s += std::pow(std::abs(x[i]), xi);
  return s;
}

double lp_norm(const GasRef& x, const Exponent& p) {
  if (x.size() == 0) return 0.0;
  if (p.is_infinite()) return x.cwiseAbs().maxCoeff();
  if (p.value() == 2.0) return x.norm();
  if (p.value() == 1.0) return x.cwiseAbs().sum();
  return std::pow(lp_sum(x, p.value()), 1.0 / p.value());
}

}  // namespace schatten
