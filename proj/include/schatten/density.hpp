#pragma once

#include <Eigen/Core>

#include "schatten/core_types.hpp"

namespace schatten {

using GasPoint = Eigen::VectorXd;
using GasRef = Eigen::Ref<const Eigen::VectorXd>;

// x^a for a small positive integer exponent.
inline double ipow(double x, int a) {
  switch (a) {
    case 1: return x;
    case 2: return x * x;
    case 3: return x * x * x;
    case 4: { const double s = x * x; return s * s; }
    default: {
      double r = 1.0;
      double base = x;
      for (int e = a; e > 0; e >>= 1) {
        if (e & 1) r *= base;
        base *= base;
      }
      return r;
    }
  }
}

// b sum_{i<j} log|x_i^a - x_j^a| + c sum_i log|x_i|; -inf where a factor vanishes.
double log_f(const EnsembleParams& params, const GasRef& x);

// log_f(x) - ||x||_p^p for finite p; log_f(x) inside the cube and -inf outside for p = inf.
double log_f_p(const EnsembleParams& params, const Exponent& p, const GasRef& x);

// d - n.
long homogeneity_degree(const EnsembleParams& params);

// sum_i |x_i|^xi, xi > 0.
double lp_sum(const GasRef& x, double xi);

// ||x||_p, with p = inf giving the max norm.
double lp_norm(const GasRef& x, const Exponent& p);

}  // namespace schatten
