#pragma once

namespace schatten {

// Natural log of Gamma(x), x > 0.
double log_gamma(double x);

// log Gamma(x + h) - log Gamma(x), accurate also when h is small against x.
double log_gamma_difference(double x, double h);

struct GammaRatio {
  double d = 0.0;
  double p = 0.0;
  double q = 0.0;
  // Gamma(1 + d/p) / Gamma(1 + (d+q)/p)
  double value = 0.0;
  // ((d + p + q)/p)^(-q/p)
  double approximant = 0.0;
  // value / approximant
  double discrepancy = 0.0;
};

GammaRatio gamma_ratio(double d, double p, double q);

// (Gamma(1+d/p)/Gamma(1+(d+2)/p))^2 - Gamma(1+d/p)/Gamma(1+(d+4)/p)
double gamma_gap(double d, double p);

}  // namespace schatten
