#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "schatten/core_types.hpp"
#include "schatten/density.hpp"

namespace schatten {

// Building blocks of the registered moment functionals. Every atom is nonnegative and homogeneous.
enum class AtomKind {
  CoordinatePower,  // |x_1|^k
  PairProduct,      // |x_1|^k |x_2|^k
  LpSum,            // sum_i |x_i|^k
  NormPower,        // ||x||_q^k
  PairQuotient,     // sum_{i<j} (|x_i|^k x_i^a - |x_j|^k x_j^a) / (x_i^a - x_j^a)
};

struct Atom {
  AtomKind kind = AtomKind::LpSum;
  double k = 2.0;
  Exponent q = 2.0;  // NormPower only
  int a = 2;         // PairQuotient only

  bool symmetric() const { return kind != AtomKind::CoordinatePower && kind != AtomKind::PairProduct; }
  double degree() const;
  std::string id() const;
};

// coefficient * product of atoms; the empty product is the constant functional.
class Functional {
 public:
  Functional() = default;
  Functional(double coefficient, std::vector<Atom> atoms);

  static Functional one() { return {}; }
  static Functional coordinate_power(double k) { return {1.0, {{AtomKind::CoordinatePower, k}}}; }
  static Functional pair_product(double k) { return {1.0, {{AtomKind::PairProduct, k}}}; }
  static Functional lp_sum(double xi) { return {1.0, {{AtomKind::LpSum, xi}}}; }
  static Functional euclidean_power(double k) { return {1.0, {{AtomKind::NormPower, k, 2.0}}}; }
  static Functional norm_power(const Exponent& q, double l) { return {1.0, {{AtomKind::NormPower, l, q}}}; }
  static Functional pair_quotient(int a, double xi) { return {1.0, {{AtomKind::PairQuotient, xi, 2.0, a}}}; }

  // Parses ids such as "1", "x1^2", "x1^2x2^2", "sum|x|^4", "norm2^4", "norminf^2", "pq2^4",
  // joined by '*' with an optional numeric coefficient: "2*norm2^2*sum|x|^3".
  static Functional parse(const std::string& id);

  Functional operator*(const Functional& other) const;
  Functional scaled(double factor) const;

  double coefficient() const { return coefficient_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  double degree() const;
  bool symmetric() const;
  std::string id() const;

  // F(x) as written, with coordinates 1 and 2 in the non-symmetric atoms.
  double operator()(const GasRef& x) const;
  // Average of F over coordinate permutations; equal in expectation under any exchangeable law.
  double symmetrized(const GasRef& x) const;

 private:
  double coefficient_ = 1.0;
  std::vector<Atom> atoms_;
};

// (|u|^xi u^a - |v|^xi v^a) / (u^a - v^a), continuous across u = v.
double pair_quotient_term(double u, double v, int a, double xi);

}  // namespace schatten
