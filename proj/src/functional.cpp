#include "schatten/functional.hpp"

#include <cmath>
#include <regex>
#include <sstream>

#include "schatten/errors.hpp"

namespace schatten {

namespace {

double abs_pow(double v, double k) {
  const double a = std::abs(v);
  if (k == std::floor(k) && k >= 0.0 && k <= 64.0) return ipow(a, static_cast<int>(k));
  return std::pow(a, k);
}

double power_sum(const GasRef& x, double k) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) s += abs_pow(x[i], k);
  return s;
}

double norm_power(const GasRef& x, const Exponent& q, double k) {
  if (q.is_infinite()) return abs_pow(x.cwiseAbs().maxCoeff(), k);
  const double qv = q.value();
  const double s = power_sum(x, qv);
  if (k == qv) return s;
  if (qv == 2.0 && k == 2.0 * std::floor(k / 2.0)) return ipow(s, static_cast<int>(k / 2.0));
  return std::pow(s, k / qv);
}

std::string number(double v) {
  if (v == std::floor(v) && std::abs(v) < 1e15) return std::to_string(static_cast<long long>(v));
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

double pair_quotient_sum(const GasRef& x, int a, double xi) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    for (Eigen::Index j = i + 1; j < x.size(); ++j) s += pair_quotient_term(x[i], x[j], a, xi);
  return s;
}

double atom_value(const Atom& atom, const GasRef& x, bool symmetrize) {
  const double n = static_cast<double>(x.size());
  switch (atom.kind) {
    case AtomKind::CoordinatePower:
      return symmetrize ? power_sum(x, atom.k) / n : abs_pow(x[0], atom.k);
    case AtomKind::PairProduct: {
      if (x.size() < 2) throw DimensionMismatch("pair product needs n >= 2");
      if (!symmetrize) return abs_pow(x[0], atom.k) * abs_pow(x[1], atom.k);
      const double s = power_sum(x, atom.k);
      return (s * s - power_sum(x, 2.0 * atom.k)) / (n * (n - 1.0));
    }
    case AtomKind::LpSum: return power_sum(x, atom.k);
    case AtomKind::NormPower: return norm_power(x, atom.q, atom.k);
    case AtomKind::PairQuotient: return pair_quotient_sum(x, atom.a, atom.k);
  }
  return 0.0;
}

const std::string kNum = R"(([0-9]*\.?[0-9]+(?:[eE][+-]?[0-9]+)?))";

double parse_positive(const std::string& text, const std::string& id) {
  const double v = std::stod(text);
  if (!(v > 0.0)) throw SpecificationError("functional exponents must be positive: " + id);
  return v;
}

}  // namespace

double pair_quotient_term(double u, double v, int a, double xi) {
  const bool odd = a % 2 != 0;
  const bool opposite = odd && ((u < 0.0 && v > 0.0) || (u > 0.0 && v < 0.0));
  double hi = std::abs(u);
  double lo = std::abs(v);
  if (hi < lo) std::swap(hi, lo);
  const double m = xi + a;
  if (opposite) return (abs_pow(hi, m) + abs_pow(lo, m)) / (abs_pow(hi, a) + abs_pow(lo, a));
  if (hi == 0.0) return 0.0;
  if (lo == hi) return abs_pow(hi, xi) * m / a;
  const double log_rho = std::log(lo / hi);
  return abs_pow(hi, xi) * std::expm1(m * log_rho) / std::expm1(a * log_rho);
}

double Atom::degree() const { return kind == AtomKind::PairProduct ? 2.0 * k : k; }

std::string Atom::id() const {
  switch (kind) {
    case AtomKind::CoordinatePower: return "x1^" + number(k);
    case AtomKind::PairProduct: return "x1^" + number(k) + "x2^" + number(k);
    case AtomKind::LpSum: return "sum|x|^" + number(k);
    case AtomKind::NormPower: return "norm" + (q.is_infinite() ? std::string("inf") : number(q.value())) + "^" + number(k);
    case AtomKind::PairQuotient: return "pq" + std::to_string(a) + "^" + number(k);
  }
  return "?";
}

Functional::Functional(double coefficient, std::vector<Atom> atoms)
    : coefficient_(coefficient), atoms_(std::move(atoms)) {
  int asymmetric = 0;
  for (const Atom& atom : atoms_) {
    if (!(atom.k > 0.0)) throw SpecificationError("functional exponents must be positive");
    if (atom.kind == AtomKind::PairQuotient && atom.a < 1) throw SpecificationError("pair quotient needs a >= 1");
    if (!atom.symmetric()) ++asymmetric;
  }
  if (asymmetric > 1) throw SpecificationError("at most one coordinate-specific factor per functional");
}

Functional Functional::parse(const std::string& id) {
  static const std::regex number_re("^" + kNum + "$");
  static const std::regex coord_re("^x1\\^" + kNum + "$");
  static const std::regex pair_re("^x1\\^" + kNum + "x2\\^" + kNum + "$");
  static const std::regex sum_re("^sum\\|x\\|\\^" + kNum + "$");
  static const std::regex norm_re("^norm(inf|" + kNum + ")\\^" + kNum + "$");
  static const std::regex quot_re("^pq([0-9]+)\\^" + kNum + "$");
  if (id.empty()) throw SpecificationError("empty functional id");

  double coefficient = 1.0;
  std::vector<Atom> atoms;
  std::stringstream stream(id);
  std::string token;
  while (std::getline(stream, token, '*')) {
    std::smatch m;
    if (std::regex_match(token, m, number_re)) {
      coefficient *= std::stod(m[1]);
    } else if (std::regex_match(token, m, coord_re)) {
      atoms.push_back({AtomKind::CoordinatePower, parse_positive(m[1], id)});
    } else if (std::regex_match(token, m, pair_re)) {
      if (std::stod(m[1]) != std::stod(m[2])) throw SpecificationError("pair product needs equal exponents: " + id);
      atoms.push_back({AtomKind::PairProduct, parse_positive(m[1], id)});
    } else if (std::regex_match(token, m, sum_re)) {
      atoms.push_back({AtomKind::LpSum, parse_positive(m[1], id)});
    } else if (std::regex_match(token, m, norm_re)) {
      atoms.push_back({AtomKind::NormPower, parse_positive(m[3], id), Exponent::parse(m[1].str())});
    } else if (std::regex_match(token, m, quot_re)) {
      atoms.push_back({AtomKind::PairQuotient, parse_positive(m[2], id), 2.0, std::stoi(m[1])});
    } else {
      throw SpecificationError("unknown functional '" + token + "' in '" + id + "'");
    }
  }
  return Functional(coefficient, std::move(atoms));
}

Functional Functional::operator*(const Functional& other) const {
  std::vector<Atom> atoms = atoms_;
  atoms.insert(atoms.end(), other.atoms_.begin(), other.atoms_.end());
  return Functional(coefficient_ * other.coefficient_, std::move(atoms));
}

Functional Functional::scaled(double factor) const { return Functional(coefficient_ * factor, atoms_); }

double Functional::degree() const {
  double s = 0.0;
  for (const Atom& atom : atoms_) s += atom.degree();
  return s;
}

bool Functional::symmetric() const {
  for (const Atom& atom : atoms_)
    if (!atom.symmetric()) return false;
  return true;
}

std::string Functional::id() const {
  std::string out;
  if (coefficient_ != 1.0 || atoms_.empty()) out = number(coefficient_);
  for (const Atom& atom : atoms_) {
    if (!out.empty()) out += "*";
    out += atom.id();
  }
  return out;
}

double Functional::operator()(const GasRef& x) const {
  double v = coefficient_;
  for (const Atom& atom : atoms_) v *= atom_value(atom, x, false);
  return v;
}

double Functional::symmetrized(const GasRef& x) const {
  double v = coefficient_;
  for (const Atom& atom : atoms_) v *= atom_value(atom, x, true);
  return v;
}

}  // namespace schatten
