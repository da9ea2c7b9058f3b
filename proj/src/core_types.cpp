#include "schatten/core_types.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

#include "schatten/errors.hpp"

namespace schatten {

namespace {

std::string lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char ch) { return std::tolower(ch); });
  return out;
}

int parse_int(std::string_view text) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw SpecificationError("not an integer: '" + std::string(text) + "'");
  return value;
}

}  // namespace

int beta(Field field) {
  switch (field) {
    case Field::Real: return 1;
    case Field::Complex: return 2;
    case Field::Quaternion: return 4;
  }
  return 1;
}

std::string to_string(Field field) {
  switch (field) {
    case Field::Real: return "R";
    case Field::Complex: return "C";
    case Field::Quaternion: return "H";
  }
  return "?";
}

std::string to_string(Subspace subspace) {
  switch (subspace) {
    case Subspace::Full: return "full";
    case Subspace::SelfAdjoint: return "selfadjoint";
    case Subspace::AntiSymHermitian: return "antisym-hermitian";
    case Subspace::ComplexSymmetric: return "complex-symmetric";
  }
  return "?";
}

Field parse_field(std::string_view text) {
  const std::string t = lower(text);
  if (t == "r" || t == "real") return Field::Real;
  if (t == "c" || t == "complex") return Field::Complex;
  if (t == "h" || t == "quaternion") return Field::Quaternion;
  throw SpecificationError("unknown field '" + std::string(text) + "'");
}

Subspace parse_subspace(std::string_view text) {
  const std::string t = lower(text);
  if (t == "full") return Subspace::Full;
  if (t == "selfadjoint" || t == "self-adjoint" || t == "hermitian") return Subspace::SelfAdjoint;
  if (t == "antisym-hermitian" || t == "antisymhermitian" || t == "antisym") return Subspace::AntiSymHermitian;
  if (t == "complex-symmetric" || t == "complexsymmetric" || t == "symmetric") return Subspace::ComplexSymmetric;
  throw SpecificationError("unknown subspace '" + std::string(text) + "'");
}

Exponent::Exponent(double p) {
  if (std::isnan(p) || p < 1.0) throw DomainError("exponent p must lie in [1, inf]");
  if (std::isinf(p)) {
    infinite_ = true;
    value_ = 0.0;
  } else {
    value_ = p;
  }
}

Exponent Exponent::infinity() {
  Exponent e;
  e.infinite_ = true;
  e.value_ = 0.0;
  return e;
}

Exponent Exponent::parse(std::string_view text) {
  const std::string t = lower(text);
  if (t == "inf" || t == "infinity") return infinity();
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size())
    throw SpecificationError("bad exponent '" + std::string(text) + "'");
  if (std::isinf(value)) throw SpecificationError("write p=inf as the literal 'inf'");
  return Exponent(value);
}

std::string Exponent::to_string() const {
  if (infinite_) return "inf";
  std::ostringstream os;
  os.precision(17);
  os << value_;
  return os.str();
}

long EnsembleParams::total_degree() const {
  const long nn = n;
  return static_cast<long>(a) * b * nn * (nn - 1) / 2 + (static_cast<long>(c) + 1) * nn;
}

long EnsembleParams::homogeneity_degree() const { return total_degree() - n; }

void EnsembleParams::validate() const {
  if (a < 1 || b < 1 || c < 0 || n < 1)
    throw SpecificationError("ensemble needs a >= 1, b >= 1, c >= 0, n >= 1 (got " + to_string() + ")");
}

std::string EnsembleParams::to_string() const {
  return std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ";" + std::to_string(n);
}

EnsembleParams parse_ensemble(std::string_view abc, int n) {
  EnsembleParams params;
  int values[3];
  std::size_t start = 0;
  for (int k = 0; k < 3; ++k) {
    const std::size_t comma = abc.find(',', start);
    if ((k < 2) != (comma != std::string_view::npos))
      throw SpecificationError("ensemble must be written a,b,c (got '" + std::string(abc) + "')");
    const std::size_t stop = comma == std::string_view::npos ? abc.size() : comma;
    values[k] = parse_int(abc.substr(start, stop - start));
    start = stop + 1;
  }
  params.a = values[0];
  params.b = values[1];
  params.c = values[2];
  params.n = n;
  params.validate();
  return params;
}

bool SchattenSpec::is_legal() const {
  if (n < 1) return false;
  switch (subspace) {
    case Subspace::Full:
    case Subspace::SelfAdjoint:
      return true;
    case Subspace::AntiSymHermitian:
      return field == Field::Complex && n >= 2;
    case Subspace::ComplexSymmetric:
      return field == Field::Complex;
  }
  return false;
}

void SchattenSpec::validate() const {
  if (!is_legal())
    throw SpecificationError("illegal Schatten spec " + to_string());
}

long SchattenSpec::real_dimension() const {
  const long nn = n;
  const long bt = beta(field);
  switch (subspace) {
    case Subspace::Full: return bt * nn * nn;
    case Subspace::SelfAdjoint: return nn + bt * nn * (nn - 1) / 2;
    case Subspace::AntiSymHermitian: return nn * (nn - 1) / 2;
    case Subspace::ComplexSymmetric: return nn * (nn + 1);
  }
  return 0;
}

std::string SchattenSpec::to_string() const {
  return "(" + schatten::to_string(field) + ", " + schatten::to_string(subspace) + ", n=" + std::to_string(n) +
         ", p=" + p.to_string() + ")";
}

EnsembleMapping ensemble_of(const SchattenSpec& spec) {
  spec.validate();
  const int bt = beta(spec.field);
  EnsembleMapping out;
  switch (spec.subspace) {
    case Subspace::Full:
      out.params = {2, bt, bt - 1, spec.n};
      out.note = "gas coordinates are singular values";
      break;
    case Subspace::SelfAdjoint:
      out.params = {1, bt, 0, spec.n};
      out.signed_eigenvalues = true;
      out.note = "gas coordinates are signed eigenvalues; singular values are their absolute values";
      break;
    case Subspace::ComplexSymmetric:
      out.params = {2, 1, 1, spec.n};
      out.note = "gas coordinates are singular values";
      break;
    case Subspace::AntiSymHermitian: {
      const int s = spec.n / 2;
      const int r = spec.n % 2;
      out.params = {2, 2, 2 * r, s};
      out.multiplicity = 2;
      out.appended_zero = r == 1;
      out.note = r == 1 ? "each gas coordinate is a doubled singular value; one extra zero singular value"
                        : "each gas coordinate is a doubled singular value";
      break;
    }
  }
  return out;
}

}  // namespace schatten
