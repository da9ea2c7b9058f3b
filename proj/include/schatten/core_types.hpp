#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

namespace schatten {

enum class Field { Real, Complex, Quaternion };
enum class Subspace { Full, SelfAdjoint, AntiSymHermitian, ComplexSymmetric };

// 1, 2, 4 for R, C, H.
int beta(Field field);

std::string to_string(Field field);
std::string to_string(Subspace subspace);
Field parse_field(std::string_view text);
Subspace parse_subspace(std::string_view text);

// Exponent p in [1, inf]. Infinity is a distinct exact state, never a large float.
class Exponent {
 public:
  // Implicit so call sites can write Exponent p = 2.0; a double +inf maps to the exact infinity.
  Exponent(double p);  // NOLINT
  static Exponent infinity();
  static Exponent parse(std::string_view text);  // "inf" or a number >= 1

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }
  // Finite value; +inf for the infinite exponent.
  double value() const { return infinite_ ? std::numeric_limits<double>::infinity() : value_; }
  std::string to_string() const;

  friend bool operator==(const Exponent& a, const Exponent& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }

 private:
  Exponent() = default;
  double value_ = 2.0;
  bool infinite_ = false;
};

// Gas density parameters (a, b, c) on R^n.
struct EnsembleParams {
  int a = 2;
  int b = 1;
  int c = 0;
  int n = 1;

  // d = a b n(n-1)/2 + (c+1) n, recomputed on every call.
  long total_degree() const;
  // d - n, the degree of positive homogeneity of f_{a,b,c}.
  long homogeneity_degree() const;
  void validate() const;
  std::string to_string() const;  // "a,b,c;n"

  friend bool operator==(const EnsembleParams&, const EnsembleParams&) = default;
};

// Parses "a,b,c" into params with the given n.
EnsembleParams parse_ensemble(std::string_view abc, int n);

struct SchattenSpec {
  Field field = Field::Real;
  Subspace subspace = Subspace::Full;
  int n = 1;
  Exponent p = 2.0;

  bool is_legal() const;
  void validate() const;  // throws SpecificationError
  // Real dimension of the matrix subspace E.
  long real_dimension() const;
  std::string to_string() const;
};

struct EnsembleMapping {
  EnsembleParams params;
  // How many singular values each gas coordinate accounts for.
  int multiplicity = 1;
  // Odd-size anti-symmetric Hermitian matrices carry one extra zero singular value.
  bool appended_zero = false;
  // Gas coordinates are signed eigenvalues rather than singular values.
  bool signed_eigenvalues = false;
  std::string note;
};

EnsembleMapping ensemble_of(const SchattenSpec& spec);

}  // namespace schatten
