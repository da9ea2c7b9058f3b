#pragma once

#include <complex>
#include <random>
#include <type_traits>
#include <variant>

#include <Eigen/Core>

#include "schatten/core_types.hpp"
#include "schatten/quaternion.hpp"

namespace schatten {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using RealMatrix = Matrix<double>;
using ComplexMatrix = Matrix<std::complex<double>>;
using QuaternionMatrix = Matrix<Quaternion>;

// A square matrix over R, C or H.
using MatrixSample = std::variant<RealMatrix, ComplexMatrix, QuaternionMatrix>;

Field field_of(const MatrixSample& m);

template <typename Scalar>
constexpr Field field_of_scalar() {
  if constexpr (std::is_same_v<Scalar, double>) return Field::Real;
  else if constexpr (std::is_same_v<Scalar, std::complex<double>>) return Field::Complex;
  else return Field::Quaternion;
}

struct SvdResult {
  Eigen::VectorXd singular_values;  // non-increasing
  int sweeps = 0;
};

// One-sided Jacobi; quaternion input goes through the complex adjoint embedding.
SvdResult svd(const RealMatrix& t);
SvdResult svd(const ComplexMatrix& t);
SvdResult svd(const QuaternionMatrix& t);
SvdResult svd(const MatrixSample& t);

// 2n x 2n complex matrix [[Z1, Z2], [-conj(Z2), conj(Z1)]] for T = Z1 + Z2 j.
ComplexMatrix complex_adjoint(const QuaternionMatrix& t);

double schatten_norm(const Eigen::VectorXd& singular_values, const Exponent& p);

template <typename Scalar>
double schatten_norm(const Matrix<Scalar>& t, const Exponent& p) {
  return schatten_norm(svd(t).singular_values, p);
}
double schatten_norm(const MatrixSample& t, const Exponent& p);

template <typename Scalar>
double frobenius_sq(const Matrix<Scalar>& t) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < t.cols(); ++j)
    for (Eigen::Index i = 0; i < t.rows(); ++i) s += abs2(t(i, j));
  return s;
}

template <typename Scalar>
Matrix<Scalar> conjugate_transpose(const Matrix<Scalar>& t) {
  Matrix<Scalar> out(t.cols(), t.rows());
  for (Eigen::Index i = 0; i < t.rows(); ++i)
    for (Eigen::Index j = 0; j < t.cols(); ++j) out(j, i) = conj(t(i, j));
  return out;
}

// Both sides of the quartic entry/singular-value identities.
struct EntryIdentityTerms {
  double lhs4 = 0.0;           // sum s_i^4
  double sum_abs4 = 0.0;       // sum |a_ij|^4
  double row_col_cross = 0.0;  // sum_i sum_{j != l} (|a_ij|^2 |a_il|^2 + |a_ji|^2 |a_li|^2)
  double quartic_cross = 0.0;  // real part of sum_{i != l} sum_{j != k} a_ij conj(a_lj) a_lk conj(a_ik)
  double quartic_cross_imag = 0.0;  // norm of its non-real part
  double lhs22 = 0.0;          // sum_{i != j} s_i^2 s_j^2
  double pair_cross = 0.0;     // sum_{i != l} sum_{j != k} |a_ij|^2 |a_lk|^2
  double minors = 0.0;         // 2 sum_{i<l} sum_{j<k} |a_ij a_lk - a_ik a_lj|^2 (commutative fields only)
  double scale = 0.0;          // (sum |a_ij|^2)^2, for relative comparisons

  double rhs4() const { return sum_abs4 + row_col_cross + quartic_cross; }
  double rhs22() const { return pair_cross - quartic_cross; }
};

template <typename Scalar>
EntryIdentityTerms entry_identity_terms(const Matrix<Scalar>& t);
EntryIdentityTerms entry_identity_terms(const MatrixSample& t);

// Transforms under which every Schatten ball of a full matrix space is invariant.
struct LeftPermutation { int i = 0; int j = 1; };
struct RightPermutation { int i = 0; int j = 1; };
// Planar rotation [[cos, sin], [-sin, cos]] on the first two coordinates, identity elsewhere.
struct LeftRotation { double theta = 0.0; };
struct RightRotation { double theta = 0.0; };
struct ConjugateTranspose {};
struct Transpose {};
// Multiplies row (left) or column (right) `index` by a unit scalar of the field.
struct UnitScalar { bool left = true; int index = 0; Quaternion unit = Quaternion(1.0); };

using Transform = std::variant<LeftPermutation, RightPermutation, LeftRotation, RightRotation, ConjugateTranspose,
                               Transpose, UnitScalar>;

template <typename Scalar>
Matrix<Scalar> symmetry_transform(const Matrix<Scalar>& t, const Transform& transform);
MatrixSample symmetry_transform(const MatrixSample& t, const Transform& transform);

// Entries with independent standard normal real components.
template <typename Scalar>
Matrix<Scalar> gaussian_matrix(int n, std::mt19937_64& rng);
MatrixSample gaussian_matrix(Field field, int n, std::mt19937_64& rng);

// Random purely imaginary anti-symmetric matrix i A (A real anti-symmetric, Gaussian entries).
ComplexMatrix gaussian_antisym_hermitian(int n, std::mt19937_64& rng);

}  // namespace schatten
