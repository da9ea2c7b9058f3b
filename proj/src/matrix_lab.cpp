#include "schatten/matrix_lab.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "schatten/errors.hpp"

namespace schatten {

namespace {

constexpr double kJacobiTolerance = 1e-13;
constexpr int kJacobiMaxSweeps = 64;

double magnitude(double v) { return std::abs(v); }
double magnitude(const std::complex<double>& v) { return std::abs(v); }

template <typename Scalar>
Scalar column_inner(const Matrix<Scalar>& a, Eigen::Index p, Eigen::Index q) {
  Scalar acc = Scalar(0);
  for (Eigen::Index i = 0; i < a.rows(); ++i) acc += conj(a(i, p)) * a(i, q);
  return acc;
}

// Hestenes one-sided Jacobi: orthogonalize columns, singular values are the final column norms.
template <typename Scalar>
SvdResult jacobi(Matrix<Scalar> a) {
  const Eigen::Index n = a.cols();
  SvdResult out;
  int sweep = 0;
  for (; sweep < kJacobiMaxSweeps; ++sweep) {
    bool rotated = false;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double alpha = a.col(p).squaredNorm();
        const double beta = a.col(q).squaredNorm();
        const Scalar gamma = column_inner(a, p, q);
        const double g = magnitude(gamma);
        if (g == 0.0 || g <= kJacobiTolerance * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        const Scalar phase = gamma / g;
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
          const Scalar ap = a(i, p);
          const Scalar aq = a(i, q) * conj(phase);
          a(i, p) = c * ap - s * aq;
          a(i, q) = s * ap + c * aq;
        }
      }
    }
    if (!rotated) break;
  }
  if (sweep == kJacobiMaxSweeps) throw NumericalError("Jacobi SVD did not converge within 64 sweeps");
  out.sweeps = sweep + 1;
  out.singular_values.resize(n);
  for (Eigen::Index j = 0; j < n; ++j) out.singular_values[j] = a.col(j).norm();
  std::sort(out.singular_values.begin(), out.singular_values.end(), std::greater<double>());
  return out;
}

template <typename Scalar>
void check_finite(const Matrix<Scalar>& t) {
  for (Eigen::Index j = 0; j < t.cols(); ++j)
    for (Eigen::Index i = 0; i < t.rows(); ++i)
      if (!std::isfinite(abs2(t(i, j)))) throw DomainError("matrix has non-finite entries");
}

template <typename Scalar>
Scalar unit_in_field(const Quaternion& u) {
  if constexpr (std::is_same_v<Scalar, double>) {
    if (u.x != 0.0 || u.y != 0.0 || u.z != 0.0) throw SpecificationError("unit scalar is not real");
    return u.w;
  } else if constexpr (std::is_same_v<Scalar, std::complex<double>>) {
    if (u.y != 0.0 || u.z != 0.0) throw SpecificationError("unit scalar is not complex");
    return {u.w, u.x};
  } else {
    return u;
  }
}

template <typename Scalar>
Scalar standard_normal_scalar(std::mt19937_64& rng, std::normal_distribution<double>& normal) {
  if constexpr (std::is_same_v<Scalar, double>) {
    return normal(rng);
  } else if constexpr (std::is_same_v<Scalar, std::complex<double>>) {
    const double re = normal(rng);
    const double im = normal(rng);
    return {re, im};
  } else {
    const double w = normal(rng);
    const double x = normal(rng);
    const double y = normal(rng);
    const double z = normal(rng);
    return {w, x, y, z};
  }
}

}  // namespace

Field field_of(const MatrixSample& m) {
  return std::visit([](const auto& t) { return field_of_scalar<typename std::decay_t<decltype(t)>::Scalar>(); }, m);
}

SvdResult svd(const RealMatrix& t) {
  if (t.rows() != t.cols()) throw DimensionMismatch("svd expects a square matrix");
  check_finite(t);
  return jacobi<double>(t);
}

SvdResult svd(const ComplexMatrix& t) {
  if (t.rows() != t.cols()) throw DimensionMismatch("svd expects a square matrix");
  check_finite(t);
  return jacobi<std::complex<double>>(t);
}

SvdResult svd(const QuaternionMatrix& t) {
  if (t.rows() != t.cols()) throw DimensionMismatch("svd expects a square matrix");
  check_finite(t);
  const SvdResult doubled = jacobi<std::complex<double>>(complex_adjoint(t));
  SvdResult out;
  out.sweeps = doubled.sweeps;
  out.singular_values.resize(t.cols());
  for (Eigen::Index k = 0; k < t.cols(); ++k)
    out.singular_values[k] = 0.5 * (doubled.singular_values[2 * k] + doubled.singular_values[2 * k + 1]);
  return out;
}

SvdResult svd(const MatrixSample& t) {
  return std::visit([](const auto& m) { return svd(m); }, t);
}

ComplexMatrix complex_adjoint(const QuaternionMatrix& t) {
  const Eigen::Index n = t.rows();
  const Eigen::Index m = t.cols();
  ComplexMatrix out(2 * n, 2 * m);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      const std::complex<double> z1 = symplectic_first(t(i, j));
      const std::complex<double> z2 = symplectic_second(t(i, j));
      out(i, j) = z1;
      out(i, j + m) = z2;
      out(i + n, j) = -std::conj(z2);
      out(i + n, j + m) = std::conj(z1);
    }
  }
  return out;
}

double schatten_norm(const Eigen::VectorXd& s, const Exponent& p) {
  if (s.size() == 0) return 0.0;
  if (p.is_infinite()) return s.maxCoeff();
  const double pv = p.value();
  if (pv == 1.0) return s.sum();
  if (pv == 2.0) return s.norm();
  // Scale by the largest value so the power sum cannot overflow.
  const double top = s.maxCoeff();
  if (top == 0.0) return 0.0;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) acc += std::pow(s[i] / top, pv);
  return top * std::pow(acc, 1.0 / pv);
}

double schatten_norm(const MatrixSample& t, const Exponent& p) {
  return std::visit([&](const auto& m) { return schatten_norm(m, p); }, t);
}

template <typename Scalar>
EntryIdentityTerms entry_identity_terms(const Matrix<Scalar>& t) {
  if (t.rows() != t.cols()) throw DimensionMismatch("entry identities need a square matrix");
  const Eigen::Index n = t.rows();
  EntryIdentityTerms out;
  const Eigen::VectorXd s = svd(t).singular_values;
  const Eigen::VectorXd s2 = s.array().square();
  out.lhs4 = s2.array().square().sum();
  out.lhs22 = s2.sum() * s2.sum() - out.lhs4;

  Eigen::MatrixXd m2(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m2(i, j) = abs2(t(i, j));
  const double total = m2.sum();
  out.scale = total * total;
  out.sum_abs4 = m2.array().square().sum();

  double rows = 0.0;
  double cols = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index l = 0; l < n; ++l) {
        if (j == l) continue;
        rows += m2(i, j) * m2(i, l);
        cols += m2(j, i) * m2(l, i);
      }
    }
  }
  out.row_col_cross = rows + cols;

  double pair = 0.0;
  Scalar quartic = Scalar(0);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index l = 0; l < n; ++l) {
      if (i == l) continue;
      for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index k = 0; k < n; ++k) {
          if (j == k) continue;
          pair += m2(i, j) * m2(l, k);
          quartic += t(i, j) * conj(t(l, j)) * t(l, k) * conj(t(i, k));
        }
      }
    }
  }
  out.pair_cross = pair;
  out.quartic_cross = real(quartic);
  out.quartic_cross_imag = imag_norm(quartic);

  if constexpr (std::is_same_v<Scalar, Quaternion>) {
    out.minors = std::numeric_limits<double>::quiet_NaN();
  } else {
    double minors = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index l = i + 1; l < n; ++l)
        for (Eigen::Index j = 0; j < n; ++j)
          for (Eigen::Index k = j + 1; k < n; ++k) minors += abs2(t(i, j) * t(l, k) - t(i, k) * t(l, j));
    out.minors = 2.0 * minors;
  }
  return out;
}

template EntryIdentityTerms entry_identity_terms<double>(const RealMatrix&);
template EntryIdentityTerms entry_identity_terms<std::complex<double>>(const ComplexMatrix&);
template EntryIdentityTerms entry_identity_terms<Quaternion>(const QuaternionMatrix&);

EntryIdentityTerms entry_identity_terms(const MatrixSample& t) {
  return std::visit([](const auto& m) { return entry_identity_terms(m); }, t);
}

template <typename Scalar>
Matrix<Scalar> symmetry_transform(const Matrix<Scalar>& t, const Transform& transform) {
  const Eigen::Index n = t.rows();
  auto check_index = [n](int i) {
    if (i < 0 || i >= n) throw DimensionMismatch("transform index out of range");
  };
  return std::visit(
      [&](const auto& tr) -> Matrix<Scalar> {
        using T = std::decay_t<decltype(tr)>;
        Matrix<Scalar> out = t;
        if constexpr (std::is_same_v<T, LeftPermutation>) {
          check_index(tr.i);
          check_index(tr.j);
          out.row(tr.i).swap(out.row(tr.j));
        } else if constexpr (std::is_same_v<T, RightPermutation>) {
          check_index(tr.i);
          check_index(tr.j);
          out.col(tr.i).swap(out.col(tr.j));
        } else if constexpr (std::is_same_v<T, LeftRotation>) {
          if (n < 2) throw DimensionMismatch("rotation needs n >= 2");
          const double c = std::cos(tr.theta);
          const double s = std::sin(tr.theta);
          for (Eigen::Index j = 0; j < t.cols(); ++j) {
            out(0, j) = c * t(0, j) + s * t(1, j);
            out(1, j) = -s * t(0, j) + c * t(1, j);
          }
        } else if constexpr (std::is_same_v<T, RightRotation>) {
          if (n < 2) throw DimensionMismatch("rotation needs n >= 2");
          const double c = std::cos(tr.theta);
          const double s = std::sin(tr.theta);
          for (Eigen::Index i = 0; i < n; ++i) {
            out(i, 0) = c * t(i, 0) - s * t(i, 1);
            out(i, 1) = s * t(i, 0) + c * t(i, 1);
          }
        } else if constexpr (std::is_same_v<T, ConjugateTranspose>) {
          out = conjugate_transpose(t);
        } else if constexpr (std::is_same_v<T, Transpose>) {
          out = t.transpose();
        } else {
          check_index(tr.index);
          if (std::abs(abs2(tr.unit) - 1.0) > 1e-12) throw SpecificationError("unit scalar must have modulus 1");
          const Scalar u = unit_in_field<Scalar>(tr.unit);
          if (tr.left) {
            for (Eigen::Index j = 0; j < t.cols(); ++j) out(tr.index, j) = u * t(tr.index, j);
          } else {
            for (Eigen::Index i = 0; i < n; ++i) out(i, tr.index) = t(i, tr.index) * u;
          }
        }
        return out;
      },
      transform);
}

template RealMatrix symmetry_transform<double>(const RealMatrix&, const Transform&);
template ComplexMatrix symmetry_transform<std::complex<double>>(const ComplexMatrix&, const Transform&);
template QuaternionMatrix symmetry_transform<Quaternion>(const QuaternionMatrix&, const Transform&);

MatrixSample symmetry_transform(const MatrixSample& t, const Transform& transform) {
  return std::visit([&](const auto& m) { return MatrixSample(symmetry_transform(m, transform)); }, t);
}

template <typename Scalar>
Matrix<Scalar> gaussian_matrix(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix<Scalar> out(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) out(i, j) = standard_normal_scalar<Scalar>(rng, normal);
  return out;
}

template RealMatrix gaussian_matrix<double>(int, std::mt19937_64&);
template ComplexMatrix gaussian_matrix<std::complex<double>>(int, std::mt19937_64&);
template QuaternionMatrix gaussian_matrix<Quaternion>(int, std::mt19937_64&);

MatrixSample gaussian_matrix(Field field, int n, std::mt19937_64& rng) {
  switch (field) {
    case Field::Real: return gaussian_matrix<double>(n, rng);
    case Field::Complex: return gaussian_matrix<std::complex<double>>(n, rng);
    case Field::Quaternion: return gaussian_matrix<Quaternion>(n, rng);
  }
  throw SpecificationError("unknown field");
}

ComplexMatrix gaussian_antisym_hermitian(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double g = normal(rng);
      out(i, j) = {0.0, g};
      out(j, i) = {0.0, -g};
    }
  }
  return out;
}

}  // namespace schatten
