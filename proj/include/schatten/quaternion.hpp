#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <ostream>

#include <Eigen/Core>

namespace schatten {

// Real quaternion w + x i + y j + z k.
struct Quaternion {
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double w_) : w(w_) {}  // NOLINT: implicit real embedding
  constexpr Quaternion(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}

  static constexpr Quaternion i() { return {0, 1, 0, 0}; }
  static constexpr Quaternion j() { return {0, 0, 1, 0}; }
  static constexpr Quaternion k() { return {0, 0, 0, 1}; }

  constexpr Quaternion& operator+=(const Quaternion& o) {
    w += o.w; x += o.x; y += o.y; z += o.z;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& o) {
    w -= o.w; x -= o.x; y -= o.y; z -= o.z;
    return *this;
  }
  constexpr Quaternion& operator*=(double s) {
    w *= s; x *= s; y *= s; z *= s;
    return *this;
  }
  constexpr Quaternion& operator*=(const Quaternion& o);
  constexpr Quaternion& operator/=(double s) { return *this *= (1.0 / s); }
};

constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
constexpr Quaternion operator-(const Quaternion& a) { return {-a.w, -a.x, -a.y, -a.z}; }
constexpr Quaternion operator*(Quaternion a, double s) { return a *= s; }
constexpr Quaternion operator*(double s, Quaternion a) { return a *= s; }
constexpr Quaternion operator/(Quaternion a, double s) { return a /= s; }

// Hamilton product.
constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

constexpr Quaternion& Quaternion::operator*=(const Quaternion& o) { return *this = *this * o; }

constexpr bool operator==(const Quaternion& a, const Quaternion& b) {
  return a.w == b.w && a.x == b.x && a.y == b.y && a.z == b.z;
}
constexpr bool operator!=(const Quaternion& a, const Quaternion& b) { return !(a == b); }

constexpr Quaternion conj(const Quaternion& q) { return {q.w, -q.x, -q.y, -q.z}; }
constexpr double abs2(const Quaternion& q) { return q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z; }
inline double abs(const Quaternion& q) { return std::sqrt(abs2(q)); }
constexpr double real(const Quaternion& q) { return q.w; }
// Euclidean length of the vector (i, j, k) part.
inline double imag_norm(const Quaternion& q) { return std::sqrt(q.x * q.x + q.y * q.y + q.z * q.z); }
inline bool isfinite(const Quaternion& q) {
  return std::isfinite(q.w) && std::isfinite(q.x) && std::isfinite(q.y) && std::isfinite(q.z);
}

// q = z1 + z2 j with z1 = w + x i and z2 = y + z i.
inline std::complex<double> symplectic_first(const Quaternion& q) { return {q.w, q.x}; }
inline std::complex<double> symplectic_second(const Quaternion& q) { return {q.y, q.z}; }

inline std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
  return os << '(' << q.w << ' ' << q.x << "i " << q.y << "j " << q.z << "k)";
}

// Scalar-generic helpers shared by the matrix code.
inline double abs2(double v) { return v * v; }
inline double abs2(const std::complex<double>& v) { return std::norm(v); }
inline double conj(double v) { return v; }
inline double real(double v) { return v; }
inline double imag_norm(double) { return 0.0; }
inline double imag_norm(const std::complex<double>& v) { return std::abs(v.imag()); }

}  // namespace schatten

namespace Eigen {

template <>
struct NumTraits<schatten::Quaternion> : GenericNumTraits<double> {
  typedef double Real;
  typedef schatten::Quaternion NonInteger;
  typedef schatten::Quaternion Nested;
  typedef schatten::Quaternion Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 0,
    ReadCost = 4,
    AddCost = 4,
    MulCost = 16
  };
};

template <typename BinaryOp>
struct ScalarBinaryOpTraits<schatten::Quaternion, double, BinaryOp> {
  typedef schatten::Quaternion ReturnType;
};

template <typename BinaryOp>
struct ScalarBinaryOpTraits<double, schatten::Quaternion, BinaryOp> {
  typedef schatten::Quaternion ReturnType;
};

}  // namespace Eigen
