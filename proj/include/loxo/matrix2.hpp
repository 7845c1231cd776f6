#pragma once

#include <array>
#include <string>

#include "loxo/errors.hpp"
#include "loxo/integer.hpp"

namespace loxo {

/// Dense 2x2 matrix over any ring scalar (BigInt, Rational, QuadraticNumber).
template <class Scalar>
struct Matrix2 {
  Scalar a{0}, b{0}, c{0}, d{0};

  static Matrix2 identity() { return {Scalar(1), Scalar(0), Scalar(0), Scalar(1)}; }

  Scalar trace() const { return a + d; }
  Scalar det() const { return a * d - b * c; }
  Matrix2 transpose() const { return {a, c, b, d}; }

  template <class Other>
  Matrix2<Other> cast() const {
    return {Other(a), Other(b), Other(c), Other(d)};
  }

  friend Matrix2 operator*(const Matrix2& m, const Matrix2& n) {
    return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d, m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
  }
  friend std::array<Scalar, 2> operator*(const Matrix2& m, const std::array<Scalar, 2>& v) {
    return {m.a * v[0] + m.b * v[1], m.c * v[0] + m.d * v[1]};
  }
  friend bool operator==(const Matrix2& m, const Matrix2& n) {
    return m.a == n.a && m.b == n.b && m.c == n.c && m.d == n.d;
  }
};

/// Binary powering, n >= 0.
template <class Scalar>
Matrix2<Scalar> power(Matrix2<Scalar> m, unsigned long n) {
  Matrix2<Scalar> out = Matrix2<Scalar>::identity();
  while (n) {
    if (n & 1) out = out * m;
    n >>= 1;
    if (n) m = m * m;
  }
  return out;
}

/// Element of GL_2(Z): integer entries with determinant +1 or -1.
class GLZ2Matrix {
 public:
  GLZ2Matrix() : m_(Matrix2<BigInt>::identity()) {}
  GLZ2Matrix(BigInt a, BigInt b, BigInt c, BigInt d) : GLZ2Matrix(Matrix2<BigInt>{a, b, c, d}) {}
  explicit GLZ2Matrix(const Matrix2<BigInt>& m) : m_(m) {
    BigInt det = m_.det();
    if (det != 1 && det != -1)
      throw InvariantViolation("matrix determinant is " + det.get_str() + ", expected +1 or -1");
  }

  static GLZ2Matrix identity() { return {}; }

  const Matrix2<BigInt>& entries() const { return m_; }
  const BigInt& a() const { return m_.a; }
  const BigInt& b() const { return m_.b; }
  const BigInt& c() const { return m_.c; }
  const BigInt& d() const { return m_.d; }
  BigInt trace() const { return m_.trace(); }
  int det() const { return m_.det() == 1 ? 1 : -1; }

  GLZ2Matrix inverse() const {
    const BigInt s = det();
    return GLZ2Matrix(Matrix2<BigInt>{s * m_.d, -s * m_.b, -s * m_.c, s * m_.a});
  }
  /// Signed power; negative n uses the inverse.
  GLZ2Matrix pow(long n) const {
    if (n < 0) return inverse().pow(-n);
    return GLZ2Matrix(power(m_, static_cast<unsigned long>(n)));
  }

  friend GLZ2Matrix operator*(const GLZ2Matrix& x, const GLZ2Matrix& y) { return GLZ2Matrix(x.m_ * y.m_); }
  friend bool operator==(const GLZ2Matrix& x, const GLZ2Matrix& y) { return x.m_ == y.m_; }

  std::string to_string() const {
    return "[[" + m_.a.get_str() + "," + m_.b.get_str() + "],[" + m_.c.get_str() + "," + m_.d.get_str() + "]]";
  }

 private:
  Matrix2<BigInt> m_;
};

}  // namespace loxo
