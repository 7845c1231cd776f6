#pragma once

#include <string>

#include "loxo/integer.hpp"

namespace loxo {

/// Exact element a + b*sqrt(D) of a real quadratic field, D squarefree and
/// positive. Plain rationals have b == 0 and D == 1 and mix with any field.
/// Mixing two different irrational radicands throws InvariantViolation.
class QuadraticNumber {
 public:
  QuadraticNumber() : a_(0), b_(0), d_(1) {}
  QuadraticNumber(const Rational& a) : a_(a), b_(0), d_(1) {}  // NOLINT: implicit by design of the field
  QuadraticNumber(long a) : QuadraticNumber(Rational(a)) {}     // NOLINT
  QuadraticNumber(const BigInt& a) : QuadraticNumber(Rational(a)) {}  // NOLINT
  /// Any positive radicand; square factors are moved into b.
  QuadraticNumber(const Rational& a, const Rational& b, const BigInt& radicand);

  /// sqrt(n) for n >= 0.
  static QuadraticNumber sqrt(const BigInt& n);

  const Rational& rational_part() const { return a_; }
  const Rational& surd_coefficient() const { return b_; }
  const BigInt& radicand() const { return d_; }
  bool is_rational() const { return b_ == 0; }

  QuadraticNumber conjugate() const;
  /// a^2 - b^2 D.
  Rational norm() const { return a_ * a_ - b_ * b_ * Rational(d_); }
  /// Exact sign: -1, 0, +1.
  int sign() const;
  double to_double() const;

  friend QuadraticNumber operator+(const QuadraticNumber& x, const QuadraticNumber& y);
  friend QuadraticNumber operator-(const QuadraticNumber& x, const QuadraticNumber& y);
  friend QuadraticNumber operator*(const QuadraticNumber& x, const QuadraticNumber& y);
  friend QuadraticNumber operator/(const QuadraticNumber& x, const QuadraticNumber& y);
  QuadraticNumber operator-() const;

  friend bool operator==(const QuadraticNumber& x, const QuadraticNumber& y) { return (x - y).sign() == 0; }
  friend bool operator<(const QuadraticNumber& x, const QuadraticNumber& y) { return (x - y).sign() < 0; }
  friend bool operator>(const QuadraticNumber& x, const QuadraticNumber& y) { return y < x; }
  friend bool operator<=(const QuadraticNumber& x, const QuadraticNumber& y) { return !(y < x); }
  friend bool operator>=(const QuadraticNumber& x, const QuadraticNumber& y) { return !(x < y); }

  /// "a+b√D" or just "a" for rationals.
  std::string to_string() const;

 private:
  static BigInt common_radicand(const QuadraticNumber& x, const QuadraticNumber& y);
  void normalize();
  Rational a_, b_;
  BigInt d_;
};

QuadraticNumber abs(const QuadraticNumber& x);

}  // namespace loxo
