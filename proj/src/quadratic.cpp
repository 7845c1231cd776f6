#include "loxo/quadratic.hpp"

#include <cmath>

#include "loxo/errors.hpp"

namespace loxo {

QuadraticNumber::QuadraticNumber(const Rational& a, const Rational& b, const BigInt& radicand)
    : a_(a), b_(b), d_(radicand) {
  if (d_ <= 0) throw InvariantViolation("radicand must be positive");
  auto split = squarefree_split(d_);
  b_ *= split.square_root;
  d_ = split.squarefree;
  normalize();
}

void QuadraticNumber::normalize() {
  if (d_ == 1) {
    a_ += b_;
    b_ = 0;
  }
  if (b_ == 0) d_ = 1;
}

QuadraticNumber QuadraticNumber::sqrt(const BigInt& n) {
  if (n < 0) throw InvariantViolation("sqrt of a negative integer");
  if (n == 0) return {};
  return QuadraticNumber(0, 1, n);
}

BigInt QuadraticNumber::common_radicand(const QuadraticNumber& x, const QuadraticNumber& y) {
  if (x.d_ == 1) return y.d_;
  if (y.d_ == 1 || x.d_ == y.d_) return x.d_;
  throw InvariantViolation("mixed quadratic fields Q(sqrt " + x.d_.get_str() + ") and Q(sqrt " + y.d_.get_str() +
                           ")");
}

QuadraticNumber QuadraticNumber::conjugate() const {
  QuadraticNumber out = *this;
  out.b_ = -b_;
  return out;
}

int QuadraticNumber::sign() const {
  const int sa = sgn(a_), sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: compare a^2 with b^2 D.
  const int cmp_ = cmp(a_ * a_, b_ * b_ * Rational(d_));
  if (cmp_ == 0) return 0;
  return cmp_ > 0 ? sa : sb;
}

double QuadraticNumber::to_double() const {
  return a_.get_d() + b_.get_d() * std::sqrt(d_.get_d());
}

QuadraticNumber operator+(const QuadraticNumber& x, const QuadraticNumber& y) {
  QuadraticNumber out;
  out.d_ = QuadraticNumber::common_radicand(x, y);
  out.a_ = x.a_ + y.a_;
  out.b_ = x.b_ + y.b_;
  out.normalize();
  return out;
}

QuadraticNumber QuadraticNumber::operator-() const {
  QuadraticNumber out = *this;
  out.a_ = -a_;
  out.b_ = -b_;
  return out;
}

QuadraticNumber operator-(const QuadraticNumber& x, const QuadraticNumber& y) { return x + (-y); }

QuadraticNumber operator*(const QuadraticNumber& x, const QuadraticNumber& y) {
  QuadraticNumber out;
  out.d_ = QuadraticNumber::common_radicand(x, y);
  out.a_ = x.a_ * y.a_ + x.b_ * y.b_ * Rational(out.d_);
  out.b_ = x.a_ * y.b_ + x.b_ * y.a_;
  out.normalize();
  return out;
}

QuadraticNumber operator/(const QuadraticNumber& x, const QuadraticNumber& y) {
  const Rational n = y.norm();
  if (n == 0) throw ZeroInput("division by zero in a quadratic field");
  QuadraticNumber inv = y.conjugate();
  inv.a_ /= n;
  inv.b_ /= n;
  return x * inv;
}

QuadraticNumber abs(const QuadraticNumber& x) { return x.sign() < 0 ? -x : x; }

std::string QuadraticNumber::to_string() const {
  if (b_ == 0) return a_.get_str();
  std::string out = a_ == 0 ? "" : a_.get_str();
  if (b_ > 0 && !out.empty()) out += "+";
  if (b_ == -1) {
    out += "-";
  } else if (b_ != 1) {
    out += b_.get_str();
  }
  return out + "√" + d_.get_str();
}

}  // namespace loxo
