#include "loxo/rational_function.hpp"

#include "loxo/errors.hpp"

namespace loxo {

RationalFunction::RationalFunction(FpPoly num, FpPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (num_.characteristic() != den_.characteristic())
    throw CharacteristicMismatch("numerator and denominator characteristics differ");
  if (den_.is_zero()) throw ZeroInput("rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = FpPoly::constant(characteristic(), 1);
    return;
  }
  FpPoly g = gcd(num_, den_);
  if (!g.is_one()) {
    num_ = divmod(num_, g).first;
    den_ = divmod(den_, g).first;
  }
  const std::uint32_t inv = fp_inverse(den_.lead(), characteristic());
  num_ = num_.scaled(inv);
  den_ = den_.scaled(inv);
}

RationalFunction RationalFunction::parse(std::uint32_t p, std::string_view text) {
  int depth = 0;
  std::size_t slash = std::string_view::npos;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(') ++depth;
    if (text[i] == ')') --depth;
    if (text[i] == '/' && depth == 0) {
      if (slash != std::string_view::npos) throw ParseError("more than one '/' in '" + std::string(text) + "'");
      slash = i;
    }
  }
  if (slash == std::string_view::npos) return RationalFunction(FpPoly::parse(p, text));
  FpPoly den = FpPoly::parse(p, text.substr(slash + 1));
  if (den.is_zero()) throw ParseError("zero denominator in '" + std::string(text) + "'");
  return RationalFunction(FpPoly::parse(p, text.substr(0, slash)), den);
}

RationalFunction RationalFunction::inverse() const {
  if (is_zero()) throw ZeroInput("inverse of 0 in F_p(t)");
  return RationalFunction(den_, num_);
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
  return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) { return a * b.inverse(); }

std::string RationalFunction::to_string() const {
  if (den_.is_one()) return num_.to_string();
  return num_.to_string() + "/" + den_.to_string();
}

RationalFunction pow(const RationalFunction& x, long e) {
  if (e < 0) return pow(x.inverse(), -e);
  RationalFunction result = RationalFunction::constant(x.characteristic(), 1), base = x;
  unsigned long k = static_cast<unsigned long>(e);
  while (k) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

long ord(const RationalFunction& x, const FpPoly& pi) {
  if (x.is_zero()) throw ZeroInput("ord of 0");
  return multiplicity(x.num(), pi) - multiplicity(x.den(), pi);
}

}  // namespace loxo
