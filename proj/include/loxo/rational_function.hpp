#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "loxo/fp_poly.hpp"

namespace loxo {

/// Element of F_p(t): num/den with den monic and gcd(num, den) = 1.
class RationalFunction {
 public:
  explicit RationalFunction(std::uint32_t p = 2) : num_(p), den_(FpPoly::constant(p, 1)) {}
  RationalFunction(FpPoly num, FpPoly den);
  explicit RationalFunction(FpPoly num) : RationalFunction(num, FpPoly::constant(num.characteristic(), 1)) {}

  static RationalFunction constant(std::uint32_t p, long c) { return RationalFunction(FpPoly::constant(p, c)); }
  static RationalFunction t(std::uint32_t p) { return RationalFunction(FpPoly::monomial(p, 1, 1)); }
  /// "num" or "num/den", each side a polynomial optionally in parentheses.
  static RationalFunction parse(std::uint32_t p, std::string_view text);

  std::uint32_t characteristic() const { return num_.characteristic(); }
  const FpPoly& num() const { return num_; }
  const FpPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  /// deg num - deg den; minus the order at the infinite place.
  long degree() const { return num_.degree() - den_.degree(); }

  RationalFunction inverse() const;
  RationalFunction frobenius(unsigned k) const { return RationalFunction(num_.frobenius(k), den_.frobenius(k)); }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  RationalFunction operator-() const { return RationalFunction(-num_, den_); }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string to_string() const;

 private:
  FpPoly num_, den_;
};

RationalFunction pow(const RationalFunction& x, long e);

/// Order of x at the monic irreducible pi.
long ord(const RationalFunction& x, const FpPoly& pi);

}  // namespace loxo
