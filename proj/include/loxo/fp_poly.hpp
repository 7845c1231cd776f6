#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace loxo {

/// Dense univariate polynomial over the prime field F_p in the variable t.
/// Coefficients are stored constant-first with no trailing zeros.
class FpPoly {
 public:
  explicit FpPoly(std::uint32_t p = 2);
  FpPoly(std::uint32_t p, std::vector<std::uint32_t> coeffs);

  static FpPoly constant(std::uint32_t p, long c);
  static FpPoly monomial(std::uint32_t p, std::uint32_t c, std::size_t degree);
  static FpPoly parse(std::uint32_t p, std::string_view text);

  std::uint32_t characteristic() const { return p_; }
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  std::uint32_t lead() const { return c_.empty() ? 0 : c_.back(); }
  std::uint32_t coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  const std::vector<std::uint32_t>& coeffs() const { return c_; }

  FpPoly monic() const;
  FpPoly scaled(std::uint32_t c) const;
  /// t -> t^(p^k); coefficient-wise Frobenius is trivial over F_p.
  FpPoly frobenius(unsigned k) const;

  friend FpPoly operator+(const FpPoly& a, const FpPoly& b);
  friend FpPoly operator-(const FpPoly& a, const FpPoly& b);
  friend FpPoly operator*(const FpPoly& a, const FpPoly& b);
  FpPoly operator-() const;
  friend bool operator==(const FpPoly& a, const FpPoly& b) { return a.p_ == b.p_ && a.c_ == b.c_; }
  /// Degree first, then coefficients from the top; gives the fixed place ordering.
  friend bool operator<(const FpPoly& a, const FpPoly& b);

  std::string to_string() const;

 private:
  void trim();
  std::uint32_t p_;
  std::vector<std::uint32_t> c_;
};

std::uint32_t fp_inverse(std::uint32_t a, std::uint32_t p);
std::uint32_t fp_pow(std::uint32_t a, unsigned long long e, std::uint32_t p);

/// Quotient and remainder; divisor nonzero.
std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b);
/// Monic gcd (zero if both zero).
FpPoly gcd(const FpPoly& a, const FpPoly& b);

/// Trial division by every monic polynomial of degree <= deg/2.
bool is_irreducible(const FpPoly& f);

/// Monic irreducible factors with multiplicity, sorted by the place ordering.
/// The leading coefficient is dropped.
std::vector<std::pair<FpPoly, long>> factor(const FpPoly& f);

/// Multiplicity of the irreducible pi in f (f nonzero).
long multiplicity(FpPoly f, const FpPoly& pi);

}  // namespace loxo
