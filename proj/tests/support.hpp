#pragma once

// Shared random generators and independent oracles for the test suites.

#include <cmath>
#include <random>
#include <vector>

#include "loxo/field.hpp"
#include "loxo/places.hpp"

namespace loxo::testing {

inline Rational random_rational(std::mt19937_64& rng, long bound, bool nonzero = true) {
  std::uniform_int_distribution<long> num(-bound, bound), den(1, bound);
  for (;;) {
    Rational r(num(rng), den(rng));
    r.canonicalize();
    if (!nonzero || r != 0) return r;
  }
}

inline FpPoly random_poly(std::mt19937_64& rng, std::uint32_t p, int max_degree) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_int_distribution<std::uint32_t> coef(0, p - 1);
  std::vector<std::uint32_t> c(static_cast<std::size_t>(deg(rng)) + 1);
  for (auto& x : c) x = coef(rng);
  return FpPoly(p, c);
}

inline RationalFunction random_rational_function(std::mt19937_64& rng, std::uint32_t p, int max_degree,
                                                 bool nonzero = true) {
  for (;;) {
    FpPoly num = random_poly(rng, p, max_degree), den = random_poly(rng, p, max_degree);
    if (den.is_zero() || (nonzero && num.is_zero())) continue;
    return RationalFunction(num, den);
  }
}

/// Primitive integer representative of (1 : x_1 : ... : x_n) built from the
/// product of denominators and one global gcd; returns max(c, |a_i|).
inline BigInt primitive_max(const std::vector<Rational>& xs) {
  BigInt common = 1;
  for (const auto& x : xs) common *= x.get_den();
  std::vector<BigInt> nums;
  for (const auto& x : xs) nums.push_back(BigInt(x.get_num() * (common / x.get_den())));
  BigInt g = common;
  for (const auto& a : nums) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
  BigInt best = common / g;
  for (const auto& a : nums) best = std::max(best, BigInt(abs(a) / g));
  return best;
}

/// Height as the literal sum over relevant places of log+ of the coordinate norm.
template <class F>
double place_sum_height(const std::vector<F>& xs) {
  std::vector<F> nonzero;
  for (const auto& x : xs)
    if (!is_zero(x)) nonzero.push_back(x);
  if (nonzero.empty()) return 0.0;
  double h = 0.0;
  for (const auto& v : relevant_places(std::span<const F>(nonzero)))
    h += std::max(0.0, coordinate_norm_log(v, std::span<const F>(xs)));
  return h;
}

}  // namespace loxo::testing

#include "loxo/torus.hpp"

namespace loxo::testing {

inline GLZ2Matrix random_glz2(std::mt19937_64& rng, long bound, bool loxodromic_only = false) {
  std::uniform_int_distribution<long> e(-bound, bound);
  for (;;) {
    long a = e(rng), b = e(rng), c = e(rng), d = e(rng);
    long det = a * d - b * c;
    if (det != 1 && det != -1) continue;
    GLZ2Matrix m(a, b, c, d);
    if (loxodromic_only && !is_loxodromic(m)) continue;
    return m;
  }
}

inline PseudoMonomialMap<Rational> random_torus_map(std::mt19937_64& rng, long entry_bound, long coeff_bound,
                                                    bool loxodromic_only = false) {
  return {random_glz2(rng, entry_bound, loxodromic_only),
          TorusPoint<Rational>(random_rational(rng, coeff_bound), random_rational(rng, coeff_bound))};
}

inline TorusPoint<Rational> random_torus_point(std::mt19937_64& rng, long bound) {
  return {random_rational(rng, bound), random_rational(rng, bound)};
}

}  // namespace loxo::testing
