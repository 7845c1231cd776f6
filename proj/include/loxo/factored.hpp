#pragma once

#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "loxo/places.hpp"
#include "loxo/torus.hpp"

namespace loxo {

/// Prime type of the base field: rational primes for Q, monic irreducibles for F_p(t).
template <class F>
using PrimeOf = std::conditional_t<std::is_same_v<F, Rational>, BigInt, FpPoly>;

/// unit * prod basis[i]^exps[i]. The unit is +-1 over Q and lies in F_p^* over F_p(t).
struct FactoredElement {
  long unit = 1;
  std::vector<BigInt> exps;
  friend bool operator==(const FactoredElement&, const FactoredElement&) = default;
};

struct FactoredPoint {
  FactoredElement x, y;
  friend bool operator==(const FactoredPoint&, const FactoredPoint&) = default;
};

struct FactoredMap {
  GLZ2Matrix matrix;
  FactoredElement alpha, beta;
  friend bool operator==(const FactoredMap&, const FactoredMap&) = default;
};

/// A finite set of primes closed under the torus group law: every element built
/// from inputs factored over the basis stays expressible over it. Orbits then
/// move linearly on exponent vectors and never need to be materialized.
template <class F>
class FactoredTorus {
 public:
  using Prime = PrimeOf<F>;

  FactoredTorus(FieldContext ctx, std::vector<Prime> primes);
  /// Basis of every prime dividing a numerator or denominator of `elements`.
  static FactoredTorus spanning(FieldContext ctx, std::span<const F> elements);

  FieldContext context() const { return ctx_; }
  const std::vector<Prime>& primes() const { return primes_; }
  std::size_t size() const { return primes_.size(); }

  /// InvariantViolation if x has a prime outside the basis.
  FactoredElement factor(const F& x) const;
  FactoredPoint factor(const TorusPoint<F>& p) const;
  FactoredMap factor(const PseudoMonomialMap<F>& f) const;

  /// OverflowGuard if the result would exceed the limits.
  F materialize(const FactoredElement& e, const Limits& limits = {}) const;
  TorusPoint<F> materialize(const FactoredPoint& p, const Limits& limits = {}) const;
  PseudoMonomialMap<F> materialize(const FactoredMap& f, const Limits& limits = {}) const;

  FactoredElement one() const;
  FactoredElement multiply(const FactoredElement& a, const FactoredElement& b) const;
  FactoredElement power(const FactoredElement& a, const BigInt& k) const;
  FactoredElement invert(const FactoredElement& a) const;

  FactoredPoint monomial_apply(const GLZ2Matrix& m, const FactoredPoint& p) const;
  FactoredPoint apply(const FactoredMap& f, const FactoredPoint& p) const;
  FactoredMap compose(const FactoredMap& f, const FactoredMap& g) const;
  FactoredMap inverse(const FactoredMap& f) const;
  FactoredMap power(const FactoredMap& f, long n) const;

  /// Exact ords at finite places; archimedean logs in double (may be infinite).
  LogAbs abs_log(const Place& v, const FactoredElement& e) const;
  Height height(const FactoredPoint& p) const;
  /// Arch/inf first, then one place per basis prime.
  std::vector<Place> places() const;

  /// Canonical serialization; equal keys iff equal elements.
  std::string key(const FactoredElement& e) const;
  std::string key(const FactoredPoint& p) const;
  /// Human-readable product, e.g. "-2^5*3^-1" or "2*(t+1)^3".
  std::string to_string(const FactoredElement& e) const;
  std::string to_string(const FactoredPoint& p) const { return to_string(p.x) + "," + to_string(p.y); }

  /// Size of the materialized element: decimal digits over Q, degree over F_p(t).
  double size_estimate(const FactoredElement& e) const;

 private:
  FieldContext ctx_;
  std::vector<Prime> primes_;
  std::vector<double> logs_;  // log q over Q, deg pi over F_p(t)
};

/// One term c * prod coords[i]^exps[i] of a Laurent polynomial in several variables.
template <class F>
struct LaurentTerm {
  std::vector<long> exps;
  F coeff;
};

/// Whether the Laurent polynomial vanishes at the factored coordinates. Decided by
/// combining equal monomials, then a valuation with a unique extremal term, then
/// archimedean dominance, and finally exact evaluation within the limits.
/// Coefficients must factor over the basis.
template <class F>
bool factored_vanishes(const FactoredTorus<F>& torus, const std::vector<LaurentTerm<F>>& terms,
                       std::span<const FactoredElement> coords, const Limits& limits = {});

}  // namespace loxo
