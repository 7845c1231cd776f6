#pragma once

#include <map>
#include <utility>

#include "loxo/quadratic.hpp"
#include "loxo/torus.hpp"

namespace loxo {

/// Weight (s, t) of the monomial valuation v_{s,t}(sum a_ij x^i y^j) = min(s i + t j).
/// Stored as given; `same_class` compares projective classes.
struct MonomialWeight {
  QuadraticNumber s, t;

  MonomialWeight(QuadraticNumber s_, QuadraticNumber t_) : s(std::move(s_)), t(std::move(t_)) {
    if (s.sign() <= 0 || t.sign() <= 0) throw ConeExit("monomial weight must have s > 0 and t > 0");
  }
  /// Representative with s = 1.
  MonomialWeight canonical() const { return {QuadraticNumber(1), t / s}; }
  bool same_class(const MonomialWeight& o) const { return s * o.t == o.s * t; }
};

/// Laurent polynomial in x, y with coefficients in K; zero coefficients are never stored.
template <class F>
class LaurentPolynomial {
 public:
  using Exponent = std::pair<long, long>;

  LaurentPolynomial() = default;
  explicit LaurentPolynomial(std::map<Exponent, F> terms);

  static LaurentPolynomial monomial(long i, long j, F coeff);

  const std::map<Exponent, F>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  friend LaurentPolynomial operator+(const LaurentPolynomial& p, const LaurentPolynomial& q) {
    auto out = p.terms_;
    for (const auto& [e, c] : q.terms_) {
      auto it = out.find(e);
      if (it == out.end()) {
        out.emplace(e, c);
      } else {
        it->second = it->second + c;
      }
    }
    return LaurentPolynomial(std::move(out));
  }
  friend LaurentPolynomial operator*(const LaurentPolynomial& p, const LaurentPolynomial& q) {
    LaurentPolynomial out;
    for (const auto& [e1, c1] : p.terms_)
      for (const auto& [e2, c2] : q.terms_)
        out = out + monomial(e1.first + e2.first, e1.second + e2.second, c1 * c2);
    return out;
  }
  friend bool operator==(const LaurentPolynomial& p, const LaurentPolynomial& q) { return p.terms_ == q.terms_; }

 private:
  std::map<Exponent, F> terms_;
};

/// P o f: substitutes f = (alpha x^a y^b, beta x^c y^d).
template <class F>
LaurentPolynomial<F> pullback(const PseudoMonomialMap<F>& f, const LaurentPolynomial<F>& p);

template <class F>
QuadraticNumber monomial_valuation_eval(const MonomialWeight& w, const LaurentPolynomial<F>& p);

/// f_* v_{s,t} = v_{as + bt, cs + dt}.
MonomialWeight pushforward_weight(const GLZ2Matrix& m, const MonomialWeight& w);

/// Perron eigen-data of a loxodromic matrix, normalized into the open positive
/// quadrant. `normalized` is the matrix actually used: M, M^2, or their
/// conjugate by diag(1, -1); then pushforward_weight(normalized, weight) = lambda * weight.
struct Eigenweight {
  MonomialWeight weight;
  QuadraticNumber lambda;
  GLZ2Matrix normalized;
  bool squared = false;
  bool sign_conjugated = false;
};

Eigenweight eigenweights(const GLZ2Matrix& m);

/// Fixed slopes of u -> (a u + b) / (c u + d). v_plus attracts (Mobius derivative
/// det / (c u + d)^2 of modulus < 1); the multiplier at a fixed slope is 1 / (c u + d),
/// of modulus 1/rho at v_plus and rho at v_minus.
struct MobiusFixedPoints {
  QuadraticNumber v_plus, v_minus;
  QuadraticNumber multiplier_plus, multiplier_minus;
  QuadraticNumber derivative_plus, derivative_minus;
};

MobiusFixedPoints mobius_fixed_points(const GLZ2Matrix& m);

struct FunctorialityVerdict {
  bool holds = false;
  QuadraticNumber pushed;  // v_{M w}(P)
  QuadraticNumber pulled;  // v_w(P o f)
};

/// Checks (f_* v_w)(P) = v_w(P o f) exactly.
template <class F>
FunctorialityVerdict check_eigenvaluation_functoriality(const PseudoMonomialMap<F>& f, const MonomialWeight& w,
                                                        const LaurentPolynomial<F>& p);

}  // namespace loxo
