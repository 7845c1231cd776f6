#pragma once

#include <string>

#include "loxo/field.hpp"
#include "loxo/matrix2.hpp"
#include "loxo/quadratic.hpp"

namespace loxo {

/// Point of G_m^2(K): both coordinates nonzero.
template <class F>
struct TorusPoint {
  F x, y;

  TorusPoint(F x_, F y_) : x(std::move(x_)), y(std::move(y_)) {
    if (is_zero(x) || is_zero(y)) throw InvariantViolation("torus point with a zero coordinate");
  }
  friend bool operator==(const TorusPoint& p, const TorusPoint& q) { return p.x == q.x && p.y == q.y; }
  std::string to_string() const { return loxo::to_string(x) + "," + loxo::to_string(y); }
};

/// (x, y) -> (x^a y^b, x^c y^d); the monomial action M(x, y) in additive notation.
template <class F>
TorusPoint<F> monomial_apply(const GLZ2Matrix& m, const TorusPoint<F>& p, const Limits& limits = {});

/// f(x, y) = (alpha x^a y^b, beta x^c y^d) = M_f(x, y) + b_f with M_f in GL_2(Z).
template <class F>
class PseudoMonomialMap {
 public:
  PseudoMonomialMap(GLZ2Matrix matrix, TorusPoint<F> translation)
      : matrix_(std::move(matrix)), translation_(std::move(translation)) {}

  static PseudoMonomialMap identity(const FieldContext& ctx);

  const GLZ2Matrix& matrix() const { return matrix_; }
  const TorusPoint<F>& translation() const { return translation_; }
  FieldContext context() const { return context_of(translation_.x); }

  friend bool operator==(const PseudoMonomialMap& f, const PseudoMonomialMap& g) {
    return f.matrix_ == g.matrix_ && f.translation_ == g.translation_;
  }

 private:
  GLZ2Matrix matrix_;
  TorusPoint<F> translation_;
};

template <class F>
TorusPoint<F> apply(const PseudoMonomialMap<F>& f, const TorusPoint<F>& p, const Limits& limits = {});

/// f o g = (M_f M_g, M_f(b_g) + b_f).
template <class F>
PseudoMonomialMap<F> compose(const PseudoMonomialMap<F>& f, const PseudoMonomialMap<F>& g,
                             const Limits& limits = {});

template <class F>
PseudoMonomialMap<F> inverse(const PseudoMonomialMap<F>& f, const Limits& limits = {});

/// f^n for any integer n, by binary powering of compose.
template <class F>
PseudoMonomialMap<F> power(const PseudoMonomialMap<F>& f, long n, const Limits& limits = {});

/// Spectral radius of M with the exact data that pins it down.
struct DynamicalDegree {
  double value = 1.0;
  BigInt trace, det, discriminant;
  QuadraticNumber exact;  // rho(M) in Q(sqrt disc)
};

DynamicalDegree dynamical_degree(const GLZ2Matrix& m);
template <class F>
DynamicalDegree dynamical_degree(const PseudoMonomialMap<F>& f) {
  return dynamical_degree(f.matrix());
}

/// rho(M) > 1: |Tr| > 2 when det = 1, Tr != 0 when det = -1.
bool is_loxodromic(const GLZ2Matrix& m);
template <class F>
bool is_loxodromic(const PseudoMonomialMap<F>& f) {
  return is_loxodromic(f.matrix());
}

/// Tr(M^n) for n >= 0 via t_{k+1} = Tr(M) t_k - det(M) t_{k-1}.
BigInt matrix_power_trace(const GLZ2Matrix& m, unsigned long n);

}  // namespace loxo
