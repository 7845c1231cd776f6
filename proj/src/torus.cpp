#include "loxo/torus.hpp"

#include <cmath>

namespace loxo {

template <class F>
TorusPoint<F> monomial_apply(const GLZ2Matrix& m, const TorusPoint<F>& p, const Limits& limits) {
  auto mono = [&](const BigInt& i, const BigInt& j) {
    F out = pow(p.x, to_long_checked(i, "exponent")) * pow(p.y, to_long_checked(j, "exponent"));
    check_size(out, limits);
    return out;
  };
  return {mono(m.a(), m.b()), mono(m.c(), m.d())};
}

template <class F>
PseudoMonomialMap<F> PseudoMonomialMap<F>::identity(const FieldContext& ctx) {
  F one;
  if constexpr (std::is_same_v<F, RationalFunction>) {
    one = RationalFunction::constant(ctx.p, 1);
  } else {
    one = F(1);
  }
  return {GLZ2Matrix::identity(), TorusPoint<F>(one, one)};
}

template <class F>
TorusPoint<F> apply(const PseudoMonomialMap<F>& f, const TorusPoint<F>& p, const Limits& limits) {
  TorusPoint<F> m = monomial_apply(f.matrix(), p, limits);
  TorusPoint<F> out(f.translation().x * m.x, f.translation().y * m.y);
  check_size(out.x, limits);
  check_size(out.y, limits);
  return out;
}

template <class F>
PseudoMonomialMap<F> compose(const PseudoMonomialMap<F>& f, const PseudoMonomialMap<F>& g, const Limits& limits) {
  if (context_of(f.translation().x).p != context_of(g.translation().x).p)
    throw CharacteristicMismatch("composing maps over different fields");
  TorusPoint<F> moved = monomial_apply(f.matrix(), g.translation(), limits);
  return {f.matrix() * g.matrix(), TorusPoint<F>(moved.x * f.translation().x, moved.y * f.translation().y)};
}

template <class F>
PseudoMonomialMap<F> inverse(const PseudoMonomialMap<F>& f, const Limits& limits) {
  // f^-1(z) = M^-1 z - M^-1 b_f.
  GLZ2Matrix minv = f.matrix().inverse();
  TorusPoint<F> moved = monomial_apply(minv, f.translation(), limits);
  return {minv, TorusPoint<F>(inverse(moved.x), inverse(moved.y))};
}

template <class F>
PseudoMonomialMap<F> power(const PseudoMonomialMap<F>& f, long n, const Limits& limits) {
  if (n < 0) return power(inverse(f, limits), -n, limits);
  PseudoMonomialMap<F> out = PseudoMonomialMap<F>::identity(f.context()), base = f;
  auto k = static_cast<unsigned long>(n);
  while (k) {
    if (k & 1) out = compose(out, base, limits);
    k >>= 1;
    if (k) base = compose(base, base, limits);
  }
  return out;
}

DynamicalDegree dynamical_degree(const GLZ2Matrix& m) {
  DynamicalDegree out;
  out.trace = m.trace();
  out.det = m.det();
  out.discriminant = out.trace * out.trace - 4 * out.det;
  if (!is_loxodromic(m)) {
    // Eigenvalues on the unit circle (or +-1): rho = 1.
    out.exact = QuadraticNumber(1);
    out.value = 1.0;
    return out;
  }
  // rho = (|Tr| + sqrt(disc)) / 2.
  out.exact = (QuadraticNumber(Rational(abs(out.trace))) + QuadraticNumber::sqrt(out.discriminant)) /
              QuadraticNumber(2);
  out.value = out.exact.to_double();
  return out;
}

bool is_loxodromic(const GLZ2Matrix& m) {
  const BigInt tr = m.trace();
  if (m.det() == 1) return abs(tr) > 2;
  return tr != 0;
}

BigInt matrix_power_trace(const GLZ2Matrix& m, unsigned long n) {
  const BigInt tr = m.trace(), det = m.det();
  BigInt prev = 2, cur = tr;
  if (n == 0) return prev;
  for (unsigned long k = 1; k < n; ++k) {
    BigInt next = tr * cur - det * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

#define LOXO_INSTANTIATE(F)                                                                          \
  template struct TorusPoint<F>;                                                                     \
  template class PseudoMonomialMap<F>;                                                               \
  template TorusPoint<F> monomial_apply(const GLZ2Matrix&, const TorusPoint<F>&, const Limits&);     \
  template TorusPoint<F> apply(const PseudoMonomialMap<F>&, const TorusPoint<F>&, const Limits&);    \
  template PseudoMonomialMap<F> compose(const PseudoMonomialMap<F>&, const PseudoMonomialMap<F>&,    \
                                        const Limits&);                                              \
  template PseudoMonomialMap<F> inverse(const PseudoMonomialMap<F>&, const Limits&);                 \
  template PseudoMonomialMap<F> power(const PseudoMonomialMap<F>&, long, const Limits&);

LOXO_INSTANTIATE(Rational)
LOXO_INSTANTIATE(RationalFunction)

#undef LOXO_INSTANTIATE

}  // namespace loxo
