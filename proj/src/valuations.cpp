#include "loxo/valuations.hpp"

namespace loxo {

template <class F>
LaurentPolynomial<F>::LaurentPolynomial(std::map<Exponent, F> terms) : terms_(std::move(terms)) {
  std::erase_if(terms_, [](const auto& kv) { return loxo::is_zero(kv.second); });
}

template <class F>
LaurentPolynomial<F> LaurentPolynomial<F>::monomial(long i, long j, F coeff) {
  std::map<Exponent, F> t;
  t.emplace(Exponent{i, j}, std::move(coeff));
  return LaurentPolynomial(std::move(t));
}

template <class F>
LaurentPolynomial<F> pullback(const PseudoMonomialMap<F>& f, const LaurentPolynomial<F>& p) {
  const auto& m = f.matrix();
  const long a = to_long_checked(m.a(), "matrix entry"), b = to_long_checked(m.b(), "matrix entry");
  const long c = to_long_checked(m.c(), "matrix entry"), d = to_long_checked(m.d(), "matrix entry");
  std::map<typename LaurentPolynomial<F>::Exponent, F> out;
  // M^T is invertible, so distinct exponents stay distinct and nothing cancels.
  for (const auto& [e, coeff] : p.terms()) {
    const auto [i, j] = e;
    F scaled = coeff * pow(f.translation().x, i) * pow(f.translation().y, j);
    out.emplace(std::pair{a * i + c * j, b * i + d * j}, std::move(scaled));
  }
  return LaurentPolynomial<F>(std::move(out));
}

template <class F>
QuadraticNumber monomial_valuation_eval(const MonomialWeight& w, const LaurentPolynomial<F>& p) {
  if (p.is_zero()) throw ZeroPolynomial("valuation of the zero polynomial");
  bool first = true;
  QuadraticNumber best;
  for (const auto& [e, coeff] : p.terms()) {
    QuadraticNumber v = w.s * QuadraticNumber(e.first) + w.t * QuadraticNumber(e.second);
    if (first || v < best) best = v;
    first = false;
  }
  return best;
}

MonomialWeight pushforward_weight(const GLZ2Matrix& m, const MonomialWeight& w) {
  auto q = m.entries().cast<QuadraticNumber>();
  QuadraticNumber s = q.a * w.s + q.b * w.t;
  QuadraticNumber t = q.c * w.s + q.d * w.t;
  if (s.sign() <= 0 || t.sign() <= 0) throw ConeExit("pushforward leaves the positive cone");
  return {s, t};
}

Eigenweight eigenweights(const GLZ2Matrix& m) {
  if (!is_loxodromic(m)) throw NotLoxodromic("matrix " + m.to_string() + " is not loxodromic");
  const GLZ2Matrix flip(1, 0, 0, -1);
  struct Candidate {
    GLZ2Matrix matrix;
    bool squared, conjugated;
  };
  const GLZ2Matrix conj = flip * m * flip;
  const Candidate candidates[] = {{m, false, false}, {m.pow(2), true, false}, {conj, false, true},
                                  {conj.pow(2), true, true}};
  for (const auto& cand : candidates) {
    const auto& n = cand.matrix;
    QuadraticNumber rho = dynamical_degree(n).exact;
    QuadraticNumber lambda = n.trace() > 0 ? rho : -rho;
    if (lambda.sign() <= 0) continue;
    // (a - lambda) s + b t = 0; b != 0 for loxodromic matrices.
    QuadraticNumber ratio = (lambda - QuadraticNumber(n.a())) / QuadraticNumber(n.b());
    if (ratio.is_rational()) throw InvariantViolation("eigenweight ratio must be irrational");
    if (ratio.sign() <= 0) continue;
    return {MonomialWeight(1, ratio), lambda, n, cand.squared, cand.conjugated};
  }
  throw ConeExit("no normalization puts the Perron eigenvector in the positive quadrant");
}

MobiusFixedPoints mobius_fixed_points(const GLZ2Matrix& m) {
  if (!is_loxodromic(m)) throw NotLoxodromic("matrix " + m.to_string() + " is not loxodromic");
  auto q = m.entries().cast<QuadraticNumber>();
  const BigInt disc = m.trace() * m.trace() - 4 * m.det();
  const QuadraticNumber root = QuadraticNumber::sqrt(disc);
  // c u^2 + (d - a) u - b = 0, c != 0 for loxodromic matrices.
  const QuadraticNumber two_c = QuadraticNumber(2) * q.c;
  QuadraticNumber u1 = (q.a - q.d + root) / two_c;
  QuadraticNumber u2 = (q.a - q.d - root) / two_c;
  auto deriv = [&](const QuadraticNumber& u) {
    QuadraticNumber denom = q.c * u + q.d;
    return QuadraticNumber(m.det()) / (denom * denom);
  };
  auto mult = [&](const QuadraticNumber& u) { return QuadraticNumber(1) / (q.c * u + q.d); };
  QuadraticNumber d1 = deriv(u1), d2 = deriv(u2);
  if (abs(d1) > QuadraticNumber(1)) {
    std::swap(u1, u2);
    std::swap(d1, d2);
  }
  return {u1, u2, mult(u1), mult(u2), d1, d2};
}

template <class F>
FunctorialityVerdict check_eigenvaluation_functoriality(const PseudoMonomialMap<F>& f, const MonomialWeight& w,
                                                        const LaurentPolynomial<F>& p) {
  FunctorialityVerdict out;
  out.pushed = monomial_valuation_eval(pushforward_weight(f.matrix(), w), p);
  out.pulled = monomial_valuation_eval(w, pullback(f, p));
  out.holds = out.pushed == out.pulled;
  return out;
}

#define LOXO_INSTANTIATE(F)                                                                                \
  template class LaurentPolynomial<F>;                                                                     \
  template LaurentPolynomial<F> pullback(const PseudoMonomialMap<F>&, const LaurentPolynomial<F>&);        \
  template QuadraticNumber monomial_valuation_eval(const MonomialWeight&, const LaurentPolynomial<F>&);    \
  template FunctorialityVerdict check_eigenvaluation_functoriality(                                        \
      const PseudoMonomialMap<F>&, const MonomialWeight&, const LaurentPolynomial<F>&);

LOXO_INSTANTIATE(Rational)
LOXO_INSTANTIATE(RationalFunction)

#undef LOXO_INSTANTIATE

}  // namespace loxo
