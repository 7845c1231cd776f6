#include "loxo/factored.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace loxo {

namespace {

template <class F>
constexpr bool is_rational_field = std::is_same_v<F, Rational>;

// Saturates to +-inf instead of wrapping.
long double big_to_long_double(const BigInt& e) {
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, e.get_mpz_t());
  return std::ldexp(static_cast<long double>(mant), static_cast<int>(std::clamp(exp, -100000L, 100000L)));
}

long residue(const BigInt& k, long m) {
  BigInt r = k % m;
  if (r < 0) r += m;
  return r.get_si();
}

std::string prime_string(const BigInt& q) { return q.get_str(); }
std::string prime_string(const FpPoly& pi) {
  std::string s = pi.to_string();
  return pi.coeffs().size() > 2 || (pi.coeffs().size() == 2 && pi.coeff(0) != 0) || pi.lead() != 1 ? "(" + s + ")" : s;
}

}  // namespace

template <class F>
FactoredTorus<F>::FactoredTorus(FieldContext ctx, std::vector<Prime> primes) : ctx_(ctx), primes_(std::move(primes)) {
  std::sort(primes_.begin(), primes_.end());
  primes_.erase(std::unique(primes_.begin(), primes_.end()), primes_.end());
  for (const auto& q : primes_) {
    if constexpr (is_rational_field<F>) {
      logs_.push_back(static_cast<double>(log_abs(q)));
    } else {
      logs_.push_back(static_cast<double>(q.degree()));
    }
  }
}

template <class F>
FactoredTorus<F> FactoredTorus<F>::spanning(FieldContext ctx, std::span<const F> elements) {
  std::vector<Prime> primes;
  for (const auto& x : elements) {
    if constexpr (is_rational_field<F>) {
      for (const BigInt& part : {BigInt(x.get_num()), BigInt(x.get_den())}) {
        if (part == 0) continue;
        for (const auto& [q, e] : factor_integer(part)) primes.push_back(q);
      }
    } else {
      for (const FpPoly* part : {&x.num(), &x.den()}) {
        if (part->is_zero()) continue;
        for (const auto& [pi, e] : loxo::factor(*part)) primes.push_back(pi);
      }
    }
  }
  return FactoredTorus(ctx, std::move(primes));
}

template <class F>
FactoredElement FactoredTorus<F>::factor(const F& x) const {
  if (is_zero(x)) throw ZeroInput("cannot factor 0");
  FactoredElement out{1, std::vector<BigInt>(primes_.size(), BigInt(0))};
  if constexpr (is_rational_field<F>) {
    out.unit = sgn(x) < 0 ? -1 : 1;
    BigInt num = abs(x.get_num()), den = x.get_den();
    for (std::size_t i = 0; i < primes_.size(); ++i) {
      const auto up = mpz_remove(num.get_mpz_t(), num.get_mpz_t(), primes_[i].get_mpz_t());
      const auto down = mpz_remove(den.get_mpz_t(), den.get_mpz_t(), primes_[i].get_mpz_t());
      out.exps[i] = BigInt(static_cast<unsigned long>(up)) - BigInt(static_cast<unsigned long>(down));
    }
    if (num != 1 || den != 1) throw InvariantViolation("element " + x.get_str() + " does not factor over the basis");
  } else {
    out.unit = x.num().lead();
    long num_deg = 0, den_deg = 0;
    for (std::size_t i = 0; i < primes_.size(); ++i) {
      const long up = multiplicity(x.num(), primes_[i]);
      const long down = x.den().degree() > 0 ? multiplicity(x.den(), primes_[i]) : 0;
      num_deg += up * primes_[i].degree();
      den_deg += down * primes_[i].degree();
      out.exps[i] = up - down;
    }
    if (num_deg != x.num().degree() || den_deg != x.den().degree())
      throw InvariantViolation("element " + x.to_string() + " does not factor over the basis");
  }
  return out;
}

template <class F>
FactoredPoint FactoredTorus<F>::factor(const TorusPoint<F>& p) const {
  return {factor(p.x), factor(p.y)};
}

template <class F>
FactoredMap FactoredTorus<F>::factor(const PseudoMonomialMap<F>& f) const {
  return {f.matrix(), factor(f.translation().x), factor(f.translation().y)};
}

template <class F>
double FactoredTorus<F>::size_estimate(const FactoredElement& e) const {
  double up = 0, down = 0;
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    const double w = is_rational_field<F> ? logs_[i] / std::log(10.0) : logs_[i];
    const double v = static_cast<double>(big_to_long_double(e.exps[i])) * w;
    (v > 0 ? up : down) += std::fabs(v);
  }
  return std::max(up, down);
}

template <class F>
F FactoredTorus<F>::materialize(const FactoredElement& e, const Limits& limits) const {
  const double bound = is_rational_field<F> ? static_cast<double>(limits.max_digits) : static_cast<double>(limits.max_degree);
  if (size_estimate(e) > bound) throw OverflowGuard("factored element too large to materialize");
  if constexpr (is_rational_field<F>) {
    BigInt num = 1, den = 1;
    for (std::size_t i = 0; i < primes_.size(); ++i) {
      if (e.exps[i] == 0) continue;
      BigInt power;
      mpz_pow_ui(power.get_mpz_t(), primes_[i].get_mpz_t(), BigInt(abs(e.exps[i])).get_ui());
      (e.exps[i] > 0 ? num : den) *= power;
    }
    Rational out(num * e.unit, den);
    out.canonicalize();
    return out;
  } else {
    RationalFunction out = RationalFunction::constant(ctx_.p, e.unit);
    for (std::size_t i = 0; i < primes_.size(); ++i)
      if (e.exps[i] != 0) out = out * pow(RationalFunction(primes_[i]), e.exps[i].get_si());
    return out;
  }
}

template <class F>
TorusPoint<F> FactoredTorus<F>::materialize(const FactoredPoint& p, const Limits& limits) const {
  return {materialize(p.x, limits), materialize(p.y, limits)};
}

template <class F>
PseudoMonomialMap<F> FactoredTorus<F>::materialize(const FactoredMap& f, const Limits& limits) const {
  return {f.matrix, TorusPoint<F>(materialize(f.alpha, limits), materialize(f.beta, limits))};
}

template <class F>
FactoredElement FactoredTorus<F>::one() const {
  return {1, std::vector<BigInt>(primes_.size(), BigInt(0))};
}

template <class F>
FactoredElement FactoredTorus<F>::multiply(const FactoredElement& a, const FactoredElement& b) const {
  FactoredElement out = a;
  out.unit = is_rational_field<F> ? a.unit * b.unit : (a.unit * b.unit) % static_cast<long>(ctx_.p);
  for (std::size_t i = 0; i < out.exps.size(); ++i) out.exps[i] += b.exps[i];
  return out;
}

template <class F>
FactoredElement FactoredTorus<F>::power(const FactoredElement& a, const BigInt& k) const {
  FactoredElement out = a;
  if constexpr (is_rational_field<F>) {
    out.unit = (a.unit < 0 && mpz_odd_p(k.get_mpz_t())) ? -1 : 1;
  } else {
    const long m = static_cast<long>(ctx_.p) - 1;
    out.unit = static_cast<long>(fp_pow(static_cast<std::uint32_t>(a.unit), static_cast<unsigned long long>(residue(k, m)), ctx_.p));
  }
  for (auto& e : out.exps) e *= k;
  return out;
}

template <class F>
FactoredElement FactoredTorus<F>::invert(const FactoredElement& a) const {
  FactoredElement out = a;
  if constexpr (!is_rational_field<F>) out.unit = fp_inverse(static_cast<std::uint32_t>(a.unit), ctx_.p);
  for (auto& e : out.exps) e = -e;
  return out;
}

template <class F>
FactoredPoint FactoredTorus<F>::monomial_apply(const GLZ2Matrix& m, const FactoredPoint& p) const {
  return {multiply(power(p.x, m.a()), power(p.y, m.b())), multiply(power(p.x, m.c()), power(p.y, m.d()))};
}

template <class F>
FactoredPoint FactoredTorus<F>::apply(const FactoredMap& f, const FactoredPoint& p) const {
  auto q = monomial_apply(f.matrix, p);
  return {multiply(q.x, f.alpha), multiply(q.y, f.beta)};
}

template <class F>
FactoredMap FactoredTorus<F>::compose(const FactoredMap& f, const FactoredMap& g) const {
  auto t = apply(f, FactoredPoint{g.alpha, g.beta});
  return {f.matrix * g.matrix, t.x, t.y};
}

template <class F>
FactoredMap FactoredTorus<F>::inverse(const FactoredMap& f) const {
  const GLZ2Matrix inv = f.matrix.inverse();
  auto t = monomial_apply(inv, FactoredPoint{f.alpha, f.beta});
  return {inv, invert(t.x), invert(t.y)};
}

template <class F>
FactoredMap FactoredTorus<F>::power(const FactoredMap& f, long n) const {
  FactoredMap base = n < 0 ? inverse(f) : f;
  unsigned long k = n < 0 ? static_cast<unsigned long>(-(n + 1)) + 1 : static_cast<unsigned long>(n);
  FactoredMap out{GLZ2Matrix(1, 0, 0, 1), one(), one()};
  while (k > 0) {
    if (k & 1) out = compose(out, base);
    base = compose(base, base);
    k >>= 1;
  }
  return out;
}

template <class F>
LogAbs FactoredTorus<F>::abs_log(const Place& v, const FactoredElement& e) const {
  if (v.is_archimedean() || v.kind() == Place::Kind::Infinite) {
    if constexpr (is_rational_field<F>) {
      if (!v.is_archimedean()) throw CharacteristicMismatch("infinite place of F_p(t) used over Q");
      long double acc = 0;
      for (std::size_t i = 0; i < primes_.size(); ++i) acc += big_to_long_double(e.exps[i]) * logs_[i];
      return {static_cast<double>(acc), std::nullopt};
    } else {
      if (v.is_archimedean()) throw CharacteristicMismatch("archimedean place used over F_p(t)");
      BigInt deg = 0;
      for (std::size_t i = 0; i < primes_.size(); ++i) deg += e.exps[i] * primes_[i].degree();
      return {static_cast<double>(big_to_long_double(deg)), BigInt(-deg)};
    }
  }
  BigInt ord = 0;
  double weight = 0;
  if constexpr (is_rational_field<F>) {
    if (v.kind() != Place::Kind::FinitePrime) throw CharacteristicMismatch("function-field place used over Q");
    auto it = std::lower_bound(primes_.begin(), primes_.end(), v.prime_number());
    if (it != primes_.end() && *it == v.prime_number()) {
      ord = e.exps[static_cast<std::size_t>(it - primes_.begin())];
      weight = logs_[static_cast<std::size_t>(it - primes_.begin())];
    }
  } else {
    if (v.kind() != Place::Kind::FinitePoly) throw CharacteristicMismatch("rational place used over F_p(t)");
    auto it = std::find(primes_.begin(), primes_.end(), v.prime_poly());
    if (it != primes_.end()) {
      ord = e.exps[static_cast<std::size_t>(it - primes_.begin())];
      weight = logs_[static_cast<std::size_t>(it - primes_.begin())];
    }
  }
  return {ord == 0 ? 0.0 : -static_cast<double>(big_to_long_double(ord)) * weight, ord};
}

template <class F>
Height FactoredTorus<F>::height(const FactoredPoint& p) const {
  Height h;
  if constexpr (is_rational_field<F>) {
    long double acc = 0;
    for (std::size_t i = 0; i < primes_.size(); ++i) {
      const BigInt m = std::max({BigInt(0), BigInt(-p.x.exps[i]), BigInt(-p.y.exps[i])});
      acc += big_to_long_double(m) * logs_[i];
    }
    const double ax = abs_log(Place::archimedean(), p.x).value;
    const double ay = abs_log(Place::archimedean(), p.y).value;
    h.value = static_cast<double>(acc + std::max({0.0, ax, ay}));
  } else {
    BigInt acc = 0, dx = 0, dy = 0;
    for (std::size_t i = 0; i < primes_.size(); ++i) {
      acc += std::max({BigInt(0), BigInt(-p.x.exps[i]), BigInt(-p.y.exps[i])}) * primes_[i].degree();
      dx += p.x.exps[i] * primes_[i].degree();
      dy += p.y.exps[i] * primes_[i].degree();
    }
    acc += std::max({BigInt(0), dx, dy});
    h.value = static_cast<double>(big_to_long_double(acc));
    h.exact = acc;
  }
  return h;
}

template <class F>
std::vector<Place> FactoredTorus<F>::places() const {
  std::vector<Place> out;
  if constexpr (is_rational_field<F>) {
    out.push_back(Place::archimedean());
    for (const auto& q : primes_) out.push_back(Place::prime(q));
  } else {
    out.push_back(Place::infinite(ctx_.p));
    for (const auto& pi : primes_) out.push_back(Place::poly(pi));
  }
  std::sort(out.begin(), out.end());
  return out;
}

template <class F>
std::string FactoredTorus<F>::key(const FactoredElement& e) const {
  std::string out = std::to_string(e.unit);
  for (const auto& x : e.exps) {
    out += ':';
    out += x.get_str(36);
  }
  return out;
}

template <class F>
std::string FactoredTorus<F>::key(const FactoredPoint& p) const {
  return key(p.x) + "|" + key(p.y);
}

template <class F>
std::string FactoredTorus<F>::to_string(const FactoredElement& e) const {
  std::string out;
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    if (e.exps[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += prime_string(primes_[i]);
    if (e.exps[i] != 1) out += "^" + e.exps[i].get_str();
  }
  if (out.empty()) return std::to_string(e.unit);
  if (e.unit == -1) return "-" + out;
  if (e.unit != 1) return std::to_string(e.unit) + "*" + out;
  return out;
}

template class FactoredTorus<Rational>;
template class FactoredTorus<RationalFunction>;

template <class F>
bool factored_vanishes(const FactoredTorus<F>& torus, const std::vector<LaurentTerm<F>>& terms,
                       std::span<const FactoredElement> coords, const Limits& limits) {
  // Combine terms with the same exponent vector; the scalar keeps the units.
  std::map<std::vector<BigInt>, BigInt> combined;
  for (const auto& term : terms) {
    if (term.exps.size() != coords.size()) throw InvariantViolation("term arity does not match the coordinates");
    if (is_zero(term.coeff)) continue;
    FactoredElement v = torus.factor(term.coeff);
    for (std::size_t i = 0; i < coords.size(); ++i)
      if (term.exps[i] != 0) v = torus.multiply(v, torus.power(coords[i], BigInt(term.exps[i])));
    combined[v.exps] += v.unit;
  }
  std::vector<std::pair<BigInt, std::vector<BigInt>>> groups;
  for (auto& [exps, c] : combined) {
    BigInt scalar = c;
    if constexpr (!is_rational_field<F>) scalar = BigInt(residue(c, static_cast<long>(torus.context().p)));
    if (scalar != 0) groups.emplace_back(scalar, exps);
  }
  if (groups.empty()) return true;
  if (groups.size() == 1) return false;

  auto unique_extreme = [](const std::vector<BigInt>& vals, bool want_min) {
    std::size_t best = 0, count = 0;
    for (std::size_t k = 0; k < vals.size(); ++k) {
      const bool better = want_min ? vals[k] < vals[best] : vals[k] > vals[best];
      if (k == 0 || better) {
        best = k;
        count = 1;
      } else if (vals[k] == vals[best]) {
        ++count;
      }
    }
    return count == 1;
  };

  const auto& primes = torus.primes();
  for (std::size_t i = 0; i < primes.size(); ++i) {
    std::vector<BigInt> ords;
    for (const auto& [c, e] : groups) {
      BigInt o = e[i];
      if constexpr (is_rational_field<F>) {
        BigInt rest = abs(c);
        o += BigInt(static_cast<unsigned long>(mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), primes[i].get_mpz_t())));
      }
      ords.push_back(o);
    }
    if (unique_extreme(ords, true)) return false;
  }

  if constexpr (is_rational_field<F>) {
    std::vector<long double> logs;
    long double scale = 1;
    for (const auto& [c, e] : groups) {
      long double acc = log_abs(c);
      for (std::size_t i = 0; i < primes.size(); ++i) acc += big_to_long_double(e[i]) * std::log(primes[i].get_d());
      logs.push_back(acc);
      scale = std::max(scale, std::fabs(acc));
    }
    std::sort(logs.rbegin(), logs.rend());
    const long double margin = std::log(static_cast<long double>(groups.size())) + 1e-12L * scale + 1e-9L;
    if (logs[0] - logs[1] > margin) return false;
  } else {
    std::vector<BigInt> degs;
    for (const auto& [c, e] : groups) {
      BigInt d = 0;
      for (std::size_t i = 0; i < primes.size(); ++i) d += e[i] * primes[i].degree();
      degs.push_back(d);
    }
    if (unique_extreme(degs, false)) return false;
  }

  F sum = torus.materialize(torus.one(), limits);
  sum = sum - sum;
  for (const auto& [c, e] : groups) {
    FactoredElement v{1, e};
    F scalar = torus.materialize(torus.one(), limits);
    if constexpr (is_rational_field<F>) {
      scalar = Rational(c);
    } else {
      scalar = RationalFunction::constant(torus.context().p, c.get_si());
    }
    sum = sum + scalar * torus.materialize(v, limits);
  }
  return is_zero(sum);
}

template bool factored_vanishes(const FactoredTorus<Rational>&, const std::vector<LaurentTerm<Rational>>&,
                                std::span<const FactoredElement>, const Limits&);
template bool factored_vanishes(const FactoredTorus<RationalFunction>&,
                                const std::vector<LaurentTerm<RationalFunction>>&, std::span<const FactoredElement>,
                                const Limits&);

}  // namespace loxo
