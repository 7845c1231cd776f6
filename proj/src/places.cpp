#include "loxo/places.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace loxo {

Place Place::prime(const BigInt& p) {
  if (!is_prime(p)) throw InvariantViolation(p.get_str() + " is not prime");
  return Place(Kind::FinitePrime, p);
}

Place Place::infinite(std::uint32_t characteristic) {
  if (!is_prime(BigInt(characteristic))) throw InvariantViolation("characteristic must be prime");
  return Place(Kind::Infinite, characteristic);
}

Place Place::poly(const FpPoly& pi) {
  if (pi.lead() != 1) throw InvariantViolation(pi.to_string() + " is not monic");
  if (!is_irreducible(pi)) throw InvariantViolation(pi.to_string() + " is not irreducible");
  return Place(Kind::FinitePoly, pi);
}

Place Place::parse(std::string_view text, std::uint32_t characteristic) {
  if (text == "arch") return archimedean();
  if (text == "inf") {
    if (characteristic == 0) throw ParseError("place 'inf' needs a function field");
    return infinite(characteristic);
  }
  if (text.starts_with("p:")) return prime(BigInt(std::string(text.substr(2))));
  if (text.starts_with("poly:")) {
    if (characteristic == 0) throw ParseError("place 'poly:' needs a function field");
    return poly(FpPoly::parse(characteristic, text.substr(5)));
  }
  throw ParseError("unknown place '" + std::string(text) + "'");
}

std::uint32_t Place::characteristic() const {
  switch (kind_) {
    case Kind::Infinite: return std::get<std::uint32_t>(data_);
    case Kind::FinitePoly: return prime_poly().characteristic();
    default: return 0;
  }
}

double Place::normalizer_log() const {
  switch (kind_) {
    case Kind::Archimedean: return 1.0;
    case Kind::FinitePrime: return log_abs(prime_number());
    case Kind::Infinite: return 1.0;
    case Kind::FinitePoly: return static_cast<double>(prime_poly().degree());
  }
  return 1.0;
}

std::string Place::to_string() const {
  switch (kind_) {
    case Kind::Archimedean: return "arch";
    case Kind::FinitePrime: return "p:" + prime_number().get_str();
    case Kind::Infinite: return "inf";
    case Kind::FinitePoly: return "poly:" + prime_poly().to_string();
  }
  return "?";
}

bool operator<(const Place& a, const Place& b) {
  auto rank = [](const Place& v) { return v.is_archimedean() || v.kind() == Place::Kind::Infinite ? 0 : 1; };
  if (rank(a) != rank(b)) return rank(a) < rank(b);
  if (a.kind() != b.kind()) return a.kind() < b.kind();
  if (a.kind() == Place::Kind::FinitePrime) return a.prime_number() < b.prime_number();
  if (a.kind() == Place::Kind::FinitePoly) return a.prime_poly() < b.prime_poly();
  return false;
}

bool operator==(const Place& a, const Place& b) { return !(a < b) && !(b < a); }

LogAbs abs_log(const Place& v, const Rational& x) {
  if (x == 0) throw ZeroInput("abs_log of 0");
  switch (v.kind()) {
    case Place::Kind::Archimedean: return {log_abs(x), std::nullopt};
    case Place::Kind::FinitePrime: {
      long k = ord_p(x, v.prime_number());
      return {-static_cast<double>(k) * v.normalizer_log(), BigInt(k)};
    }
    default: throw InvariantViolation("place " + v.to_string() + " is not a place of Q");
  }
}

LogAbs abs_log(const Place& v, const RationalFunction& x) {
  if (x.is_zero()) throw ZeroInput("abs_log of 0");
  if (v.characteristic() != x.characteristic())
    throw InvariantViolation("place " + v.to_string() + " is not a place of F_" +
                             std::to_string(x.characteristic()) + "(t)");
  if (v.kind() == Place::Kind::Infinite) {
    long d = x.degree();
    return {static_cast<double>(d), BigInt(-d)};
  }
  long k = ord(x, v.prime_poly());
  return {-static_cast<double>(k) * v.normalizer_log(), BigInt(k)};
}

std::vector<Place> relevant_places(std::span<const Rational> xs) {
  std::set<BigInt> primes;
  for (const auto& x : xs) {
    if (x == 0) throw ZeroInput("relevant_places of 0");
    for (const auto& [p, e] : factor_integer(x.get_num())) primes.insert(p);
    for (const auto& [p, e] : factor_integer(x.get_den())) primes.insert(p);
  }
  std::vector<Place> out{Place::archimedean()};
  for (const auto& p : primes) out.push_back(Place::prime(p));
  return out;
}

std::vector<Place> relevant_places(std::span<const RationalFunction> xs) {
  if (xs.empty()) throw InvariantViolation("relevant_places needs a characteristic (empty input)");
  const std::uint32_t p = xs.front().characteristic();
  std::vector<FpPoly> polys;
  for (const auto& x : xs) {
    if (x.is_zero()) throw ZeroInput("relevant_places of 0");
    for (const auto* side : {&x.num(), &x.den()})
      for (auto& [pi, e] : factor(*side))
        if (std::find(polys.begin(), polys.end(), pi) == polys.end()) polys.push_back(pi);
  }
  std::sort(polys.begin(), polys.end());
  std::vector<Place> out{Place::infinite(p)};
  for (const auto& pi : polys) out.push_back(Place::poly(pi));
  return out;
}

namespace {

template <class F>
double norm_log_impl(const Place& v, std::span<const F> point) {
  double best = -INFINITY;
  for (const auto& x : point)
    if (!is_zero(x)) best = std::max(best, abs_log(v, x).value);
  return best;
}

}  // namespace

double coordinate_norm_log(const Place& v, std::span<const Rational> point) { return norm_log_impl(v, point); }
double coordinate_norm_log(const Place& v, std::span<const RationalFunction> point) {
  return norm_log_impl(v, point);
}

bool heights_equal(const Height& a, const Height& b) {
  if (a.exact && b.exact && a.exact_is_exponential == b.exact_is_exponential) return *a.exact == *b.exact;
  return std::fabs(a.value - b.value) <= 1e-9 * std::max({1.0, std::fabs(a.value), std::fabs(b.value)});
}

Height weil_height(std::span<const Rational> point) {
  // Finite places: sum_p log+ max|x_i|_p = log lcm(den_i).
  // Archimedean: log max(1, |x_i|). The product is max(c, |a_i|) for the
  // primitive representative (a_i / c).
  BigInt lcm_den = 1;
  for (const auto& x : point) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), x.get_den_mpz_t());
  Rational arch = 1;
  for (const auto& x : point) arch = std::max(arch, Rational(abs(x)));
  Rational h = arch * lcm_den;
  BigInt exact = h.get_num();  // h is an integer: lcm * |x_i| clears x_i's denominator
  return {log_abs(exact), exact, true};
}

Height weil_height(std::span<const RationalFunction> point) {
  long finite = 0, infinite = 0;
  if (!point.empty()) {
    FpPoly lcm = FpPoly::constant(point.front().characteristic(), 1);
    for (const auto& x : point) lcm = divmod(lcm * x.den(), gcd(lcm, x.den())).first;
    finite = lcm.degree();
    for (const auto& x : point)
      if (!x.is_zero()) infinite = std::max(infinite, x.degree());
  }
  const long h = finite + infinite;
  return {static_cast<double>(h), BigInt(h), false};
}

ProductFormulaVerdict product_formula_check(const Rational& x) {
  if (x == 0) throw ZeroInput("product formula of 0");
  ProductFormulaVerdict out;
  Rational rebuilt = 1;
  Rational xs[] = {x};
  for (const auto& v : relevant_places(xs)) {
    if (v.is_archimedean()) {
      out.archimedean_log = abs_log(v, x).value;
      continue;
    }
    long k = to_long_checked(*abs_log(v, x).ord, "ord");
    out.ords.emplace_back(v, BigInt(k));
    rebuilt *= pow(Rational(v.prime_number()), k);
  }
  // sum_v log|x|_v = log|x| - sum_p ord_p log p vanishes iff prod p^ord_p == |x|.
  out.holds = rebuilt == abs(x);
  return out;
}

ProductFormulaVerdict product_formula_check(const RationalFunction& x) {
  if (x.is_zero()) throw ZeroInput("product formula of 0");
  ProductFormulaVerdict out;
  BigInt weighted = 0;
  BigInt inf_ord = 0;
  RationalFunction xs[] = {x};
  for (const auto& v : relevant_places(xs)) {
    BigInt k = *abs_log(v, x).ord;
    if (v.kind() == Place::Kind::Infinite) {
      out.archimedean_log = abs_log(v, x).value;
      inf_ord = k;
      continue;
    }
    out.ords.emplace_back(v, k);
    weighted += k * v.prime_poly().degree();
  }
  out.holds = weighted + inf_ord == 0;
  return out;
}

}  // namespace loxo
