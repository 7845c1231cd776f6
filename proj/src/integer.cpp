#include "loxo/integer.hpp"

#include <cmath>
#include <vector>

#include "loxo/errors.hpp"

namespace loxo {

namespace {

constexpr unsigned long kTrialBound = 20000;

BigInt pollard_brent(const BigInt& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    BigInt y = 2, x, q = 1, g = 1, ys;
    const unsigned long m = 64;
    unsigned long r = 1;
    auto f = [&](const BigInt& v) {
      BigInt out = v * v + c;
      mpz_mod(out.get_mpz_t(), out.get_mpz_t(), n.get_mpz_t());
      return out;
    };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          BigInt diff = abs(x - y);
          q = (q * diff) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        BigInt diff = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_rec(const BigInt& n, std::map<BigInt, long>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  BigInt d = pollard_brent(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

}  // namespace

bool is_prime(const BigInt& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

std::map<BigInt, long> factor_integer(const BigInt& n_in) {
  if (n_in == 0) throw ZeroInput("cannot factor 0");
  BigInt n = abs(n_in);
  std::map<BigInt, long> out;
  for (unsigned long p = 2; p <= kTrialBound; p += (p == 2 ? 1 : 2)) {
    if (n == 1) break;
    if (BigInt(p) * p > n) break;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      ++out[BigInt(p)];
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
    }
  }
  factor_rec(n, out);
  return out;
}

SquarefreeSplit squarefree_split(const BigInt& n) {
  SquarefreeSplit s{1, 1};
  if (n == 0) return {0, 1};
  for (const auto& [p, e] : factor_integer(n)) {
    BigInt pk;
    mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(e / 2));
    s.square_root *= pk;
    if (e % 2) s.squarefree *= p;
  }
  return s;
}

double log_abs(const BigInt& n) {
  if (n == 0) return -INFINITY;
  long exp2 = 0;
  double mant = mpz_get_d_2exp(&exp2, n.get_mpz_t());
  return std::log(std::fabs(mant)) + static_cast<double>(exp2) * std::log(2.0);
}

double log_abs(const Rational& x) {
  if (x == 0) return -INFINITY;
  return log_abs(x.get_num()) - log_abs(x.get_den());
}

std::size_t decimal_digits(const BigInt& n) {
  return mpz_sizeinbase(n.get_mpz_t(), 10);
}

std::size_t decimal_digits(const Rational& x) {
  return std::max(decimal_digits(x.get_num()), decimal_digits(x.get_den()));
}

Rational parse_rational(std::string_view text) {
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '\t') s.push_back(c);
  if (s.empty()) throw ParseError("empty rational");
  Rational r;
  if (r.set_str(s, 10) != 0) throw ParseError("bad rational '" + s + "'");
  if (r.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& x) { return x.get_str(); }
std::string to_string(const BigInt& n) { return n.get_str(); }

Rational pow(const Rational& x, long e) {
  if (e < 0) {
    if (x == 0) throw ZeroInput("negative power of 0");
    return pow(Rational(1) / x, -e);
  }
  Rational out;
  BigInt num, den;
  mpz_pow_ui(num.get_mpz_t(), x.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(den.get_mpz_t(), x.get_den_mpz_t(), static_cast<unsigned long>(e));
  out = Rational(num, den);
  out.canonicalize();
  return out;
}

long to_long_checked(const BigInt& n, const char* what) {
  if (!n.fits_slong_p()) throw OverflowGuard(std::string(what) + " does not fit a machine integer");
  return n.get_si();
}

long ord_p(const Rational& x, const BigInt& p) {
  if (x == 0) throw ZeroInput("ord of 0");
  auto count = [&](BigInt v) {
    long k = 0;
    while (mpz_divisible_p(v.get_mpz_t(), p.get_mpz_t())) {
      mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
      ++k;
    }
    return k;
  };
  return count(x.get_num()) - count(x.get_den());
}

}  // namespace loxo
