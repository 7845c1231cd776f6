#include "loxo/fp_poly.hpp"

#include <algorithm>
#include <cctype>

#include "loxo/errors.hpp"

namespace loxo {

namespace {

std::uint32_t reduce(long c, std::uint32_t p) {
  long r = c % static_cast<long>(p);
  return static_cast<std::uint32_t>(r < 0 ? r + p : r);
}

void check_same(const FpPoly& a, const FpPoly& b) {
  if (a.characteristic() != b.characteristic())
    throw CharacteristicMismatch("F_" + std::to_string(a.characteristic()) + " vs F_" +
                                 std::to_string(b.characteristic()));
}

// Advances a base-p counter over the low `n` coefficients; false on wrap-around.
bool next_counter(std::vector<std::uint32_t>& c, std::size_t n, std::uint32_t p) {
  for (std::size_t i = 0; i < n; ++i) {
    if (++c[i] < p) return true;
    c[i] = 0;
  }
  return false;
}

}  // namespace

FpPoly::FpPoly(std::uint32_t p) : p_(p) {}

FpPoly::FpPoly(std::uint32_t p, std::vector<std::uint32_t> coeffs) : p_(p), c_(std::move(coeffs)) {
  for (auto& c : c_) c %= p_;
  trim();
}

FpPoly FpPoly::constant(std::uint32_t p, long c) { return FpPoly(p, {reduce(c, p)}); }

FpPoly FpPoly::monomial(std::uint32_t p, std::uint32_t c, std::size_t degree) {
  std::vector<std::uint32_t> v(degree + 1, 0);
  v[degree] = c % p;
  return FpPoly(p, std::move(v));
}

void FpPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

FpPoly FpPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(fp_inverse(lead(), p_));
}

FpPoly FpPoly::scaled(std::uint32_t c) const {
  std::vector<std::uint32_t> v(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i)
    v[i] = static_cast<std::uint32_t>(std::uint64_t(c_[i]) * c % p_);
  return FpPoly(p_, std::move(v));
}

FpPoly FpPoly::frobenius(unsigned k) const {
  if (k == 0 || is_zero()) return *this;
  std::size_t stride = 1;
  for (unsigned i = 0; i < k; ++i) stride *= p_;
  std::vector<std::uint32_t> v((c_.size() - 1) * stride + 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) v[i * stride] = c_[i];
  return FpPoly(p_, std::move(v));
}

FpPoly operator+(const FpPoly& a, const FpPoly& b) {
  check_same(a, b);
  std::vector<std::uint32_t> v(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = (a.coeff(i) + b.coeff(i)) % a.p_;
  return FpPoly(a.p_, std::move(v));
}

FpPoly FpPoly::operator-() const {
  std::vector<std::uint32_t> v(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] = c_[i] == 0 ? 0 : p_ - c_[i];
  return FpPoly(p_, std::move(v));
}

FpPoly operator-(const FpPoly& a, const FpPoly& b) { return a + (-b); }

FpPoly operator*(const FpPoly& a, const FpPoly& b) {
  check_same(a, b);
  if (a.is_zero() || b.is_zero()) return FpPoly(a.p_);
  const std::uint64_t p = a.p_;
  std::vector<std::uint64_t> acc(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    const std::uint64_t ai = a.c_[i];
    for (std::size_t j = 0; j < b.c_.size(); ++j) acc[i + j] = (acc[i + j] + ai * b.c_[j]) % p;
  }
  std::vector<std::uint32_t> v(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) v[i] = static_cast<std::uint32_t>(acc[i]);
  return FpPoly(a.p_, std::move(v));
}

bool operator<(const FpPoly& a, const FpPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (std::size_t i = a.c_.size(); i-- > 0;)
    if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
  return false;
}

std::string FpPoly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(c_[i]);
      continue;
    }
    if (c_[i] != 1) out += std::to_string(c_[i]);
    out += "t";
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

FpPoly FpPoly::parse(std::uint32_t p, std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  if (s.empty()) throw ParseError("empty polynomial");
  FpPoly out(p);
  std::size_t i = 0;
  while (i < s.size()) {
    long sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      if (s[i] == '-') sign = -1;
      ++i;
    }
    std::size_t j = i;
    while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
    std::string term = s.substr(i, j - i);
    if (term.empty()) throw ParseError("dangling sign in '" + s + "'");
    long coeff = 1;
    std::size_t deg = 0;
    auto tpos = term.find('t');
    try {
      if (tpos == std::string::npos) {
        coeff = std::stol(term);
        if (std::to_string(coeff) != term) throw ParseError("bad coefficient '" + term + "'");
      } else {
        std::string cpart = term.substr(0, tpos);
        if (!cpart.empty() && cpart.back() == '*') cpart.pop_back();
        if (!cpart.empty()) coeff = std::stol(cpart);
        std::string rest = term.substr(tpos + 1);
        if (rest.empty()) {
          deg = 1;
        } else if (rest[0] == '^') {
          deg = std::stoul(rest.substr(1));
        } else {
          throw ParseError("bad term '" + term + "'");
        }
      }
    } catch (const std::logic_error&) {
      throw ParseError("bad term '" + term + "' in '" + s + "'");
    }
    out = out + monomial(p, reduce(sign * coeff, p), deg);
    i = j;
  }
  return out;
}

std::uint32_t fp_pow(std::uint32_t a, unsigned long long e, std::uint32_t p) {
  std::uint64_t r = 1 % p, b = a % p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

std::uint32_t fp_inverse(std::uint32_t a, std::uint32_t p) {
  if (a % p == 0) throw ZeroInput("inverse of 0 in F_" + std::to_string(p));
  return fp_pow(a, p - 2, p);
}

std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b) {
  check_same(a, b);
  if (b.is_zero()) throw ZeroInput("polynomial division by zero");
  const std::uint32_t p = a.characteristic();
  if (a.degree() < b.degree()) return {FpPoly(p), a};
  std::vector<std::uint32_t> r = a.coeffs();
  const auto& bc = b.coeffs();
  const std::size_t db = bc.size() - 1;
  std::vector<std::uint32_t> q(r.size() - db, 0);
  const std::uint64_t inv = fp_inverse(b.lead(), p);
  for (std::size_t k = r.size(); k-- > db;) {
    if (r[k] == 0) continue;
    std::uint64_t f = r[k] * inv % p;
    q[k - db] = static_cast<std::uint32_t>(f);
    const std::uint64_t neg = (p - f) % p;
    for (std::size_t j = 0; j <= db; ++j) r[k - db + j] = static_cast<std::uint32_t>((r[k - db + j] + neg * bc[j]) % p);
  }
  return {FpPoly(p, std::move(q)), FpPoly(p, std::move(r))};
}

FpPoly gcd(const FpPoly& a_in, const FpPoly& b_in) {
  FpPoly a = a_in, b = b_in;
  while (!b.is_zero()) {
    FpPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

long multiplicity(FpPoly f, const FpPoly& pi) {
  if (f.is_zero()) throw ZeroInput("multiplicity in the zero polynomial");
  long k = 0;
  for (;;) {
    auto [q, r] = divmod(f, pi);
    if (!r.is_zero()) return k;
    f = std::move(q);
    ++k;
  }
}

namespace {

// Smallest-degree monic divisor of f (deg f >= 1) of degree <= deg f / 2, or f itself.
FpPoly smallest_divisor(const FpPoly& f) {
  const std::uint32_t p = f.characteristic();
  const long half = f.degree() / 2;
  for (long d = 1; d <= half; ++d) {
    std::vector<std::uint32_t> c(static_cast<std::size_t>(d) + 1, 0);
    c[static_cast<std::size_t>(d)] = 1;
    do {
      FpPoly g(p, c);
      if (divmod(f, g).second.is_zero()) return g;
    } while (next_counter(c, static_cast<std::size_t>(d), p));
  }
  return f.monic();
}

}  // namespace

bool is_irreducible(const FpPoly& f) {
  if (f.degree() < 1) return false;
  return smallest_divisor(f).degree() == f.degree();
}

std::vector<std::pair<FpPoly, long>> factor(const FpPoly& f_in) {
  if (f_in.is_zero()) throw ZeroInput("factor of the zero polynomial");
  std::vector<std::pair<FpPoly, long>> out;
  FpPoly f = f_in.monic();
  while (f.degree() >= 1) {
    FpPoly g = smallest_divisor(f);
    long k = 0;
    for (;;) {
      auto [q, r] = divmod(f, g);
      if (!r.is_zero()) break;
      f = std::move(q);
      ++k;
    }
    out.emplace_back(g, k);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

}  // namespace loxo
