#include "loxo/henon.hpp"

#include <algorithm>

namespace loxo {

UPoly::UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational UPoly::operator()(const Rational& y) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * y + *it;
  return acc;
}

UPoly operator+(const UPoly& p, const UPoly& q) {
  std::vector<Rational> c(std::max(p.c_.size(), q.c_.size()), Rational(0));
  for (std::size_t i = 0; i < p.c_.size(); ++i) c[i] += p.c_[i];
  for (std::size_t i = 0; i < q.c_.size(); ++i) c[i] += q.c_[i];
  return UPoly(std::move(c));
}

UPoly operator*(const Rational& s, const UPoly& p) {
  std::vector<Rational> c = p.c_;
  for (auto& x : c) x *= s;
  return UPoly(std::move(c));
}

UPoly UPoly::affine_substitute(const Rational& m, const Rational& t) const {
  // Horner in the polynomial ring: acc = acc * (m y + t) + c_k.
  std::vector<Rational> acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    std::vector<Rational> next(acc.size() + 1, Rational(0));
    for (std::size_t i = 0; i < acc.size(); ++i) {
      next[i] += acc[i] * t;
      next[i + 1] += acc[i] * m;
    }
    next[0] += *it;
    acc = std::move(next);
  }
  return UPoly(std::move(acc));
}

HenonFactor::HenonFactor(UPoly p, Rational d) : poly(std::move(p)), delta(std::move(d)) {
  if (poly.degree() < 2) throw InvariantViolation("Henon polynomial must have degree >= 2");
  if (delta == 0) throw InvariantViolation("Henon delta must be nonzero");
}

AffineFactor::AffineFactor(Matrix2<Rational> m, std::array<Rational, 2> t) : matrix(m), translation(std::move(t)) {
  if (matrix.det() == 0) throw InvariantViolation("affine matrix is singular");
}

bool AffineFactor::is_identity() const {
  return matrix == Matrix2<Rational>::identity() && translation[0] == 0 && translation[1] == 0;
}

namespace {

PlanePoint apply_factor(const PlaneFactor& factor, const PlanePoint& p) {
  if (const auto* h = std::get_if<HenonFactor>(&factor)) return {p[1], h->poly(p[1]) - h->delta * p[0]};
  const auto& a = std::get<AffineFactor>(factor);
  auto v = a.matrix * p;
  return {v[0] + a.translation[0], v[1] + a.translation[1]};
}

AffineFactor compose_affine(const AffineFactor& outer, const AffineFactor& inner) {
  auto t = outer.matrix * inner.translation;
  return {outer.matrix * inner.matrix, {t[0] + outer.translation[0], t[1] + outer.translation[1]}};
}

AffineFactor inverse_affine(const AffineFactor& a) {
  const Rational det = a.matrix.det();
  Matrix2<Rational> inv{a.matrix.d / det, -a.matrix.b / det, -a.matrix.c / det, a.matrix.a / det};
  auto t = inv * a.translation;
  return {inv, {-t[0], -t[1]}};
}

// outer o A o inner with A's (2,2) entry zero, rewritten as B o H_new (or one affine).
std::vector<PlaneFactor> absorb(const HenonFactor& outer, const AffineFactor& a, const HenonFactor& inner) {
  const auto& m = a.matrix;
  const Rational& t1 = a.translation[0];
  const Rational& t2 = a.translation[1];
  UPoly q = outer.poly.affine_substitute(m.c, t2) +
            (-outer.delta) * (UPoly({t1, m.a}) + m.b * inner.poly);
  const Rational delta = -outer.delta * m.b * inner.delta;
  AffineFactor b(Matrix2<Rational>{m.c, 0, 0, 1}, {t2, Rational(0)});
  if (q.degree() >= 2) return {b, HenonFactor(q, delta)};
  const Rational q0 = q.degree() >= 0 ? q.coeffs()[0] : Rational(0);
  const Rational q1 = q.degree() >= 1 ? q.coeffs()[1] : Rational(0);
  return {compose_affine(b, AffineFactor(Matrix2<Rational>{0, 1, -delta, q1}, {Rational(0), q0}))};
}

// One pass of local rewriting; returns true if anything changed.
bool normalize_pass(std::vector<PlaneFactor>& w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    auto* a = std::get_if<AffineFactor>(&w[i]);
    if (a && a->is_identity()) {
      w.erase(w.begin() + static_cast<long>(i));
      return true;
    }
    if (a && i + 1 < w.size()) {
      if (auto* b = std::get_if<AffineFactor>(&w[i + 1])) {
        w[i] = compose_affine(*a, *b);
        w.erase(w.begin() + static_cast<long>(i) + 1);
        return true;
      }
    }
    if (a && i > 0 && i + 1 < w.size() && a->matrix.d == 0) {
      const auto* outer = std::get_if<HenonFactor>(&w[i - 1]);
      const auto* inner = std::get_if<HenonFactor>(&w[i + 1]);
      if (outer && inner) {
        auto repl = absorb(*outer, *a, *inner);
        w.erase(w.begin() + static_cast<long>(i) - 1, w.begin() + static_cast<long>(i) + 2);
        w.insert(w.begin() + static_cast<long>(i) - 1, repl.begin(), repl.end());
        return true;
      }
    }
  }
  return false;
}

std::size_t henon_count(const std::vector<PlaneFactor>& w) {
  return static_cast<std::size_t>(
      std::count_if(w.begin(), w.end(), [](const auto& f) { return std::holds_alternative<HenonFactor>(f); }));
}

}  // namespace

PlanePoint apply_plane(const PlaneAutomorphism& f, const PlanePoint& p, const Limits& limits) {
  PlanePoint out = p;
  for (auto it = f.word.rbegin(); it != f.word.rend(); ++it) {
    out = apply_factor(*it, out);
    check_size(out[0], limits);
    check_size(out[1], limits);
  }
  return out;
}

PlaneAutomorphism inverse_plane(const PlaneAutomorphism& f) {
  PlaneAutomorphism out;
  for (auto it = f.word.rbegin(); it != f.word.rend(); ++it) {
    if (const auto* h = std::get_if<HenonFactor>(&*it)) {
      // H^-1(X, Y) = ((P(X) - Y) / delta, X) = S o H' o S with H' = (y, P(y)/delta - x/delta).
      const Rational inv = Rational(1) / h->delta;
      out.word.push_back(AffineFactor::swap());
      out.word.push_back(HenonFactor(inv * h->poly, inv));
      out.word.push_back(AffineFactor::swap());
    } else {
      out.word.push_back(inverse_affine(std::get<AffineFactor>(*it)));
    }
  }
  return normalize(out);
}

PlaneAutomorphism compose_plane(const PlaneAutomorphism& f, const PlaneAutomorphism& g) {
  PlaneAutomorphism out = f;
  out.word.insert(out.word.end(), g.word.begin(), g.word.end());
  return normalize(out);
}

PlaneAutomorphism power_plane(const PlaneAutomorphism& f, long n) {
  if (n < 0) return power_plane(inverse_plane(f), -n);
  PlaneAutomorphism out;
  for (long k = 0; k < n; ++k) out.word.insert(out.word.end(), f.word.begin(), f.word.end());
  return normalize(out);
}

PlaneAutomorphism normalize(const PlaneAutomorphism& f) {
  PlaneAutomorphism out = f;
  while (normalize_pass(out.word)) {
  }
  return out;
}

long plane_dynamical_degree(const PlaneAutomorphism& f) {
  auto w = normalize(f).word;
  // Each absorption removes a Henon factor, so this loop is bounded.
  const std::size_t max_rounds = 4 * (w.size() + 1);
  for (std::size_t round = 0; round < max_rounds; ++round) {
    if (henon_count(w) == 0) return 1;
    // Conjugate leading affine factors to the end.
    while (std::holds_alternative<AffineFactor>(w.front())) {
      std::rotate(w.begin(), w.begin() + 1, w.end());
    }
    PlaneAutomorphism tmp{w};
    w = normalize(tmp).word;
    if (std::holds_alternative<AffineFactor>(w.front())) continue;
    // Cyclic join: trailing affine between the last Henon and the first.
    const auto* tail = std::get_if<AffineFactor>(&w.back());
    if (tail && tail->matrix.d == 0) {
      // H o A with A o swap triangular is conjugate to a triangular map.
      if (henon_count(w) == 1) return 1;
      // Conjugate by the first Henon factor so the join becomes internal.
      std::rotate(w.begin(), w.begin() + 1, w.end());
      w = normalize(PlaneAutomorphism{w}).word;
      continue;
    }
    long degree = 1;
    for (const auto& factor : w)
      if (const auto* h = std::get_if<HenonFactor>(&factor)) degree *= h->poly.degree();
    return degree;
  }
  throw NotReduced("word could not be cyclically reduced by affine absorption");
}

HeightProfile height_growth_profile(const PlaneAutomorphism& f, const PlanePoint& p, long n_max,
                                    const Limits& limits) {
  if (n_max < 2) throw InvariantViolation("height profile needs n_max >= 2");
  HeightProfile out;
  PlanePoint cur = p;
  for (long n = 0; n <= n_max; ++n) {
    if (n > 0) {
      try {
        cur = apply_plane(f, cur, limits);
      } catch (const OverflowGuard&) {
        out.truncated = true;
        break;
      }
    }
    HeightRow row;
    row.n = n;
    row.point = cur;
    row.height = weil_height(std::span<const Rational>(cur));
    if (n > 0 && out.rows.back().height.value > 0) row.ratio = row.height.value / out.rows.back().height.value;
    row.within_initial_bound = n == 0 || row.height.value <= out.rows.front().height.value;
    out.rows.push_back(std::move(row));
  }
  return out;
}

BiPoly BiPoly::constant(const Rational& c) {
  BiPoly p;
  if (c != 0) p.terms_[{0, 0}] = c;
  return p;
}

BiPoly BiPoly::x() {
  BiPoly p;
  p.terms_[{1, 0}] = 1;
  return p;
}

BiPoly BiPoly::y() {
  BiPoly p;
  p.terms_[{0, 1}] = 1;
  return p;
}

BiPoly operator+(const BiPoly& p, const BiPoly& q) {
  BiPoly out = p;
  for (const auto& [e, c] : q.terms_) {
    Rational& slot = out.terms_[e];
    slot += c;
    if (slot == 0) out.terms_.erase(e);
  }
  return out;
}

BiPoly operator*(const Rational& s, const BiPoly& p) {
  if (s == 0) return {};
  BiPoly out = p;
  for (auto& [e, c] : out.terms_) c *= s;
  return out;
}

BiPoly BiPoly::times(const BiPoly& q, const Limits& limits) const {
  if (terms_.size() * q.terms_.size() > 25 * limits.max_terms)
    throw OverflowGuard("bivariate product exceeds the term budget");
  BiPoly out;
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : q.terms_) {
      Rational& slot = out.terms_[{e1.first + e2.first, e1.second + e2.second}];
      slot += c1 * c2;
    }
  std::erase_if(out.terms_, [](const auto& kv) { return kv.second == 0; });
  if (out.size() > limits.max_terms) throw OverflowGuard("bivariate polynomial exceeds the term budget");
  return out;
}

PolynomialMap expand(const PlaneAutomorphism& f, const Limits& limits) {
  PolynomialMap cur{BiPoly::x(), BiPoly::y()};
  for (auto it = f.word.rbegin(); it != f.word.rend(); ++it) {
    if (const auto* h = std::get_if<HenonFactor>(&*it)) {
      BiPoly acc;
      const auto& c = h->poly.coeffs();
      for (auto k = c.rbegin(); k != c.rend(); ++k) acc = acc.times(cur.y, limits) + BiPoly::constant(*k);
      cur = {cur.y, acc + (-h->delta) * cur.x};
    } else {
      const auto& a = std::get<AffineFactor>(*it);
      cur = {a.matrix.a * cur.x + a.matrix.b * cur.y + BiPoly::constant(a.translation[0]),
             a.matrix.c * cur.x + a.matrix.d * cur.y + BiPoly::constant(a.translation[1])};
    }
    if (cur.x.size() > limits.max_terms || cur.y.size() > limits.max_terms)
      throw OverflowGuard("bivariate polynomial exceeds the term budget");
  }
  return cur;
}

}  // namespace loxo
