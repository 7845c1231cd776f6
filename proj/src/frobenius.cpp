#include "loxo/frobenius.hpp"

namespace loxo {

namespace {

RationalFunction zero(std::uint32_t p) { return RationalFunction(p); }

void require_same(std::uint32_t p, std::uint32_t q) {
  if (p != q) throw CharacteristicMismatch("characteristics " + std::to_string(p) + " and " + std::to_string(q));
}

void require_same(std::uint32_t p, const RationalFunction& x) { require_same(p, x.characteristic()); }

void check_degree(const RationalFunction& x, const Limits& limits) { check_size(x, limits); }

void check_degree(const AdditivePoly& a, const Limits& limits) {
  for (const auto& c : a.coeffs()) check_degree(c, limits);
}

}  // namespace

AdditivePoly::AdditivePoly(std::uint32_t p, std::vector<RationalFunction> coeffs) : p_(p), c_(std::move(coeffs)) {
  for (const auto& c : c_) require_same(p_, c);
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

AdditivePoly AdditivePoly::scalar(const RationalFunction& c) { return AdditivePoly(c.characteristic(), {c}); }

AdditivePoly AdditivePoly::frobenius(std::uint32_t p) {
  return AdditivePoly(p, {zero(p), RationalFunction::constant(p, 1)});
}

RationalFunction AdditivePoly::operator()(const RationalFunction& x) const {
  require_same(p_, x);
  RationalFunction acc = zero(p_);
  // x^(p^i) is the substitution t -> t^(p^i) since the constants lie in F_p.
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (!c_[i].is_zero()) acc = acc + c_[i] * x.frobenius(static_cast<unsigned>(i));
  return acc;
}

AdditivePoly AdditivePoly::operator-() const {
  AdditivePoly out = *this;
  for (auto& c : out.c_) c = -c;
  return out;
}

AdditivePoly operator+(const AdditivePoly& a, const AdditivePoly& b) {
  require_same(a.p_, b.p_);
  std::vector<RationalFunction> c(std::max(a.c_.size(), b.c_.size()), zero(a.p_));
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] = c[i] + a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] = c[i] + b.c_[i];
  return AdditivePoly(a.p_, std::move(c));
}

AdditivePoly additive_compose(const AdditivePoly& a, const AdditivePoly& b) {
  require_same(a.characteristic(), b.characteristic());
  const std::uint32_t p = a.characteristic();
  if (a.is_zero() || b.is_zero()) return AdditivePoly(p);
  const auto& ac = a.coeffs();
  const auto& bc = b.coeffs();
  std::vector<RationalFunction> c(ac.size() + bc.size() - 1, zero(p));
  for (std::size_t i = 0; i < ac.size(); ++i) {
    if (ac[i].is_zero()) continue;
    for (std::size_t j = 0; j < bc.size(); ++j)
      if (!bc[j].is_zero()) c[i + j] = c[i + j] + ac[i] * bc[j].frobenius(static_cast<unsigned>(i));
  }
  return AdditivePoly(p, std::move(c));
}

Diagonal::Diagonal(RationalFunction u_, RationalFunction v_) : u(std::move(u_)), v(std::move(v_)) {
  if (u.is_zero() || v.is_zero()) throw InvariantViolation("diagonal generator needs nonzero entries");
  require_same(u.characteristic(), v);
}

FrobGeneratorWord FrobGeneratorWord::identity(std::uint32_t p) { return {p, {}, {zero(p), zero(p)}}; }

namespace {

FrobPoint apply_generator(const FrobGenerator& gen, const FrobPoint& z) {
  if (const auto* d = std::get_if<Diagonal>(&gen)) return {d->u * z[0], d->v * z[1]};
  if (const auto* t = std::get_if<Transvection>(&gen)) {
    if (t->side == Side::Upper) return {z[0] + t->a(z[1]), z[1]};
    return {z[0], z[1] + t->a(z[0])};
  }
  return {z[1], z[0]};
}

FrobGenerator invert_generator(const FrobGenerator& gen) {
  if (const auto* d = std::get_if<Diagonal>(&gen)) return Diagonal(d->u.inverse(), d->v.inverse());
  if (const auto* t = std::get_if<Transvection>(&gen)) return Transvection{t->side, -t->a};
  return Swap{};
}

void check_word(const FrobGeneratorWord& g) {
  require_same(g.p, g.translation[0]);
  require_same(g.p, g.translation[1]);
  for (const auto& gen : g.gens) {
    if (const auto* d = std::get_if<Diagonal>(&gen)) require_same(g.p, d->u);
    if (const auto* t = std::get_if<Transvection>(&gen)) require_same(g.p, t->a.characteristic());
  }
}

FrobPoint linear_part(const std::vector<FrobGenerator>& gens, FrobPoint z, const Limits& limits) {
  for (auto it = gens.rbegin(); it != gens.rend(); ++it) {
    z = apply_generator(*it, z);
    check_degree(z[0], limits);
    check_degree(z[1], limits);
  }
  return z;
}

}  // namespace

FrobPoint apply_frobenius_map(const FrobGeneratorWord& g, const FrobPoint& z, const Limits& limits) {
  check_word(g);
  require_same(g.p, z[0]);
  require_same(g.p, z[1]);
  FrobPoint out = linear_part(g.gens, z, limits);
  out = {out[0] + g.translation[0], out[1] + g.translation[1]};
  check_degree(out[0], limits);
  check_degree(out[1], limits);
  return out;
}

FrobGeneratorWord invert_frobenius_word(const FrobGeneratorWord& g) {
  check_word(g);
  FrobGeneratorWord out{g.p, {}, {zero(g.p), zero(g.p)}};
  for (auto it = g.gens.rbegin(); it != g.gens.rend(); ++it) out.gens.push_back(invert_generator(*it));
  // g(z) = L z + b, so g^-1(w) = L^-1 w - L^-1 b.
  FrobPoint shifted = linear_part(out.gens, g.translation, Limits{});
  out.translation = {-shifted[0], -shifted[1]};
  return out;
}

FrobGeneratorWord compose_frobenius(const FrobGeneratorWord& f, const FrobGeneratorWord& g) {
  check_word(f);
  check_word(g);
  require_same(f.p, g.p);
  // f(g(z)) = Lf Lg z + Lf bg + bf.
  FrobGeneratorWord out{f.p, f.gens, {zero(f.p), zero(f.p)}};
  out.gens.insert(out.gens.end(), g.gens.begin(), g.gens.end());
  FrobPoint moved = linear_part(f.gens, g.translation, Limits{});
  out.translation = {moved[0] + f.translation[0], moved[1] + f.translation[1]};
  return out;
}

FrobGeneratorWord power_frobenius(const FrobGeneratorWord& f, long n) {
  if (n < 0) return power_frobenius(invert_frobenius_word(f), -n);
  FrobGeneratorWord out = FrobGeneratorWord::identity(f.p);
  for (long k = 0; k < n; ++k) out = compose_frobenius(out, f);
  return out;
}

FrobHeightProfile frobenius_orbit_heights(const FrobGeneratorWord& g, const FrobPoint& z, long n_max,
                                          const Limits& limits) {
  if (n_max < 1) throw InvariantViolation("orbit heights need n_max >= 1");
  FrobHeightProfile out;
  FrobPoint cur = z;
  for (long n = 0; n <= n_max; ++n) {
    if (n > 0) {
      try {
        cur = apply_frobenius_map(g, cur, limits);
      } catch (const OverflowGuard&) {
        out.truncated = true;
        break;
      }
    }
    out.rows.push_back({n, cur, weil_height(std::span<const RationalFunction>(cur))});
  }
  return out;
}

FrobCanonical canonical_form(const FrobGeneratorWord& g, const Limits& limits) {
  check_word(g);
  const std::uint32_t p = g.p;
  const AdditivePoly id = AdditivePoly::identity(p);
  const AdditivePoly z(p);
  FrobCanonical out{{id, z, z, id}, g.translation};
  // Right-multiply the running matrix by each generator matrix.
  for (const auto& gen : g.gens) {
    std::array<AdditivePoly, 4> gm{id, z, z, id};
    if (const auto* d = std::get_if<Diagonal>(&gen)) {
      gm = {AdditivePoly::scalar(d->u), z, z, AdditivePoly::scalar(d->v)};
    } else if (const auto* t = std::get_if<Transvection>(&gen)) {
      if (t->side == Side::Upper) gm[1] = t->a;
      else gm[2] = t->a;
    } else {
      gm = {z, id, id, z};
    }
    const auto& m = out.m;
    std::array<AdditivePoly, 4> next{
        additive_compose(m[0], gm[0]) + additive_compose(m[1], gm[2]),
        additive_compose(m[0], gm[1]) + additive_compose(m[1], gm[3]),
        additive_compose(m[2], gm[0]) + additive_compose(m[3], gm[2]),
        additive_compose(m[2], gm[1]) + additive_compose(m[3], gm[3])};
    for (const auto& e : next) check_degree(e, limits);
    out.m = std::move(next);
  }
  return out;
}

}  // namespace loxo
