#include "loxo/orbit.hpp"

#include <cmath>

namespace loxo {

namespace {

Eigen::Matrix2d to_eigen(const GLZ2Matrix& m) {
  Eigen::Matrix2d out;
  out << m.a().get_d(), m.b().get_d(), m.c().get_d(), m.d().get_d();
  return out;
}

std::array<BigInt, 2> apply_int(const GLZ2Matrix& m, const std::array<BigInt, 2>& v) {
  return {m.a() * v[0] + m.b() * v[1], m.c() * v[0] + m.d() * v[1]};
}

void require_loxodromic(const GLZ2Matrix& m) {
  if (!is_loxodromic(m)) throw NotLoxodromic("matrix " + m.to_string() + " is not loxodromic");
}

}  // namespace

template <class F>
LogOrbit log_orbit(const PseudoMonomialMap<F>& f, const TorusPoint<F>& p, const Place& v, long n_max) {
  if (n_max < 0) throw InvariantViolation("n_max must be >= 0");
  const GLZ2Matrix& m = f.matrix();
  LogOrbit out{v, {}, {}};
  const LogAbs lx = abs_log(v, p.x), ly = abs_log(v, p.y);
  const LogAbs la = abs_log(v, f.translation().x), lb = abs_log(v, f.translation().y);
  if (lx.ord) {
    const double unit = v.normalizer_log();
    std::array<BigInt, 2> o{*lx.ord, *ly.ord};
    const std::array<BigInt, 2> ob{*la.ord, *lb.ord};
    for (long n = 0; n <= n_max; ++n) {
      out.ords.push_back(o);
      out.u.emplace_back(-o[0].get_d() * unit, -o[1].get_d() * unit);
      auto next = apply_int(m, o);
      o = {next[0] + ob[0], next[1] + ob[1]};
    }
    return out;
  }
  const Eigen::Matrix2d mm = to_eigen(m);
  const Eigen::Vector2d c(la.value, lb.value);
  Eigen::Vector2d u(lx.value, ly.value);
  for (long n = 0; n <= n_max; ++n) {
    out.u.push_back(u);
    u = mm * u + c;
  }
  return out;
}

template <class F>
LogOrbit exact_log_orbit(const PseudoMonomialMap<F>& f, const TorusPoint<F>& p, const Place& v, long n_max) {
  if (n_max < 0) throw InvariantViolation("n_max must be >= 0");
  TorusSystem<F> sys(TorusSystem<F>::basis({&f}, {&p}), f);
  LogOrbit out{v, {}, {}};
  auto cur = sys.lift(p);
  for (long n = 0; n <= n_max; ++n) {
    const LogAbs lx = sys.torus().abs_log(v, cur.x), ly = sys.torus().abs_log(v, cur.y);
    out.u.emplace_back(lx.value, ly.value);
    if (lx.ord) out.ords.push_back({*lx.ord, *ly.ord});
    cur = sys.forward(cur);
  }
  return out;
}

Eigen::Vector2d AsymptoticDecomposition::reconstruct(long n) const {
  const double dn = static_cast<double>(n);
  return a_plus * std::pow(lambda, dn) * w_plus + a_minus * std::pow(mu, dn) * w_minus + w0;
}

bool AsymptoticDecomposition::bounded(double tol) const {
  if (a_plus_exact) return a_plus_exact->sign() == 0 && a_minus_exact->sign() == 0;
  return std::fabs(a_plus) <= tol * scale && std::fabs(a_minus) <= tol * scale;
}

template <class F>
AsymptoticDecomposition asymptotic_decomposition(const PseudoMonomialMap<F>& f, const TorusPoint<F>& p,
                                                 const Place& v) {
  const GLZ2Matrix& m = f.matrix();
  require_loxodromic(m);
  const BigInt tr = m.trace();
  const BigInt det = m.det();
  const QuadraticNumber root = QuadraticNumber::sqrt(tr * tr - 4 * det);
  const QuadraticNumber half(Rational(1, 2));
  const QuadraticNumber lam = tr > 0 ? (QuadraticNumber(tr) + root) * half : (QuadraticNumber(tr) - root) * half;
  const QuadraticNumber mu = QuadraticNumber(tr) - lam;
  // Eigenvectors (b, ell - a); b != 0 because the eigenvalues are irrational.
  const QuadraticNumber a(m.a()), b(m.b());
  const QuadraticNumber det_w = b * (mu - lam);

  AsymptoticDecomposition out;
  out.place = v;
  out.lambda = lam.to_double();
  out.mu = mu.to_double();
  out.w_plus = Eigen::Vector2d(b.to_double(), (lam - a).to_double());
  out.w_minus = Eigen::Vector2d(b.to_double(), (mu - a).to_double());

  const LogAbs lx = abs_log(v, p.x), ly = abs_log(v, p.y);
  const LogAbs la = abs_log(v, f.translation().x), lb = abs_log(v, f.translation().y);
  out.scale = std::max({1.0, std::fabs(lx.value), std::fabs(ly.value), std::fabs(la.value), std::fabs(lb.value)});

  if (lx.ord) {
    // Exact in units of the normalizer: u = -ord.
    const Rational c1 = -Rational(*la.ord), c2 = -Rational(*lb.ord);
    const Rational one_minus_a = 1 - Rational(m.a()), one_minus_d = 1 - Rational(m.d());
    const Rational dd = one_minus_a * one_minus_d - Rational(m.b() * m.c());
    const Rational w01 = (one_minus_d * c1 + Rational(m.b()) * c2) / dd;
    const Rational w02 = (Rational(m.c()) * c1 + one_minus_a * c2) / dd;
    const Rational r1 = -Rational(*lx.ord) - w01, r2 = -Rational(*ly.ord) - w02;
    out.a_plus_exact = (QuadraticNumber(r1) * (mu - a) - b * QuadraticNumber(r2)) / det_w;
    out.a_minus_exact = (b * QuadraticNumber(r2) - QuadraticNumber(r1) * (lam - a)) / det_w;
    out.w0_exact = std::array<Rational, 2>{w01, w02};
    const double unit = v.normalizer_log();
    out.a_plus = out.a_plus_exact->to_double() * unit;
    out.a_minus = out.a_minus_exact->to_double() * unit;
    out.w0 = Eigen::Vector2d(w01.get_d() * unit, w02.get_d() * unit);
    return out;
  }

  const Eigen::Matrix2d mm = to_eigen(m);
  const Eigen::Vector2d c(la.value, lb.value);
  out.w0 = (Eigen::Matrix2d::Identity() - mm).partialPivLu().solve(c);
  const Eigen::Vector2d r = Eigen::Vector2d(lx.value, ly.value) - out.w0;
  Eigen::Matrix2d w;
  w.col(0) = out.w_plus;
  w.col(1) = out.w_minus;
  const Eigen::Vector2d coords = w.partialPivLu().solve(r);
  out.a_plus = coords[0];
  out.a_minus = coords[1];
  return out;
}

template <class F>
std::optional<AsymptoticDecomposition> find_unbounded_place(const PseudoMonomialMap<F>& f, const TorusPoint<F>& p) {
  require_loxodromic(f.matrix());
  const std::vector<F> inputs{f.translation().x, f.translation().y, p.x, p.y};
  auto places = relevant_places(std::span<const F>(inputs));
  std::sort(places.begin(), places.end());
  for (const auto& v : places) {
    const bool all_units = std::all_of(inputs.begin(), inputs.end(), [&](const F& x) {
      const LogAbs l = abs_log(v, x);
      return l.ord ? *l.ord == 0 : l.value == 0.0;
    });
    if (all_units) continue;
    auto dec = asymptotic_decomposition(f, p, v);
    if (!dec.bounded()) return dec;
  }
  return std::nullopt;
}

#define LOXO_INSTANTIATE(F)                                                                                  \
  template LogOrbit log_orbit(const PseudoMonomialMap<F>&, const TorusPoint<F>&, const Place&, long);      \
  template LogOrbit exact_log_orbit(const PseudoMonomialMap<F>&, const TorusPoint<F>&, const Place&, long); \
  template AsymptoticDecomposition asymptotic_decomposition(const PseudoMonomialMap<F>&, const TorusPoint<F>&, \
                                                            const Place&);                                  \
  template std::optional<AsymptoticDecomposition> find_unbounded_place(const PseudoMonomialMap<F>&,          \
                                                                       const TorusPoint<F>&);
LOXO_INSTANTIATE(Rational)
LOXO_INSTANTIATE(RationalFunction)
#undef LOXO_INSTANTIATE

}  // namespace loxo
