#include "loxo/intersect.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace loxo {

namespace {

long floor_mod(long n, long m) { return ((n % m) + m) % m; }

// Search order for the second exponent: 1, -1, 2, -2, ...
std::vector<long> signed_order(long bound) {
  std::vector<long> out;
  for (long k = 1; k <= bound; ++k) {
    out.push_back(k);
    out.push_back(-k);
  }
  return out;
}

// Long witnesses are replaced by a digest so reports stay readable.
std::string compact(std::string form) {
  constexpr std::size_t kMax = 4096;
  if (form.size() <= kMax) return form;
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : form) h = (h ^ c) * 1099511628211ULL;
  std::ostringstream out;
  out << "fnv1a:" << std::hex << h << " chars=" << std::dec << form.size();
  return out.str();
}

std::string bipoly_string(const BiPoly& p) {
  if (p.size() == 0) return "0";
  std::string out;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    std::string mono;
    if (e.first) mono += e.first == 1 ? "x" : "x^" + std::to_string(e.first);
    if (e.second) mono += std::string(mono.empty() ? "" : "*") + (e.second == 1 ? "y" : "y^" + std::to_string(e.second));
    std::string coeff = Rational(abs(c)).get_str();
    std::string term = mono.empty() ? coeff : coeff == "1" ? mono : coeff + "*" + mono;
    if (out.empty()) out = (c < 0 ? "-" : "") + term;
    else out += (c < 0 ? " - " : " + ") + term;
  }
  return out;
}

std::string additive_string(const AdditivePoly& a) {
  std::string out = "[";
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) out += (i ? "," : "") + a.coeffs()[i].to_string();
  return out + "]";
}

std::string frob_string(const FrobCanonical& c) {
  std::string out = "[[";
  for (int i = 0; i < 4; ++i) out += (i == 2 ? "],[" : i ? "," : "") + additive_string(c.m[static_cast<std::size_t>(i)]);
  return out + "]];" + c.translation[0].to_string() + "," + c.translation[1].to_string();
}

template <class Point, class Apply>
std::optional<bool> pointwise_agree(const std::vector<Point>& points, Apply&& apply_both) {
  for (const auto& pt : points) {
    try {
      auto [a, b] = apply_both(pt);
      if (!(a == b)) return false;
    } catch (const OverflowGuard&) {
      return std::nullopt;
    }
  }
  return true;
}

}  // namespace

void IntersectionWindow::validate(const Limits& limits) const {
  if (f_min > f_max || g_min > g_max) throw InvariantViolation("empty intersection window");
  const BigInt cells = BigInt(f_max - f_min + 1) * BigInt(g_max - g_min + 1);
  if (cells > BigInt(static_cast<unsigned long>(limits.max_window)))
    throw OverflowGuard("window grid of " + cells.get_str() + " cells exceeds the budget");
}

std::vector<long> IntersectionSet::iota_image() const {
  if (base_point_periodic) throw PeriodicBasePoint("iota is undefined for an f-periodic base point");
  std::vector<long> out;
  for (const auto& pr : pairs) out.push_back(pr.first);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ForwardReduction reduce_to_forward(const IntersectionSet& set) {
  ForwardReduction out;
  auto quadrant = [](const IndexPair& pr) { return (pr.first >= 0 ? 0 : 2) + (pr.second >= 0 ? 0 : 1); };
  for (const auto& pr : set.pairs) ++out.counts[static_cast<std::size_t>(quadrant(pr))];
  std::size_t best = 0;
  for (std::size_t i = 1; i < 4; ++i)
    if (out.counts[i] > out.counts[best]) best = i;
  out.eps_f = best < 2 ? 1 : -1;
  out.eps_g = best % 2 == 0 ? 1 : -1;
  for (const auto& pr : set.pairs)
    if (static_cast<std::size_t>(quadrant(pr)) == best) out.pairs.emplace_back(out.eps_f * pr.first, out.eps_g * pr.second);
  std::sort(out.pairs.begin(), out.pairs.end());
  return out;
}

IteratesReport reduce_to_iterates(const std::vector<IndexPair>& pairs, long step_f, long step_g) {
  if (step_f == 0 || step_g == 0) throw InvariantViolation("iterate steps must be nonzero");
  IteratesReport out{step_f, step_g, {}, 0};
  const long sf = std::labs(step_f), sg = std::labs(step_g);
  for (long l = 0; l < sf; ++l)
    for (long k = 0; k < sg; ++k) out.classes.push_back({l, k, {}});
  for (const auto& pr : pairs) {
    const long l = floor_mod(pr.first, sf), k = floor_mod(pr.second, sg);
    out.classes[static_cast<std::size_t>(l * sg + k)].pairs.push_back(pr);
  }
  for (std::size_t i = 1; i < out.classes.size(); ++i)
    if (out.classes[i].pairs.size() > out.classes[out.dominant].pairs.size()) out.dominant = i;
  return out;
}

DensityEstimate banach_density_estimate(const std::vector<long>& s, long window_min, long window_max,
                                        std::optional<long> min_length) {
  if (window_min > window_max) throw InvariantViolation("empty density window");
  const long w = window_max - window_min + 1;
  DensityEstimate out;
  out.window_min = window_min;
  out.window_max = window_max;
  out.min_length = std::clamp(min_length.value_or((w + 1) / 2), 1L, w);
  std::vector<long> prefix(static_cast<std::size_t>(w) + 1, 0);
  std::vector<char> in(static_cast<std::size_t>(w), 0);
  for (long x : s)
    if (x >= window_min && x <= window_max) in[static_cast<std::size_t>(x - window_min)] = 1;
  for (long i = 0; i < w; ++i) prefix[static_cast<std::size_t>(i) + 1] = prefix[static_cast<std::size_t>(i)] + in[static_cast<std::size_t>(i)];
  out.value = -1;
  for (long len = out.min_length; len <= w; ++len) {
    long best = -1, best_start = 0;
    for (long start = 0; start + len <= w; ++start) {
      const long c = prefix[static_cast<std::size_t>(start + len)] - prefix[static_cast<std::size_t>(start)];
      if (c > best) {
        best = c;
        best_start = start;
      }
    }
    const double ratio = static_cast<double>(best) / static_cast<double>(len);
    out.per_length.emplace_back(len, ratio);
    if (ratio > out.value) {
      out.value = ratio;
      out.best_min = window_min + best_start;
      out.best_max = window_min + best_start + len - 1;
    }
  }
  return out;
}

std::vector<long> ProgressionDecomposition::reconstruct(long window_min, long window_max) const {
  std::vector<long> out;
  for (long x = window_min; x <= window_max; ++x) {
    bool hit = std::binary_search(sporadic.begin(), sporadic.end(), x);
    for (const auto& pr : progressions) hit = hit || floor_mod(x, pr.step) == pr.offset;
    if (hit) out.push_back(x);
  }
  return out;
}

ProgressionDecomposition decompose_arithmetic_progressions(const std::vector<long>& s, long window_min,
                                                           long window_max) {
  if (window_min > window_max) throw InvariantViolation("empty progression window");
  const long w = window_max - window_min + 1;
  std::vector<char> in(static_cast<std::size_t>(w), 0), covered(static_cast<std::size_t>(w), 0);
  for (long x : s) {
    if (x < window_min || x > window_max) throw InvariantViolation("set element outside the window");
    in[static_cast<std::size_t>(x - window_min)] = 1;
  }
  ProgressionDecomposition out;
  for (long a = 1; a <= w / 3; ++a) {
    for (long b = 0; b < a; ++b) {
      const long first = window_min + floor_mod(b - window_min, a);
      long count = 0;
      bool full = true, adds = false;
      for (long x = first; x <= window_max; x += a) {
        const auto i = static_cast<std::size_t>(x - window_min);
        if (!in[i]) {
          full = false;
          break;
        }
        adds = adds || !covered[i];
        ++count;
      }
      if (!full || count < 3 || !adds) continue;
      out.progressions.push_back({a, b});
      for (long x = first; x <= window_max; x += a) covered[static_cast<std::size_t>(x - window_min)] = 1;
    }
  }
  for (long i = 0; i < w; ++i)
    if (in[static_cast<std::size_t>(i)] && !covered[static_cast<std::size_t>(i)]) out.sporadic.push_back(window_min + i);
  return out;
}

std::optional<SpectralMatch> spectral_compatibility(const GLZ2Matrix& mf, const GLZ2Matrix& mg, long bound) {
  if (!is_loxodromic(mf) || !is_loxodromic(mg)) throw NotLoxodromic("spectral compatibility needs loxodromic maps");
  std::vector<BigInt> tg;
  for (long b = 1; b <= bound; ++b) tg.push_back(matrix_power_trace(mg, 2 * static_cast<unsigned long>(b)));
  for (long a = 1; a <= bound; ++a) {
    const BigInt tf = matrix_power_trace(mf, 2 * static_cast<unsigned long>(a));
    for (long b = 1; b <= bound; ++b)
      if (tg[static_cast<std::size_t>(b - 1)] == tf) return SpectralMatch{a, b, tf};
  }
  return std::nullopt;
}

template <class F>
std::optional<CommonIterateCertificate> common_iterate_search(const TorusSystem<F>& f, const TorusSystem<F>& g,
                                                              long bound) {
  if (f.torus().primes() != g.torus().primes()) throw InvariantViolation("torus systems must share a prime basis");
  const auto& torus = f.torus();
  const GLZ2Matrix& mf = f.map().matrix;
  const GLZ2Matrix& mg = g.map().matrix;
  std::vector<BigInt> tg;
  for (long k = 1; k <= bound; ++k) tg.push_back(matrix_power_trace(mg, 2 * static_cast<unsigned long>(k)));
  auto form = [&](const FactoredMap& h) {
    return h.matrix.to_string() + ";" + f.show(FactoredPoint{h.alpha, h.beta}, Limits{});
  };
  for (long n = 1; n <= bound; ++n) {
    const BigInt tf = matrix_power_trace(mf, 2 * static_cast<unsigned long>(n));
    const GLZ2Matrix mfn = mf.pow(n);
    for (long m : signed_order(bound)) {
      if (tg[static_cast<std::size_t>(std::labs(m) - 1)] != tf) continue;
      if (!(mfn == mg.pow(m))) continue;
      const FactoredMap fn = torus.power(f.map(), n);
      const FactoredMap gm = torus.power(g.map(), m);
      if (fn == gm) return CommonIterateCertificate{n, m, "canonical", compact(form(fn)), compact(form(gm))};
    }
  }
  return std::nullopt;
}

template std::optional<CommonIterateCertificate> common_iterate_search(const TorusSystem<Rational>&,
                                                                       const TorusSystem<Rational>&, long);
template std::optional<CommonIterateCertificate> common_iterate_search(const TorusSystem<RationalFunction>&,
                                                                       const TorusSystem<RationalFunction>&, long);

std::optional<CommonIterateCertificate> common_iterate_search(const PlaneSystem& f, const PlaneSystem& g, long bound,
                                                              const Limits& limits) {
  const BigInt lf = plane_dynamical_degree(f.map());
  const BigInt lg = plane_dynamical_degree(g.map());
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<long> num(-10, 10), den(1, 10);
  std::vector<PlanePoint> screen;
  for (int i = 0; i < 5; ++i) screen.push_back({Rational(num(rng), den(rng)), Rational(num(rng), den(rng))});
  for (auto& pt : screen) {
    pt[0].canonicalize();
    pt[1].canonicalize();
  }
  for (long n = 1; n <= bound; ++n) {
    BigInt dn;
    mpz_pow_ui(dn.get_mpz_t(), lf.get_mpz_t(), static_cast<unsigned long>(n));
    const PlaneAutomorphism fn = power_plane(f.map(), n);
    for (long m : signed_order(bound)) {
      BigInt dm;
      mpz_pow_ui(dm.get_mpz_t(), lg.get_mpz_t(), static_cast<unsigned long>(std::labs(m)));
      if (dn != dm) continue;
      const PlaneAutomorphism gm = power_plane(g.map(), m);
      std::optional<PolynomialMap> ef, eg;
      try {
        ef = expand(fn, limits);
        eg = expand(gm, limits);
      } catch (const OverflowGuard&) {
        ef.reset();
        eg.reset();
      }
      if (ef && !(*ef == *eg)) continue;
      auto agree = pointwise_agree(screen, [&](const PlanePoint& pt) {
        return std::make_pair(apply_plane(fn, pt, limits), apply_plane(gm, pt, limits));
      });
      if (agree && !*agree) {
        if (ef) throw InvariantViolation("equal expansions disagree at a point");
        continue;
      }
      if (ef)
        return CommonIterateCertificate{n, m, "canonical", compact(bipoly_string(ef->x) + " ; " + bipoly_string(ef->y)),
                                        compact(bipoly_string(eg->x) + " ; " + bipoly_string(eg->y))};
      if (agree) return CommonIterateCertificate{n, m, "pointwise-screened", "", ""};
    }
  }
  return std::nullopt;
}

std::optional<CommonIterateCertificate> common_iterate_search(const FrobSystem& f, const FrobSystem& g, long bound,
                                                              const Limits& limits) {
  const std::uint32_t p = f.map().p;
  if (g.map().p != p) throw CharacteristicMismatch("Frobenius maps over different characteristics");
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<std::uint32_t> coef(0, p - 1);
  std::vector<FrobPoint> screen;
  for (int i = 0; i < 5; ++i) {
    auto rnd = [&] {
      std::vector<std::uint32_t> c(3);
      for (auto& x : c) x = coef(rng);
      return RationalFunction(FpPoly(p, c), FpPoly(p, {coef(rng), 1}));
    };
    screen.push_back({rnd(), rnd()});
  }
  for (long n = 1; n <= bound; ++n) {
    const FrobGeneratorWord fn = power_frobenius(f.map(), n);
    std::optional<FrobCanonical> cf;
    try {
      cf = canonical_form(fn, limits);
    } catch (const OverflowGuard&) {
    }
    for (long m : signed_order(bound)) {
      const FrobGeneratorWord gm = power_frobenius(g.map(), m);
      std::optional<FrobCanonical> cg;
      if (cf) {
        try {
          cg = canonical_form(gm, limits);
        } catch (const OverflowGuard&) {
        }
      }
      if (cf && cg && !(*cf == *cg)) continue;
      auto agree = pointwise_agree(screen, [&](const FrobPoint& pt) {
        return std::make_pair(apply_frobenius_map(fn, pt, limits), apply_frobenius_map(gm, pt, limits));
      });
      if (agree && !*agree) {
        if (cf && cg) throw InvariantViolation("equal canonical forms disagree at a point");
        continue;
      }
      if (cf && cg) return CommonIterateCertificate{n, m, "canonical", compact(frob_string(*cf)), compact(frob_string(*cg))};
      if (agree) return CommonIterateCertificate{n, m, "pointwise-screened", "", ""};
    }
  }
  return std::nullopt;
}

template <class F>
long offset_bound(const PseudoMonomialMap<F>& f, const TorusPoint<F>& p, const PseudoMonomialMap<F>& g,
                  const TorusPoint<F>& q, const Place& v) {
  if (!is_loxodromic(f) || !is_loxodromic(g)) throw NotLoxodromic("offset bound needs loxodromic maps");
  // rho is pinned down by |Tr| and det.
  if (abs(f.matrix().trace()) != abs(g.matrix().trace()) || f.matrix().det() != g.matrix().det())
    throw IncompatibleDegrees("dynamical degrees differ");
  const auto df = asymptotic_decomposition(f, p, v);
  const auto dg = asymptotic_decomposition(g, q, v);
  auto vanishes = [](const AsymptoticDecomposition& d) {
    return d.a_plus_exact ? d.a_plus_exact->sign() == 0 : std::fabs(d.a_plus) <= 1e-9 * d.scale;
  };
  if (vanishes(df) || vanishes(dg)) throw VanishingLeadingCoefficient("leading coefficient a_plus vanishes at " + v.to_string());
  const double lead_f = std::fabs(df.a_plus) * df.w_plus.norm();
  const double lead_g = std::fabs(dg.a_plus) * dg.w_plus.norm();
  double r = std::fabs(std::log(lead_g / lead_f)) / std::log(std::fabs(df.lambda));
  if (std::fabs(r - std::round(r)) < 1e-9) r = std::round(r);
  return static_cast<long>(std::ceil(r)) + 1;
}

template long offset_bound(const PseudoMonomialMap<Rational>&, const TorusPoint<Rational>&,
                           const PseudoMonomialMap<Rational>&, const TorusPoint<Rational>&, const Place&);
template long offset_bound(const PseudoMonomialMap<RationalFunction>&, const TorusPoint<RationalFunction>&,
                           const PseudoMonomialMap<RationalFunction>&, const TorusPoint<RationalFunction>&,
                           const Place&);

template <class F>
bool variety_contains(const TorusSystem<F>& sys, const std::vector<Polynomial4<F>>& v, const FactoredPoint& x,
                      const FactoredPoint& y, const Limits& limits) {
  const std::vector<FactoredElement> coords{x.x, x.y, y.x, y.y};
  for (const auto& poly : v)
    if (!factored_vanishes(sys.torus(), poly, coords, limits)) return false;
  return true;
}

template bool variety_contains(const TorusSystem<Rational>&, const std::vector<Polynomial4<Rational>>&,
                               const FactoredPoint&, const FactoredPoint&, const Limits&);
template bool variety_contains(const TorusSystem<RationalFunction>&,
                               const std::vector<Polynomial4<RationalFunction>>&, const FactoredPoint&,
                               const FactoredPoint&, const Limits&);

namespace {

template <class F>
bool evaluate_all(const std::vector<Polynomial4<F>>& v, const std::array<F, 4>& coords, const Limits& limits) {
  for (const auto& poly : v) {
    F acc = coords[0] - coords[0];
    for (const auto& term : poly) {
      if (term.exps.size() != 4) throw InvariantViolation("variety polynomials take four variables");
      F t = term.coeff;
      for (std::size_t i = 0; i < 4; ++i) {
        if (term.exps[i] == 0) continue;
        if (term.exps[i] < 0 && is_zero(coords[i])) throw ZeroInput("negative power of a zero coordinate");
        t = t * pow(coords[i], term.exps[i]);
        check_size(t, limits);
      }
      acc = acc + t;
    }
    if (!is_zero(acc)) return false;
  }
  return true;
}

}  // namespace

bool variety_contains(const PlaneSystem&, const std::vector<Polynomial4<Rational>>& v, const PlanePoint& x,
                      const PlanePoint& y, const Limits& limits) {
  return evaluate_all<Rational>(v, {x[0], x[1], y[0], y[1]}, limits);
}

bool variety_contains(const FrobSystem&, const std::vector<Polynomial4<RationalFunction>>& v, const FrobPoint& x,
                      const FrobPoint& y, const Limits& limits) {
  return evaluate_all<RationalFunction>(v, {x[0], x[1], y[0], y[1]}, limits);
}

}  // namespace loxo
