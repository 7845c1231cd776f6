#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "CLI11.hpp"
#include "spec_io.hpp"

namespace loxo::cli {

namespace {

struct Context {
  Limits limits;
  std::uint64_t digest = 1469598103934665603ULL;
  Json warnings = Json::array();

  void absorb(std::string_view bytes) {
    for (unsigned char c : bytes) digest = (digest ^ c) * 1099511628211ULL;
    digest = (digest ^ 0xffu) * 1099511628211ULL;
  }
  std::string read(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    absorb(ss.str());
    return ss.str();
  }
  MapSpec read_map(const std::string& path) {
    try {
      return parse_map_spec(read(path));
    } catch (const ParseError& e) {
      throw ParseError(path + ": " + std::string(e.what()).substr(e.kind().size() + 2));
    }
  }
  void warn(std::string text) { warnings.push_back(std::move(text)); }
};

Json height_json(const Height& h) {
  Json out{{"decimal", decimal(h.value)}};
  if (h.exact) {
    out[h.exact_is_exponential ? "H" : "exact"] = h.exact->get_str();
  }
  return out;
}

Json log_abs_json(const LogAbs& a) {
  Json out{{"decimal", std::isfinite(a.value) ? Json(decimal(a.value)) : Json(nullptr)}};
  if (a.ord) out["ord"] = a.ord->get_str();
  return out;
}

template <class F>
Json field_json(std::uint32_t p) {
  if constexpr (std::is_same_v<F, Rational>) return "Q";
  else return "F_" + std::to_string(p) + "(t)";
}

Json matrix_json(const GLZ2Matrix& m) {
  return Json::array({Json::array({m.a().get_str(), m.b().get_str()}), Json::array({m.c().get_str(), m.d().get_str()})});
}

Json certificate_json(const std::optional<CommonIterateCertificate>& c) {
  if (!c) return nullptr;
  return {{"N", c->n}, {"M", c->m}, {"kind", c->kind}, {"f_form", c->f_form}, {"g_form", c->g_form}};
}

Json decomposition_json(const ProgressionDecomposition& d) {
  Json prog = Json::array();
  for (const auto& pr : d.progressions) prog.push_back({{"step", pr.step}, {"offset", pr.offset}});
  return {{"progressions", prog}, {"sporadic", d.sporadic}};
}

Json density_json(const DensityEstimate& d) {
  return {{"decimal", decimal(d.value)},
          {"window", {d.window_min, d.window_max}},
          {"min_length", d.min_length},
          {"best_interval", {d.best_min, d.best_max}}};
}

// ---- systems built from specs --------------------------------------------------

template <class F>
struct TorusKit {
  using Point = TorusPoint<F>;
  std::uint32_t p;
  const PseudoMonomialMap<F>& f;
  const PseudoMonomialMap<F>& g;

  Point point(const std::string& text) const {
    auto [x, y] = parse_pair<F>(text, p);
    return Point(x, y);
  }
  std::pair<TorusSystem<F>, TorusSystem<F>> systems(std::initializer_list<const Point*> pts) const {
    auto torus = TorusSystem<F>::basis({&f, &g}, pts);
    return {TorusSystem<F>(torus, f), TorusSystem<F>(torus, g)};
  }
};

std::optional<CommonIterateCertificate> certificate(const auto& f, const auto& g, long bound, const Limits& limits) {
  if constexpr (requires { common_iterate_search(f, g, bound, limits); }) return common_iterate_search(f, g, bound, limits);
  else return common_iterate_search(f, g, bound);
}

/// Calls fn(sys_f, sys_g, lifted p, lifted q, characteristic) with f and g of the same kind and field.
template <class Fn>
Json with_systems(Context& ctx, const MapSpec& a, const MapSpec& b, const std::string& p_text,
                  const std::string& q_text, Fn&& fn) {
  if (spec_type(a) != spec_type(b)) throw InvariantViolation("maps must have the same type");
  if (spec_characteristic(a) != spec_characteristic(b)) throw CharacteristicMismatch("maps live over different fields");
  const std::uint32_t p = spec_characteristic(a);
  if (const auto* ta = std::get_if<TorusSpec>(&a)) {
    const auto& tb = std::get<TorusSpec>(b);
    return std::visit(
        [&](const auto& fa) -> Json {
          using F = std::decay_t<decltype(fa.translation().x)>;
          TorusKit<F> kit{p, fa, std::get<PseudoMonomialMap<F>>(tb.map)};
          const auto pp = kit.point(p_text), qq = kit.point(q_text);
          auto [sf, sg] = kit.systems({&pp, &qq});
          return fn(sf, sg, sf.lift(pp), sg.lift(qq), p);
        },
        ta->map);
  }
  if (const auto* pa = std::get_if<PlaneSpec>(&a)) {
    PlaneSystem sf(pa->map, ctx.limits), sg(std::get<PlaneSpec>(b).map, ctx.limits);
    return fn(sf, sg, parse_pair<Rational>(p_text, 0), parse_pair<Rational>(q_text, 0), p);
  }
  FrobSystem sf(std::get<FrobeniusSpec>(a).map, ctx.limits), sg(std::get<FrobeniusSpec>(b).map, ctx.limits);
  return fn(sf, sg, parse_pair<RationalFunction>(p_text, p), parse_pair<RationalFunction>(q_text, p), p);
}

template <class System>
constexpr bool is_torus = requires(const System& s) { s.torus(); };

// ---- analyze -------------------------------------------------------------------

template <class F>
Json analyze_torus(const PseudoMonomialMap<F>& f, std::uint32_t p) {
  const auto deg = dynamical_degree(f);
  Json out{{"type", "torus"},
           {"field", field_json<F>(p)},
           {"matrix", matrix_json(f.matrix())},
           {"translation", {to_string(f.translation().x), to_string(f.translation().y)}},
           {"dynamical_degree",
            {{"decimal", decimal(deg.value)},
             {"trace", deg.trace.get_str()},
             {"det", deg.det.get_str()},
             {"discriminant", deg.discriminant.get_str()},
             {"exact", quadratic_json(deg.exact)}}},
           {"loxodromic", is_loxodromic(f)}};
  if (is_loxodromic(f)) {
    const auto mob = mobius_fixed_points(f.matrix());
    out["mobius_fixed_points"] = {{"v_plus", quadratic_json(mob.v_plus)},
                                  {"v_minus", quadratic_json(mob.v_minus)},
                                  {"multiplier_plus", quadratic_json(mob.multiplier_plus)},
                                  {"multiplier_minus", quadratic_json(mob.multiplier_minus)}};
    const auto ew = eigenweights(f.matrix());
    out["eigenweight"] = {{"s", quadratic_json(ew.weight.s)},
                          {"t", quadratic_json(ew.weight.t)},
                          {"lambda", quadratic_json(ew.lambda)},
                          {"normalized_matrix", matrix_json(ew.normalized)},
                          {"squared", ew.squared},
                          {"sign_conjugated", ew.sign_conjugated}};
  }
  return out;
}

Json frob_canonical_json(const FrobCanonical& c) {
  auto add = [](const AdditivePoly& a) {
    Json out = Json::array();
    for (const auto& x : a.coeffs()) out.push_back(x.to_string());
    return out;
  };
  return {{"matrix", Json::array({Json::array({add(c.m[0]), add(c.m[1])}), Json::array({add(c.m[2]), add(c.m[3])})})},
          {"translation", {c.translation[0].to_string(), c.translation[1].to_string()}}};
}

Json analyze(Context& ctx, const MapSpec& spec) {
  if (const auto* t = std::get_if<TorusSpec>(&spec))
    return std::visit([&](const auto& f) { return analyze_torus(f, t->p); }, t->map);
  if (const auto* pl = std::get_if<PlaneSpec>(&spec)) {
    const long lambda = plane_dynamical_degree(pl->map);
    return {{"type", "plane"},
            {"factors", pl->map.word.size()},
            {"normalized", serialize_map_spec(PlaneSpec{normalize(pl->map)})["word"]},
            {"dynamical_degree", lambda},
            {"loxodromic", lambda > 1}};
  }
  const auto& g = std::get<FrobeniusSpec>(spec).map;
  Json out{{"type", "frobenius"}, {"p", g.p}, {"generators", g.gens.size()}};
  try {
    out["canonical_form"] = frob_canonical_json(canonical_form(g, ctx.limits));
  } catch (const OverflowGuard& e) {
    out["canonical_form"] = nullptr;
    ctx.warn(std::string("canonical form truncated: ") + e.what());
  }
  return out;
}

// ---- orbit ---------------------------------------------------------------------

template <class System>
Json orbit_rows(Context& ctx, const System& sys, const typename System::Point& p, long n_min, long n_max,
                const Place& v) {
  auto seg = iterate_orbit(sys, p, n_min, n_max);
  Json rows = Json::array();
  for (const auto& r : seg.records) {
    Json u = Json::array();
    if constexpr (is_torus<System>) {
      u.push_back(log_abs_json(sys.torus().abs_log(v, r.point.x)));
      u.push_back(log_abs_json(sys.torus().abs_log(v, r.point.y)));
    } else {
      for (const auto& x : r.point) u.push_back(is_zero(x) ? Json(nullptr) : log_abs_json(abs_log(v, x)));
    }
    std::string shown;
    try {
      shown = sys.show(r.point, ctx.limits);
    } catch (const OverflowGuard&) {
      shown = "<beyond digit budget>";
    }
    rows.push_back({{"n", r.n}, {"point", shown}, {"height", height_json(r.height)}, {"u", u}});
  }
  if (seg.truncated) ctx.warn("orbit truncated: " + seg.truncation_reason);
  return {{"place", v.to_string()}, {"rows", rows}, {"truncated", seg.truncated}};
}

// ---- intersect -----------------------------------------------------------------

template <class F>
Json torus_extras(Context& ctx, const TorusSystem<F>& sf, const TorusSystem<F>& sg, const FactoredPoint& p,
                  const FactoredPoint& q, long bound) {
  Json out;
  const auto f = sf.materialized_map(ctx.limits), g = sg.materialized_map(ctx.limits);
  try {
    auto sp = spectral_compatibility(f.matrix(), g.matrix(), bound);
    out["spectral_compatibility"] =
        sp ? Json{{"a", sp->a}, {"b", sp->b}, {"trace", sp->trace.get_str()}} : Json(nullptr);
  } catch (const NotLoxodromic&) {
    out["spectral_compatibility"] = nullptr;
    ctx.warn("spectral compatibility skipped: maps are not both loxodromic");
  }
  try {
    const Place v = Place::archimedean();
    const auto pp = sf.torus().materialize(p, ctx.limits), qq = sf.torus().materialize(q, ctx.limits);
    if constexpr (std::is_same_v<F, Rational>) {
      out["offset_bound"] = {{"place", v.to_string()}, {"C", offset_bound(f, pp, g, qq, v)}};
    } else {
      const Place inf = Place::infinite(f.context().p);
      out["offset_bound"] = {{"place", inf.to_string()}, {"C", offset_bound(f, pp, g, qq, inf)}};
    }
  } catch (const Error& e) {
    out["offset_bound"] = nullptr;
    ctx.warn(std::string("offset bound unavailable: ") + e.what());
  }
  return out;
}

Json intersect(Context& ctx, const MapSpec& a, const MapSpec& b, const std::string& p_text, const std::string& q_text,
               const IntersectionWindow& window, long bound) {
  return with_systems(ctx, a, b, p_text, q_text, [&](const auto& sf, const auto& sg, const auto& p, const auto& q, auto) {
    const auto set = find_intersections(sf, p, sg, q, window, ctx.limits);
    Json pairs = Json::array();
    for (const auto& [n, m] : set.pairs) pairs.push_back({n, m});
    const auto fwd = reduce_to_forward(set);
    Json out{{"window", {{"f", {window.f_min, window.f_max}}, {"g", {window.g_min, window.g_max}}}},
             {"count", set.pairs.size()},
             {"pairs", pairs},
             {"truncated", set.truncated},
             {"base_point_periodic", set.base_point_periodic},
             {"forward_reduction",
              {{"eps_f", fwd.eps_f}, {"eps_g", fwd.eps_g}, {"counts", {{"++", fwd.counts[0]}, {"+-", fwd.counts[1]},
                                                                        {"-+", fwd.counts[2]}, {"--", fwd.counts[3]}}}}}};
    if (set.truncated) ctx.warn("orbit segments truncated by the resource budget; pairs are partial");
    if (set.base_point_periodic) {
      ctx.warn("base point is f-periodic: iota image, density and progressions are undefined");
      out["iota_image"] = nullptr;
    } else {
      const auto iota = set.iota_image();
      out["iota_image"] = iota;
      out["density"] = density_json(banach_density_estimate(iota, window.f_min, window.f_max));
      out["decomposition"] = decomposition_json(decompose_arithmetic_progressions(iota, window.f_min, window.f_max));
    }
    out["certificate"] = certificate_json(certificate(sf, sg, bound, ctx.limits));
    if constexpr (is_torus<std::decay_t<decltype(sf)>>) out.update(torus_extras(ctx, sf, sg, p, q, bound));
    return out;
  });
}

// ---- dml -------------------------------------------------------------------------

Json dml(Context& ctx, const MapSpec& a, const MapSpec& b, const std::string& variety_text, const std::string& start,
         long wmin, long wmax) {
  const auto [x_text, y_text] = split_start(start);
  return with_systems(ctx, a, b, x_text, y_text, [&](const auto& sf, const auto& sg, const auto& x, const auto& y, auto p) {
    using System = std::decay_t<decltype(sf)>;
    using F = std::conditional_t<std::is_same_v<System, TorusSystem<Rational>> || std::is_same_v<System, PlaneSystem>,
                                 Rational, RationalFunction>;
    const auto v = parse_variety<F>(variety_text, p);
    const auto visits = subvariety_visit_set(sf, sg, x, y, v, wmin, wmax, ctx.limits);
    if (visits.truncated) ctx.warn("some indices were skipped by the resource budget");
    return Json{{"window", {wmin, wmax}},
                {"visits", visits.visits},
                {"count", visits.visits.size()},
                {"decomposition", decomposition_json(visits.decomposition)},
                {"density", density_json(banach_density_estimate(visits.visits, wmin, wmax))},
                {"truncated", visits.truncated}};
  });
}

// ---- height and valuation --------------------------------------------------------

template <class F>
Json height_report(const std::array<F, 2>& pt) {
  Json places = Json::array();
  std::vector<F> nonzero;
  for (const auto& x : pt)
    if (!is_zero(x)) nonzero.push_back(x);
  if (!nonzero.empty())
    for (const auto& v : relevant_places(std::span<const F>(nonzero))) {
      const double c = coordinate_norm_log(v, std::span<const F>(pt));
      if (c > 0) places.push_back({{"place", v.to_string()}, {"log_plus", decimal(c)}});
    }
  return {{"point", {to_string(pt[0]), to_string(pt[1])}},
          {"height", height_json(weil_height(std::span<const F>(pt)))},
          {"places", places}};
}

template <class F>
Json valuation_report(const std::optional<PseudoMonomialMap<F>>& f, const Json& poly_json,
                      const std::optional<Json>& weight_json, std::uint32_t p) {
  const auto poly = parse_laurent<F>(poly_json, p);
  std::optional<MonomialWeight> w;
  if (weight_json) {
    if (!weight_json->is_array() || weight_json->size() != 2) throw ParseError("weight: expected [s, t]");
    w = MonomialWeight(parse_quadratic((*weight_json)[0]), parse_quadratic((*weight_json)[1]));
  }
  Json out;
  if (f) {
    const auto ew = eigenweights(f->matrix());
    out["eigenweight"] = {{"s", quadratic_json(ew.weight.s)},
                          {"t", quadratic_json(ew.weight.t)},
                          {"lambda", quadratic_json(ew.lambda)}};
    if (!w) w = ew.weight;
  }
  if (!w) throw ParseError("valuation needs --weight or a loxodromic torus map");
  out["weight"] = {quadratic_json(w->s), quadratic_json(w->t)};
  out["value"] = quadratic_json(monomial_valuation_eval(*w, poly));
  if (f) {
    const auto pushed = pushforward_weight(f->matrix(), *w);
    const auto verdict = check_eigenvaluation_functoriality(*f, *w, poly);
    out["pushforward_weight"] = {quadratic_json(pushed.s), quadratic_json(pushed.t)};
    out["functoriality"] = {{"holds", verdict.holds},
                            {"pushed", quadratic_json(verdict.pushed)},
                            {"pulled", quadratic_json(verdict.pulled)}};
  }
  return out;
}

std::string hex(std::uint64_t x) {
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << x;
  return out.str();
}

}  // namespace

CommandResult run_command(const std::vector<std::string>& args) {
  CommandResult result;
  Context ctx;
  for (const auto& a : args) ctx.absorb(a);

  CLI::App app{"Exact computations with loxodromic automorphisms of the torus and the plane", "loxo"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kVersion);
  app.add_option("--max-digits", ctx.limits.max_digits, "Decimal digit budget per rational coordinate");
  app.add_option("--max-degree", ctx.limits.max_degree, "Degree budget per rational-function coordinate");
  app.add_option("--max-window", ctx.limits.max_window, "Budget for |fRange| * |gRange|");
  app.add_option("--max-terms", ctx.limits.max_terms, "Term budget when expanding plane maps");
  std::string report_path;
  app.add_option("--report", report_path, "Also write the report to this file");

  std::string f_path, g_path, point, range = "0:20", place = "arch", p_text = "1,1", q_text = "1,1", window = "0:100",
                                      window_g, variety, start, poly, weight;
  long bound = 12;
  std::uint32_t characteristic = 0;
  std::optional<std::string> map_path;

  auto* analyze_cmd = app.add_subcommand("analyze", "Dynamical degree, loxodromy and eigen-data of a map");
  analyze_cmd->add_option("map", f_path, "Map spec (JSON)")->required();

  auto* orbit_cmd = app.add_subcommand("orbit", "Orbit rows with heights and log-norms at a place");
  orbit_cmd->add_option("map", f_path, "Map spec (JSON)")->required();
  orbit_cmd->add_option("--point", point, "Start point \"x,y\"")->required();
  orbit_cmd->add_option("--range", range, "Index range a:b");
  orbit_cmd->add_option("--place", place, "arch, p:7, poly:t+1 or inf");

  auto* intersect_cmd = app.add_subcommand("intersect", "Pairs (n, m) with f^n(p) = g^m(q) in a window");
  intersect_cmd->add_option("f", f_path, "Map spec for f")->required();
  intersect_cmd->add_option("g", g_path, "Map spec for g")->required();
  intersect_cmd->add_option("--p", p_text, "Base point for f");
  intersect_cmd->add_option("--q", q_text, "Base point for g");
  intersect_cmd->add_option("--window", window, "Index range for f (and g unless --window-g)");
  intersect_cmd->add_option("--window-g", window_g, "Index range for g");
  intersect_cmd->add_option("--bound", bound, "Exponent bound for the common-iterate search");

  auto* common_cmd = app.add_subcommand("common-iterate", "Search f^N = g^M with |N|, |M| <= bound");
  common_cmd->add_option("f", f_path, "Map spec for f")->required();
  common_cmd->add_option("g", g_path, "Map spec for g")->required();
  common_cmd->add_option("--bound", bound, "Exponent bound");

  auto* dml_cmd = app.add_subcommand("dml", "Indices n with (f^n(x0), g^n(y0)) on a variety");
  dml_cmd->add_option("f", f_path, "Map spec for f")->required();
  dml_cmd->add_option("g", g_path, "Map spec for g")->required();
  dml_cmd->add_option("--variety", variety, "Variety spec (JSON)")->required();
  dml_cmd->add_option("--start", start, "Start points \"x1,x2;y1,y2\"")->required();
  dml_cmd->add_option("--window", window, "Index range a:b");

  auto* height_cmd = app.add_subcommand("height", "Weil height of a point of the plane");
  height_cmd->add_option("--point", point, "Point \"x,y\"")->required();
  height_cmd->add_option("--char", characteristic, "Characteristic p for F_p(t); 0 for Q");

  auto* valuation_cmd = app.add_subcommand("valuation", "Monomial valuation of a Laurent polynomial");
  valuation_cmd->add_option("map", map_path, "Torus map spec; its eigenweight is the default weight");
  valuation_cmd->add_option("--poly", poly, "Terms [[i, j, \"c\"], ...]")->required();
  valuation_cmd->add_option("--weight", weight, "Weight [s, t]");
  valuation_cmd->add_option("--char", characteristic, "Characteristic p for F_p(t); 0 for Q");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    result.out = app.help();
    return result;
  } catch (const CLI::CallForVersion&) {
    result.out = std::string(kVersion) + "\n";
    return result;
  } catch (const CLI::ParseError& e) {
    result.exit_code = 2;
    result.err = std::string("usage error: ") + e.what() + "\n";
    return result;
  }

  try {
    Json results;
    if (*analyze_cmd) {
      results = analyze(ctx, ctx.read_map(f_path));
    } else if (*orbit_cmd) {
      const MapSpec spec = ctx.read_map(f_path);
      const auto [lo, hi] = parse_range(range);
      const Place v = Place::parse(place, spec_characteristic(spec));
      results = with_systems(ctx, spec, spec, point, point, [&](const auto& sf, const auto&, const auto& p, const auto&, auto) {
        return orbit_rows(ctx, sf, p, lo, hi, v);
      });
    } else if (*intersect_cmd) {
      const MapSpec f = ctx.read_map(f_path), g = ctx.read_map(g_path);
      const auto [f0, f1] = parse_range(window);
      const auto [g0, g1] = window_g.empty() ? std::pair{f0, f1} : parse_range(window_g);
      results = intersect(ctx, f, g, p_text, q_text, IntersectionWindow{f0, f1, g0, g1}, bound);
    } else if (*common_cmd) {
      const MapSpec f = ctx.read_map(f_path), g = ctx.read_map(g_path);
      // Base points are irrelevant to the search; (1, 1) is valid in every field.
      results = with_systems(ctx, f, g, "1,1", "1,1", [&](const auto& sf, const auto& sg, auto&&...) {
        Json out{{"bound", bound}, {"certificate", certificate_json(certificate(sf, sg, bound, ctx.limits))}};
        if constexpr (is_torus<std::decay_t<decltype(sf)>>) {
          const auto mf = sf.map().matrix, mg = sg.map().matrix;
          if (is_loxodromic(mf) && is_loxodromic(mg)) {
            auto sp = spectral_compatibility(mf, mg, bound);
            out["spectral_compatibility"] =
                sp ? Json{{"a", sp->a}, {"b", sp->b}, {"trace", sp->trace.get_str()}} : Json(nullptr);
          }
        }
        return out;
      });
    } else if (*dml_cmd) {
      const MapSpec f = ctx.read_map(f_path), g = ctx.read_map(g_path);
      const auto [lo, hi] = parse_range(window);
      results = dml(ctx, f, g, ctx.read(variety), start, lo, hi);
    } else if (*height_cmd) {
      if (characteristic == 0) {
        results = height_report(parse_pair<Rational>(point, 0));
      } else {
        if (!is_prime(BigInt(characteristic))) throw ParseError("--char must be 0 or a prime");
        results = height_report(parse_pair<RationalFunction>(point, characteristic));
      }
    } else {
      const Json poly_json = [&] {
        try {
          return Json::parse(poly);
        } catch (const Json::parse_error& e) {
          throw ParseError(std::string("--poly: ") + e.what());
        }
      }();
      std::optional<Json> weight_json;
      if (!weight.empty()) {
        try {
          weight_json = Json::parse(weight);
        } catch (const Json::parse_error& e) {
          throw ParseError(std::string("--weight: ") + e.what());
        }
      }
      std::optional<MapSpec> spec;
      if (map_path) spec = ctx.read_map(*map_path);
      if (spec && !std::holds_alternative<TorusSpec>(*spec)) throw ParseError("valuation: map must be a torus map");
      const std::uint32_t p = spec ? spec_characteristic(*spec) : characteristic;
      if (p == 0) {
        std::optional<PseudoMonomialMap<Rational>> f;
        if (spec) f = std::get<PseudoMonomialMap<Rational>>(std::get<TorusSpec>(*spec).map);
        results = valuation_report<Rational>(f, poly_json, weight_json, 0);
      } else {
        if (!is_prime(BigInt(p))) throw ParseError("--char must be 0 or a prime");
        std::optional<PseudoMonomialMap<RationalFunction>> f;
        if (spec) f = std::get<PseudoMonomialMap<RationalFunction>>(std::get<TorusSpec>(*spec).map);
        results = valuation_report<RationalFunction>(f, poly_json, weight_json, p);
      }
    }

    Json report{{"command", args},
                {"version", kVersion},
                {"inputs_digest", "fnv1a:" + hex(ctx.digest)},
                {"results", results},
                {"warnings", ctx.warnings}};
    result.out = report.dump(2) + "\n";
    if (!report_path.empty()) {
      std::ofstream out(report_path, std::ios::binary);
      if (!out) throw ParseError("cannot write " + report_path);
      out << result.out;
    }
  } catch (const OverflowGuard& e) {
    result.exit_code = 3;
    result.err = std::string(e.what()) + "\n";
  } catch (const Error& e) {
    result.exit_code = 2;
    result.err = std::string(e.what()) + "\n";
  }
  return result;
}

}  // namespace loxo::cli
