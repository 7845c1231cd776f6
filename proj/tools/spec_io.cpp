#include "spec_io.hpp"

#include <cstdio>

namespace loxo::cli {

namespace {

const Json& field(const Json& j, const char* name, const std::string& where) {
  if (!j.is_object() || !j.contains(name)) throw ParseError(where + ": missing field \"" + name + "\"");
  return j.at(name);
}

std::string str(const Json& j, const std::string& where) {
  if (!j.is_string()) throw ParseError(where + ": expected a string");
  return j.get<std::string>();
}

const Json& list(const Json& j, std::size_t size, const std::string& where) {
  if (!j.is_array() || (size && j.size() != size))
    throw ParseError(where + ": expected a list" + (size ? " of " + std::to_string(size) : std::string()));
  return j;
}

long integer(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ParseError(where + ": expected an integer");
  return j.get<long>();
}

template <class F>
F element(const Json& j, std::uint32_t p, const std::string& where) {
  const std::string s = str(j, where);
  try {
    if constexpr (std::is_same_v<F, Rational>) return parse_rational(s);
    else return RationalFunction::parse(p, s);
  } catch (const ParseError& e) {
    throw ParseError(where + ": " + std::string(e.what()).substr(e.kind().size() + 2));
  }
}

std::uint32_t characteristic(const Json& j, const std::string& where) {
  const long p = integer(j, where);
  if (p < 2 || !is_prime(BigInt(p))) throw ParseError(where + ": characteristic must be a prime");
  return static_cast<std::uint32_t>(p);
}

Json parse_json(std::string_view text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(what + ": " + e.what());
  }
}

template <class F>
TorusSpec torus_from(const Json& j, std::uint32_t p) {
  const Json& m = list(field(j, "matrix", "torus"), 2, "torus.matrix");
  list(m[0], 2, "torus.matrix[0]");
  list(m[1], 2, "torus.matrix[1]");
  GLZ2Matrix mat(integer(m[0][0], "torus.matrix"), integer(m[0][1], "torus.matrix"), integer(m[1][0], "torus.matrix"),
                 integer(m[1][1], "torus.matrix"));
  const Json& t = list(field(j, "translation", "torus"), 2, "torus.translation");
  F x = element<F>(t[0], p, "torus.translation[0]"), y = element<F>(t[1], p, "torus.translation[1]");
  return TorusSpec{p, PseudoMonomialMap<F>(mat, TorusPoint<F>(x, y))};
}

PlaneSpec plane_from(const Json& j) {
  PlaneAutomorphism f;
  const Json& word = list(field(j, "word", "plane"), 0, "plane.word");
  for (std::size_t i = 0; i < word.size(); ++i) {
    const std::string where = "plane.word[" + std::to_string(i) + "]";
    const Json& w = word[i];
    if (w.is_object() && w.contains("henon")) {
      const Json& h = w.at("henon");
      std::vector<Rational> c;
      for (const auto& x : list(field(h, "poly", where + ".henon"), 0, where + ".henon.poly"))
        c.push_back(element<Rational>(x, 0, where + ".henon.poly"));
      f.word.push_back(HenonFactor(UPoly(c), element<Rational>(field(h, "delta", where + ".henon"), 0, where + ".delta")));
    } else if (w.is_object() && w.contains("affine")) {
      const Json& a = w.at("affine");
      const Json& m = list(field(a, "matrix", where + ".affine"), 2, where + ".affine.matrix");
      list(m[0], 2, where + ".affine.matrix[0]");
      list(m[1], 2, where + ".affine.matrix[1]");
      const Json& t = list(field(a, "translation", where + ".affine"), 2, where + ".affine.translation");
      auto e = [&](const Json& x) { return element<Rational>(x, 0, where + ".affine"); };
      f.word.push_back(AffineFactor(Matrix2<Rational>{e(m[0][0]), e(m[0][1]), e(m[1][0]), e(m[1][1])}, {e(t[0]), e(t[1])}));
    } else {
      throw ParseError(where + ": expected \"henon\" or \"affine\"");
    }
  }
  return {f};
}

FrobeniusSpec frobenius_from(const Json& j) {
  const std::uint32_t p = characteristic(field(j, "p", "frobenius"), "frobenius.p");
  if (j.contains("q") && integer(j.at("q"), "frobenius.q") != static_cast<long>(p))
    throw ParseError("frobenius.q: only q = p is supported");
  FrobGeneratorWord g = FrobGeneratorWord::identity(p);
  const Json& word = list(field(j, "word", "frobenius"), 0, "frobenius.word");
  for (std::size_t i = 0; i < word.size(); ++i) {
    const std::string where = "frobenius.word[" + std::to_string(i) + "]";
    const Json& w = word[i];
    if (w.is_object() && w.contains("transvection")) {
      const Json& t = w.at("transvection");
      const std::string side = str(field(t, "side", where), where + ".side");
      if (side != "upper" && side != "lower") throw ParseError(where + ".side: expected \"upper\" or \"lower\"");
      std::vector<RationalFunction> c;
      for (const auto& x : list(field(t, "additive", where), 0, where + ".additive"))
        c.push_back(element<RationalFunction>(x, p, where + ".additive"));
      g.gens.push_back(Transvection{side == "upper" ? Side::Upper : Side::Lower, AdditivePoly(p, c)});
    } else if (w.is_object() && w.contains("diag")) {
      const Json& d = list(w.at("diag"), 2, where + ".diag");
      g.gens.push_back(Diagonal(element<RationalFunction>(d[0], p, where + ".diag"),
                                element<RationalFunction>(d[1], p, where + ".diag")));
    } else if (w.is_object() && w.contains("swap")) {
      g.gens.push_back(Swap{});
    } else {
      throw ParseError(where + ": expected \"transvection\", \"diag\" or \"swap\"");
    }
  }
  if (j.contains("translation")) {
    const Json& t = list(j.at("translation"), 2, "frobenius.translation");
    g.translation = {element<RationalFunction>(t[0], p, "frobenius.translation"),
                     element<RationalFunction>(t[1], p, "frobenius.translation")};
  }
  return {g};
}

}  // namespace

MapSpec parse_map_spec(std::string_view text) {
  const Json j = parse_json(text, "map spec");
  const std::string type = str(field(j, "type", "map spec"), "map spec.type");
  if (type == "torus") {
    if (!j.contains("p")) return torus_from<Rational>(j, 0);
    return torus_from<RationalFunction>(j, characteristic(j.at("p"), "torus.p"));
  }
  if (type == "plane") return plane_from(j);
  if (type == "frobenius") return frobenius_from(j);
  throw ParseError("map spec.type: unknown type \"" + type + "\"");
}

Json serialize_map_spec(const MapSpec& spec) {
  Json out;
  std::visit(
      [&](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, TorusSpec>) {
          out["type"] = "torus";
          if (s.p) out["p"] = s.p;
          std::visit(
              [&](const auto& f) {
                const auto& m = f.matrix();
                out["matrix"] = Json::array({Json::array({m.a().get_si(), m.b().get_si()}),
                                             Json::array({m.c().get_si(), m.d().get_si()})});
                out["translation"] = Json::array({to_string(f.translation().x), to_string(f.translation().y)});
              },
              s.map);
        } else if constexpr (std::is_same_v<S, PlaneSpec>) {
          out["type"] = "plane";
          Json word = Json::array();
          for (const auto& factor : s.map.word) {
            if (const auto* h = std::get_if<HenonFactor>(&factor)) {
              Json poly = Json::array();
              for (const auto& c : h->poly.coeffs()) poly.push_back(to_string(c));
              word.push_back({{"henon", {{"poly", poly}, {"delta", to_string(h->delta)}}}});
            } else {
              const auto& a = std::get<AffineFactor>(factor);
              word.push_back({{"affine",
                               {{"matrix", Json::array({Json::array({to_string(a.matrix.a), to_string(a.matrix.b)}),
                                                        Json::array({to_string(a.matrix.c), to_string(a.matrix.d)})})},
                                {"translation", Json::array({to_string(a.translation[0]), to_string(a.translation[1])})}}}});
            }
          }
          out["word"] = word;
        } else {
          out["type"] = "frobenius";
          out["p"] = s.map.p;
          out["q"] = s.map.p;
          Json word = Json::array();
          for (const auto& g : s.map.gens) {
            if (const auto* t = std::get_if<Transvection>(&g)) {
              Json add = Json::array();
              for (const auto& c : t->a.coeffs()) add.push_back(c.to_string());
              word.push_back({{"transvection", {{"side", t->side == Side::Upper ? "upper" : "lower"}, {"additive", add}}}});
            } else if (const auto* d = std::get_if<Diagonal>(&g)) {
              word.push_back({{"diag", Json::array({d->u.to_string(), d->v.to_string()})}});
            } else {
              word.push_back({{"swap", Json::object()}});
            }
          }
          out["word"] = word;
          out["translation"] = Json::array({s.map.translation[0].to_string(), s.map.translation[1].to_string()});
        }
      },
      spec);
  return out;
}

bool operator==(const MapSpec& a, const MapSpec& b) { return serialize_map_spec(a) == serialize_map_spec(b); }

std::string spec_type(const MapSpec& spec) {
  return std::visit(
      [](const auto& s) -> std::string {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, TorusSpec>) return "torus";
        else if constexpr (std::is_same_v<S, PlaneSpec>) return "plane";
        else return "frobenius";
      },
      spec);
}

std::uint32_t spec_characteristic(const MapSpec& spec) {
  if (const auto* t = std::get_if<TorusSpec>(&spec)) return t->p;
  if (const auto* f = std::get_if<FrobeniusSpec>(&spec)) return f->map.p;
  return 0;
}

std::pair<long, long> parse_range(std::string_view text) {
  // The separator is the first ':' after a leading sign.
  const auto colon = text.find(':', 1);
  if (colon == std::string_view::npos) throw ParseError("range \"" + std::string(text) + "\": expected a:b");
  try {
    std::size_t used = 0;
    const std::string a(text.substr(0, colon)), b(text.substr(colon + 1));
    const long lo = std::stol(a, &used);
    if (used != a.size()) throw std::invalid_argument(a);
    const long hi = std::stol(b, &used);
    if (used != b.size()) throw std::invalid_argument(b);
    if (lo > hi) throw ParseError("range \"" + std::string(text) + "\": empty");
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw ParseError("range \"" + std::string(text) + "\": expected integers");
  }
}

template <class F>
std::array<F, 2> parse_pair(std::string_view text, std::uint32_t p) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos || text.find(',', comma + 1) != std::string_view::npos)
    throw ParseError("point \"" + std::string(text) + "\": expected two comma-separated coordinates");
  auto one = [&](std::string_view s) -> F {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    if constexpr (std::is_same_v<F, Rational>) return parse_rational(s);
    else return RationalFunction::parse(p, s);
  };
  return {one(text.substr(0, comma)), one(text.substr(comma + 1))};
}

template std::array<Rational, 2> parse_pair<Rational>(std::string_view, std::uint32_t);
template std::array<RationalFunction, 2> parse_pair<RationalFunction>(std::string_view, std::uint32_t);

std::pair<std::string, std::string> split_start(std::string_view text) {
  const auto semi = text.find(';');
  if (semi == std::string_view::npos) throw ParseError("start \"" + std::string(text) + "\": expected x1,x2;y1,y2");
  return {std::string(text.substr(0, semi)), std::string(text.substr(semi + 1))};
}

template <class F>
std::vector<Polynomial4<F>> parse_variety(std::string_view text, std::uint32_t p) {
  const Json j = parse_json(text, "variety");
  std::vector<Polynomial4<F>> out;
  const Json& polys = list(field(j, "polynomials", "variety"), 0, "variety.polynomials");
  for (std::size_t i = 0; i < polys.size(); ++i) {
    const std::string where = "variety.polynomials[" + std::to_string(i) + "]";
    Polynomial4<F> poly;
    for (const auto& t : list(field(polys[i], "terms", where), 0, where + ".terms")) {
      list(t, 5, where + ".terms[]");
      LaurentTerm<F> term{{}, element<F>(t[4], p, where + ".terms[].coeff")};
      for (std::size_t k = 0; k < 4; ++k) term.exps.push_back(integer(t[k], where + ".terms[]"));
      poly.push_back(std::move(term));
    }
    out.push_back(std::move(poly));
  }
  return out;
}

template std::vector<Polynomial4<Rational>> parse_variety<Rational>(std::string_view, std::uint32_t);
template std::vector<Polynomial4<RationalFunction>> parse_variety<RationalFunction>(std::string_view, std::uint32_t);

template <class F>
LaurentPolynomial<F> parse_laurent(const Json& j, std::uint32_t p) {
  LaurentPolynomial<F> out;
  for (const auto& t : list(j, 0, "polynomial")) {
    list(t, 3, "polynomial term");
    out = out + LaurentPolynomial<F>::monomial(integer(t[0], "polynomial term"), integer(t[1], "polynomial term"),
                                               element<F>(t[2], p, "polynomial term"));
  }
  return out;
}

template LaurentPolynomial<Rational> parse_laurent<Rational>(const Json&, std::uint32_t);
template LaurentPolynomial<RationalFunction> parse_laurent<RationalFunction>(const Json&, std::uint32_t);

QuadraticNumber parse_quadratic(const Json& j) {
  if (j.is_string()) return QuadraticNumber(element<Rational>(j, 0, "quadratic"));
  if (j.is_number_integer()) return QuadraticNumber(Rational(j.get<long>()));
  const Rational a = element<Rational>(field(j, "rat", "quadratic"), 0, "quadratic.rat");
  const Rational b = element<Rational>(field(j, "surd", "quadratic"), 0, "quadratic.surd");
  const long d = integer(field(j, "D", "quadratic"), "quadratic.D");
  if (d <= 0) throw ParseError("quadratic.D: must be positive");
  return QuadraticNumber(a, b, BigInt(d));
}

Json quadratic_json(const QuadraticNumber& x) {
  return {{"decimal", decimal(x.to_double())},
          {"rat", to_string(x.rational_part())},
          {"surd", to_string(x.surd_coefficient())},
          {"D", to_string(x.radicand())}};
}

std::string decimal(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace loxo::cli
