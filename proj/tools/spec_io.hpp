#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"
#include "loxo/intersect.hpp"
#include "loxo/valuations.hpp"

namespace loxo::cli {

using Json = nlohmann::ordered_json;

/// Torus map over Q (p == 0) or F_p(t).
struct TorusSpec {
  std::uint32_t p = 0;
  std::variant<PseudoMonomialMap<Rational>, PseudoMonomialMap<RationalFunction>> map;
};

struct PlaneSpec {
  PlaneAutomorphism map;
};

struct FrobeniusSpec {
  FrobGeneratorWord map;
};

using MapSpec = std::variant<TorusSpec, PlaneSpec, FrobeniusSpec>;

/// ParseError for malformed JSON or fields; InvariantViolation for invalid maps.
MapSpec parse_map_spec(std::string_view text);
Json serialize_map_spec(const MapSpec& spec);
bool operator==(const MapSpec& a, const MapSpec& b);

std::string spec_type(const MapSpec& spec);
/// 0 for Q.
std::uint32_t spec_characteristic(const MapSpec& spec);

/// "a:b" with a <= b.
std::pair<long, long> parse_range(std::string_view text);
/// Comma-separated field elements.
template <class F>
std::array<F, 2> parse_pair(std::string_view text, std::uint32_t p);
/// "x1,x2;y1,y2".
std::pair<std::string, std::string> split_start(std::string_view text);

/// {"polynomials":[{"terms":[[i,j,k,l,"c"], ...]}, ...]}.
template <class F>
std::vector<Polynomial4<F>> parse_variety(std::string_view text, std::uint32_t p);

/// [[i, j, "c"], ...].
template <class F>
LaurentPolynomial<F> parse_laurent(const Json& j, std::uint32_t p);
/// ["s", "t"] with each entry a rational string or {"rat":"a","surd":"b","D":D}.
QuadraticNumber parse_quadratic(const Json& j);
Json quadratic_json(const QuadraticNumber& x);

/// Twelve significant digits.
std::string decimal(double x);

}  // namespace loxo::cli
