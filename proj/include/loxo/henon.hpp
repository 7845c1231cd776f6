#pragma once

#include <array>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "loxo/matrix2.hpp"
#include "loxo/places.hpp"

namespace loxo {

using PlanePoint = std::array<Rational, 2>;

/// Univariate polynomial over Q, coefficients constant-first, no trailing zeros.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> coeffs);

  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational operator()(const Rational& y) const;

  /// P(m y + t).
  UPoly affine_substitute(const Rational& m, const Rational& t) const;

  friend UPoly operator+(const UPoly& p, const UPoly& q);
  friend UPoly operator*(const Rational& s, const UPoly& p);
  friend bool operator==(const UPoly& p, const UPoly& q) { return p.c_ == q.c_; }

 private:
  std::vector<Rational> c_;
};

/// (x, y) -> (y, poly(y) - delta x) with deg poly >= 2 and delta != 0.
struct HenonFactor {
  UPoly poly;
  Rational delta;

  HenonFactor(UPoly p, Rational d);
  friend bool operator==(const HenonFactor&, const HenonFactor&) = default;
};

/// (x, y) -> matrix (x, y) + translation with det(matrix) != 0.
struct AffineFactor {
  Matrix2<Rational> matrix;
  std::array<Rational, 2> translation;

  AffineFactor(Matrix2<Rational> m, std::array<Rational, 2> t);
  static AffineFactor identity() { return {Matrix2<Rational>::identity(), {Rational(0), Rational(0)}}; }
  static AffineFactor swap() { return {Matrix2<Rational>{0, 1, 1, 0}, {Rational(0), Rational(0)}}; }
  bool is_identity() const;
  friend bool operator==(const AffineFactor&, const AffineFactor&) = default;
};

using PlaneFactor = std::variant<HenonFactor, AffineFactor>;

/// Word F_1 o F_2 o ... o F_k; F_k is applied first. The empty word is the identity.
struct PlaneAutomorphism {
  std::vector<PlaneFactor> word;

  static PlaneAutomorphism identity() { return {}; }
  friend bool operator==(const PlaneAutomorphism&, const PlaneAutomorphism&) = default;
};

PlanePoint apply_plane(const PlaneAutomorphism& f, const PlanePoint& p, const Limits& limits = {});
PlaneAutomorphism inverse_plane(const PlaneAutomorphism& f);
/// f o g as a word.
PlaneAutomorphism compose_plane(const PlaneAutomorphism& f, const PlaneAutomorphism& g);
PlaneAutomorphism power_plane(const PlaneAutomorphism& f, long n);

/// Merges adjacent affine factors, drops identities and absorbs affine factors
/// that would make two neighbouring Henon factors collapse into one.
PlaneAutomorphism normalize(const PlaneAutomorphism& f);

/// Product of Henon degrees of a cyclically reduced conjugate; 1 for affine words.
long plane_dynamical_degree(const PlaneAutomorphism& f);

struct HeightRow {
  long n = 0;
  PlanePoint point;
  Height height;
  std::optional<double> ratio;  // h_n / h_{n-1}, absent when h_{n-1} == 0
  bool within_initial_bound = false;  // h_n <= h_0
};

struct HeightProfile {
  std::vector<HeightRow> rows;
  bool truncated = false;
};

HeightProfile height_growth_profile(const PlaneAutomorphism& f, const PlanePoint& p, long n_max,
                                    const Limits& limits = {});

/// Bivariate polynomial over Q, exponent (i, j) for x^i y^j.
class BiPoly {
 public:
  using Exponent = std::pair<long, long>;
  BiPoly() = default;
  static BiPoly constant(const Rational& c);
  static BiPoly x();
  static BiPoly y();

  const std::map<Exponent, Rational>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  friend BiPoly operator+(const BiPoly& p, const BiPoly& q);
  friend BiPoly operator*(const Rational& s, const BiPoly& p);
  friend bool operator==(const BiPoly& p, const BiPoly& q) { return p.terms_ == q.terms_; }
  BiPoly times(const BiPoly& q, const Limits& limits) const;

 private:
  std::map<Exponent, Rational> terms_;
};

/// Explicit coordinate polynomials of a plane map.
struct PolynomialMap {
  BiPoly x, y;
  friend bool operator==(const PolynomialMap&, const PolynomialMap&) = default;
};

/// Expands the word into coordinate polynomials; OverflowGuard past limits.max_terms.
PolynomialMap expand(const PlaneAutomorphism& f, const Limits& limits = {});

}  // namespace loxo
