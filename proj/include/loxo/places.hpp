#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "loxo/field.hpp"

namespace loxo {

/// A normalized absolute value of Q (archimedean or p-adic) or of F_p(t)
/// (infinite place or a monic irreducible pi).
///
/// Normalizations: |p|_p = 1/p over Q; over F_p(t), |x|_pi = e^{-deg(pi) ord_pi x}
/// and |x|_inf = e^{deg x}, so the product formula holds with unit weights.
class Place {
 public:
  enum class Kind { Archimedean, FinitePrime, Infinite, FinitePoly };

  static Place archimedean() { return Place(Kind::Archimedean, {}); }
  static Place prime(const BigInt& p);
  static Place infinite(std::uint32_t characteristic);
  static Place poly(const FpPoly& pi);
  /// "arch", "p:7", "inf", "poly:t+1"; `characteristic` is needed for the last two.
  static Place parse(std::string_view text, std::uint32_t characteristic = 0);

  Kind kind() const { return kind_; }
  bool is_archimedean() const { return kind_ == Kind::Archimedean; }
  bool over_function_field() const { return kind_ == Kind::Infinite || kind_ == Kind::FinitePoly; }
  const BigInt& prime_number() const { return std::get<BigInt>(data_); }
  const FpPoly& prime_poly() const { return std::get<FpPoly>(data_); }
  std::uint32_t characteristic() const;

  /// log of the normalizer: log p, deg(pi), or 1 at the infinite place.
  double normalizer_log() const;

  std::string to_string() const;

  /// Fixed scan order: archimedean/infinite first, then finite places by key.
  friend bool operator<(const Place& a, const Place& b);
  friend bool operator==(const Place& a, const Place& b);

 private:
  Place(Kind kind, std::variant<std::monostate, BigInt, std::uint32_t, FpPoly> data)
      : kind_(kind), data_(std::move(data)) {}
  Kind kind_;
  std::variant<std::monostate, BigInt, std::uint32_t, FpPoly> data_;
};

/// log|x|_v. Non-archimedean values also carry ord_v(x) exactly, with
/// value == -ord * normalizer_log.
struct LogAbs {
  double value = 0.0;
  std::optional<BigInt> ord;
};

LogAbs abs_log(const Place& v, const Rational& x);
LogAbs abs_log(const Place& v, const RationalFunction& x);

/// Finite places dividing any numerator or denominator, plus arch/inf.
std::vector<Place> relevant_places(std::span<const Rational> xs);
std::vector<Place> relevant_places(std::span<const RationalFunction> xs);

/// log max_i |x_i|_v over nonzero coordinates; -inf for the all-zero point.
double coordinate_norm_log(const Place& v, std::span<const Rational> point);
double coordinate_norm_log(const Place& v, std::span<const RationalFunction> point);

/// Height with exact backing. Over Q `exact` is the integer H with value = log H;
/// over F_p(t) heights are integers and `exact` is the value itself.
struct Height {
  double value = 0.0;
  std::optional<BigInt> exact;
  bool exact_is_exponential = false;
};

/// Equal exact backings when both sides have one, otherwise |a - b| <= 1e-9 relative.
bool heights_equal(const Height& a, const Height& b);

/// h(p) = sum_v log+ ||p||_v. Finite places are summed in aggregate through the
/// lcm of denominators, so no factoring is needed.
Height weil_height(std::span<const Rational> point);
Height weil_height(std::span<const RationalFunction> point);

struct ProductFormulaVerdict {
  bool holds = false;
  std::vector<std::pair<Place, BigInt>> ords;  // finite support only
  double archimedean_log = 0.0;                 // log|x|_arch, or deg x at inf
};

ProductFormulaVerdict product_formula_check(const Rational& x);
ProductFormulaVerdict product_formula_check(const RationalFunction& x);

}  // namespace loxo
