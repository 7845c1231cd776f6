#pragma once

#include <array>
#include <variant>
#include <vector>

#include "loxo/field.hpp"
#include "loxo/places.hpp"

namespace loxo {

/// a(x) = sum_i c_i x^(p^i) over F_p(t). Coefficients trimmed; empty means zero.
class AdditivePoly {
 public:
  explicit AdditivePoly(std::uint32_t p) : p_(p) {}
  AdditivePoly(std::uint32_t p, std::vector<RationalFunction> coeffs);

  static AdditivePoly identity(std::uint32_t p) { return scalar(RationalFunction::constant(p, 1)); }
  static AdditivePoly scalar(const RationalFunction& c);
  /// x -> x^p.
  static AdditivePoly frobenius(std::uint32_t p);

  std::uint32_t characteristic() const { return p_; }
  const std::vector<RationalFunction>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  /// Largest i with c_i != 0, -1 for zero.
  long length() const { return static_cast<long>(c_.size()) - 1; }

  RationalFunction operator()(const RationalFunction& x) const;
  AdditivePoly operator-() const;
  friend AdditivePoly operator+(const AdditivePoly& a, const AdditivePoly& b);
  friend bool operator==(const AdditivePoly& a, const AdditivePoly& b) { return a.p_ == b.p_ && a.c_ == b.c_; }

 private:
  std::uint32_t p_;
  std::vector<RationalFunction> c_;
};

/// a o b; c_i x^(p^i) composed with b_j x^(p^j) contributes c_i b_j^(p^i) x^(p^(i+j)).
AdditivePoly additive_compose(const AdditivePoly& a, const AdditivePoly& b);

using FrobPoint = std::array<RationalFunction, 2>;

struct Diagonal {
  RationalFunction u, v;
  Diagonal(RationalFunction u_, RationalFunction v_);
  friend bool operator==(const Diagonal&, const Diagonal&) = default;
};

enum class Side { Upper, Lower };

/// Upper: (x, y) -> (x + a(y), y). Lower: (x, y) -> (x, y + a(x)).
struct Transvection {
  Side side;
  AdditivePoly a;
  friend bool operator==(const Transvection&, const Transvection&) = default;
};

struct Swap {
  friend bool operator==(const Swap&, const Swap&) = default;
};

using FrobGenerator = std::variant<Diagonal, Transvection, Swap>;

/// z -> gens[0] o ... o gens[k-1] (z) + translation.
struct FrobGeneratorWord {
  std::uint32_t p = 2;
  std::vector<FrobGenerator> gens;
  FrobPoint translation{RationalFunction(2), RationalFunction(2)};

  static FrobGeneratorWord identity(std::uint32_t p);
  friend bool operator==(const FrobGeneratorWord&, const FrobGeneratorWord&) = default;
};

FrobPoint apply_frobenius_map(const FrobGeneratorWord& g, const FrobPoint& z, const Limits& limits = {});
FrobGeneratorWord invert_frobenius_word(const FrobGeneratorWord& g);
/// f o g.
FrobGeneratorWord compose_frobenius(const FrobGeneratorWord& f, const FrobGeneratorWord& g);
FrobGeneratorWord power_frobenius(const FrobGeneratorWord& f, long n);

struct FrobHeightRow {
  long n = 0;
  FrobPoint point;
  Height height;
};

struct FrobHeightProfile {
  std::vector<FrobHeightRow> rows;
  bool truncated = false;
};

FrobHeightProfile frobenius_orbit_heights(const FrobGeneratorWord& g, const FrobPoint& z, long n_max,
                                          const Limits& limits = {});

/// Linear part as a matrix over the twisted algebra plus the translation; equal maps
/// have equal canonical forms.
struct FrobCanonical {
  std::array<AdditivePoly, 4> m;  // row-major: (m0(x) + m1(y), m2(x) + m3(y))
  FrobPoint translation;
  friend bool operator==(const FrobCanonical&, const FrobCanonical&) = default;
};

/// OverflowGuard when a coefficient degree exceeds limits.max_degree.
FrobCanonical canonical_form(const FrobGeneratorWord& g, const Limits& limits = {});

}  // namespace loxo
