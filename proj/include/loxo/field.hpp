#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "loxo/errors.hpp"
#include "loxo/integer.hpp"
#include "loxo/rational_function.hpp"

namespace loxo {

// Uniform free-function surface over the two base fields, Q and F_p(t).
// Templates in the torus, valuation and orbit layers only use these.

/// Characteristic tag: 0 for Q, p for F_p(t).
struct FieldContext {
  std::uint32_t p = 0;
  bool is_function_field() const { return p != 0; }
};

inline FieldContext context_of(const Rational&) { return {}; }
inline FieldContext context_of(const RationalFunction& x) { return {x.characteristic()}; }

inline bool is_zero(const Rational& x) { return x == 0; }
inline bool is_zero(const RationalFunction& x) { return x.is_zero(); }

inline Rational one_like(const Rational&) { return Rational(1); }
inline RationalFunction one_like(const RationalFunction& x) { return RationalFunction::constant(x.characteristic(), 1); }

inline Rational inverse(const Rational& x) {
  if (x == 0) throw ZeroInput("inverse of 0");
  return Rational(1) / x;
}
inline RationalFunction inverse(const RationalFunction& x) { return x.inverse(); }

inline std::string to_string(const RationalFunction& x) { return x.to_string(); }

/// Size measure checked against Limits: decimal digits over Q, degree over F_p(t).
inline void check_size(const Rational& x, const Limits& limits) {
  if (decimal_digits(x) > limits.max_digits)
    throw OverflowGuard("coordinate exceeds " + std::to_string(limits.max_digits) + " digits");
}
inline void check_size(const RationalFunction& x, const Limits& limits) {
  if (static_cast<std::size_t>(std::max(x.num().degree(), x.den().degree())) > limits.max_degree)
    throw OverflowGuard("coordinate exceeds degree " + std::to_string(limits.max_degree));
}

template <class F>
F parse_element(const FieldContext& ctx, std::string_view text);

template <>
inline Rational parse_element<Rational>(const FieldContext&, std::string_view text) {
  return parse_rational(text);
}
template <>
inline RationalFunction parse_element<RationalFunction>(const FieldContext& ctx, std::string_view text) {
  if (!ctx.is_function_field()) throw ParseError("function-field element needs a characteristic");
  return RationalFunction::parse(ctx.p, text);
}

}  // namespace loxo
