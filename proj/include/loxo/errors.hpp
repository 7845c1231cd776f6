#pragma once

#include <stdexcept>
#include <string>

namespace loxo {

/// Every library failure derives from Error; `kind()` gives a stable name used
/// in CLI diagnostics and tests.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define LOXO_DEFINE_ERROR(Name)                                        \
  class Name : public Error {                                          \
   public:                                                             \
    explicit Name(const std::string& what) : Error(#Name, what) {}     \
  };

LOXO_DEFINE_ERROR(ZeroInput)
LOXO_DEFINE_ERROR(ZeroPolynomial)
LOXO_DEFINE_ERROR(NotLoxodromic)
LOXO_DEFINE_ERROR(ConeExit)
LOXO_DEFINE_ERROR(NotReduced)
LOXO_DEFINE_ERROR(CharacteristicMismatch)
LOXO_DEFINE_ERROR(IncompatibleDegrees)
LOXO_DEFINE_ERROR(VanishingLeadingCoefficient)
LOXO_DEFINE_ERROR(PeriodicBasePoint)
LOXO_DEFINE_ERROR(ParseError)
LOXO_DEFINE_ERROR(InvariantViolation)

#undef LOXO_DEFINE_ERROR

/// Raised when an exact quantity outgrows the configured resource budget.
/// Operations that can return partial output catch it and set a truncation flag.
class OverflowGuard : public Error {
 public:
  explicit OverflowGuard(const std::string& what) : Error("OverflowGuard", what) {}
};

/// Resource budgets shared by every exact engine.
struct Limits {
  std::size_t max_digits = 200000;   // decimal digits per rational coordinate
  std::size_t max_degree = 10000;    // degree of num/den of a rational function
  std::size_t max_window = 4000000;  // |fRange| * |gRange| for intersection scans
  std::size_t max_terms = 200000;    // bivariate terms when expanding plane maps
};

}  // namespace loxo
