#pragma once

#include <memory>
#include <string>

#include "loxo/factored.hpp"
#include "loxo/frobenius.hpp"
#include "loxo/henon.hpp"

namespace loxo {

// A system bundles an invertible map with the point representation its orbits use.
// Every system offers: Point, forward, backward, key, height, show, power.

/// Pseudo-monomial map acting on factored points over a shared prime basis.
template <class F>
class TorusSystem {
 public:
  using Point = FactoredPoint;

  TorusSystem(std::shared_ptr<const FactoredTorus<F>> torus, const PseudoMonomialMap<F>& f)
      : torus_(std::move(torus)), f_(torus_->factor(f)), inv_(torus_->inverse(f_)) {}

  /// Basis spanning the translations of `maps` and the coordinates of `points`.
  static std::shared_ptr<const FactoredTorus<F>> basis(std::initializer_list<const PseudoMonomialMap<F>*> maps,
                                                       std::initializer_list<const TorusPoint<F>*> points,
                                                       std::span<const F> extra = {}) {
    std::vector<F> xs(extra.begin(), extra.end());
    FieldContext ctx;
    for (const auto* f : maps) {
      xs.push_back(f->translation().x);
      xs.push_back(f->translation().y);
      ctx = f->context();
    }
    for (const auto* p : points) {
      xs.push_back(p->x);
      xs.push_back(p->y);
      ctx = context_of(p->x);
    }
    return std::make_shared<const FactoredTorus<F>>(FactoredTorus<F>::spanning(ctx, xs));
  }

  Point lift(const TorusPoint<F>& p) const { return torus_->factor(p); }
  Point forward(const Point& p) const { return torus_->apply(f_, p); }
  Point backward(const Point& p) const { return torus_->apply(inv_, p); }
  std::string key(const Point& p) const { return torus_->key(p); }
  Height height(const Point& p) const { return torus_->height(p); }
  /// Materialized coordinates when they fit the limits, the factored form otherwise.
  std::string show(const Point& p, const Limits& limits) const {
    try {
      return torus_->materialize(p, limits).to_string();
    } catch (const OverflowGuard&) {
      return torus_->to_string(p);
    }
  }
  TorusSystem power(long n) const { return TorusSystem(torus_, torus_->power(f_, n)); }

  const FactoredTorus<F>& torus() const { return *torus_; }
  std::shared_ptr<const FactoredTorus<F>> torus_ptr() const { return torus_; }
  const FactoredMap& map() const { return f_; }
  PseudoMonomialMap<F> materialized_map(const Limits& limits = {}) const { return torus_->materialize(f_, limits); }

 private:
  TorusSystem(std::shared_ptr<const FactoredTorus<F>> torus, FactoredMap f)
      : torus_(std::move(torus)), f_(std::move(f)), inv_(torus_->inverse(f_)) {}

  std::shared_ptr<const FactoredTorus<F>> torus_;
  FactoredMap f_, inv_;
};

class PlaneSystem {
 public:
  using Point = PlanePoint;

  explicit PlaneSystem(PlaneAutomorphism f, Limits limits = {})
      : f_(std::move(f)), inv_(inverse_plane(f_)), limits_(limits) {}

  Point forward(const Point& p) const { return apply_plane(f_, p, limits_); }
  Point backward(const Point& p) const { return apply_plane(inv_, p, limits_); }
  std::string key(const Point& p) const { return p[0].get_str() + "," + p[1].get_str(); }
  Height height(const Point& p) const { return weil_height(std::span<const Rational>(p)); }
  std::string show(const Point& p, const Limits&) const { return key(p); }
  PlaneSystem power(long n) const { return PlaneSystem(power_plane(f_, n), limits_); }
  const PlaneAutomorphism& map() const { return f_; }

 private:
  PlaneAutomorphism f_, inv_;
  Limits limits_;
};

class FrobSystem {
 public:
  using Point = FrobPoint;

  explicit FrobSystem(FrobGeneratorWord g, Limits limits = {})
      : g_(std::move(g)), inv_(invert_frobenius_word(g_)), limits_(limits) {}

  Point forward(const Point& p) const { return apply_frobenius_map(g_, p, limits_); }
  Point backward(const Point& p) const { return apply_frobenius_map(inv_, p, limits_); }
  std::string key(const Point& p) const { return p[0].to_string() + "," + p[1].to_string(); }
  Height height(const Point& p) const { return weil_height(std::span<const RationalFunction>(p)); }
  std::string show(const Point& p, const Limits&) const { return key(p); }
  FrobSystem power(long n) const { return FrobSystem(power_frobenius(g_, n), limits_); }
  const FrobGeneratorWord& map() const { return g_; }

 private:
  FrobGeneratorWord g_, inv_;
  Limits limits_;
};

}  // namespace loxo
