#include <cmath>
#include <random>

#include "doctest.h"
#include "loxo/orbit.hpp"
#include "support.hpp"

using namespace loxo;
using namespace loxo::testing;

namespace {

using Map = PseudoMonomialMap<Rational>;
using Pt = TorusPoint<Rational>;

Map map(long a, long b, long c, long d, Rational x, Rational y) { return {GLZ2Matrix(a, b, c, d), Pt(x, y)}; }

TorusSystem<Rational> system_for(const Map& f, const Pt& p) { return {TorusSystem<Rational>::basis({&f}, {&p}), f}; }

PlaneAutomorphism henon_y2() { return {{HenonFactor(UPoly({0, 0, 1}), 1)}}; }

double rel_err(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return (a - b).cwiseAbs().maxCoeff() / std::max(1.0, b.cwiseAbs().maxCoeff());
}

}  // namespace

TEST_CASE("iterate_orbit on the torus") {
  Map f = map(0, -1, 1, 0, 1, 1);
  Pt p(2, 3);
  auto sys = system_for(f, p);
  auto seg = iterate_orbit(sys, sys.lift(p), 0, 4);
  REQUIRE(seg.records.size() == 5);
  const std::vector<Pt> expect{Pt(2, 3), Pt(Rational(1, 3), 2), Pt(Rational(1, 2), Rational(1, 3)),
                               Pt(3, Rational(1, 2)), Pt(2, 3)};
  for (std::size_t n = 0; n < 5; ++n) {
    CHECK(seg.records[n].n == static_cast<long>(n));
    CHECK(sys.torus().materialize(seg.records[n].point) == expect[n]);
  }
  CHECK(sys.show(seg.records[1].point, {}) == "1/3,2");

  auto single = iterate_orbit(sys, sys.lift(p), 0, 0);
  REQUIRE(single.records.size() == 1);
  CHECK(single.records[0].point == sys.lift(p));

  auto both = iterate_orbit(sys, sys.lift(p), -4, 2);
  REQUIRE(both.records.size() == 7);
  CHECK(both.records.front().n == -4);
  CHECK(both.records[0].point == sys.lift(p));
  CHECK(sys.torus().materialize(both.records[3].point) == expect[3]);  // f^-1 = f^3
  CHECK(sys.torus().materialize(both.records[6].point) == expect[2]);

  auto neg = iterate_orbit(sys, sys.lift(p), -3, -1);
  REQUIRE(neg.records.size() == 3);
  CHECK(neg.records.back().n == -1);
  CHECK(sys.forward(neg.records.back().point) == sys.lift(p));
  CHECK_THROWS_AS(iterate_orbit(sys, sys.lift(p), 2, 1), InvariantViolation);
}

TEST_CASE("iterate_orbit on the plane") {
  PlaneSystem sys(henon_y2());
  auto seg = iterate_orbit(sys, PlanePoint{1, 0}, 0, 3);
  REQUIRE(seg.records.size() == 4);
  CHECK(seg.records[1].point == PlanePoint{0, -1});
  CHECK(seg.records[2].point == PlanePoint{-1, 1});
  CHECK(seg.records[3].point == PlanePoint{1, 2});
  CHECK(seg.records[3].height.value == doctest::Approx(std::log(2.0)));

  auto back = iterate_orbit(sys, PlanePoint{1, 2}, -3, 0);
  CHECK(back.records.front().point == PlanePoint{1, 0});

  Limits tight;
  tight.max_digits = 30;
  auto cut = iterate_orbit(PlaneSystem(henon_y2(), tight), PlanePoint{1, 0}, 0, 50);
  CHECK(cut.truncated);
  CHECK(cut.records.size() > 8);
  CHECK(cut.records.size() < 51);
}

TEST_CASE("detect_periodicity") {
  Map f = map(0, -1, 1, 0, 1, 1);
  Pt p(2, 3);
  auto sys = system_for(f, p);
  auto v = detect_periodicity(sys, sys.lift(p), 20);
  REQUIRE(std::holds_alternative<Periodic>(v));
  CHECK(std::get<Periodic>(v).preperiod == 0);
  CHECK(std::get<Periodic>(v).period == 4);

  PlaneSystem h(henon_y2());
  auto fixed = detect_periodicity(h, PlanePoint{0, 0}, 5);
  REQUIRE(std::holds_alternative<Periodic>(fixed));
  CHECK(std::get<Periodic>(fixed).period == 1);

  auto grow = detect_periodicity(h, PlanePoint{1, 0}, 20);
  REQUIRE(std::holds_alternative<NoCycleInWindow>(grow));
  const auto& miss = std::get<NoCycleInWindow>(grow);
  CHECK(miss.steps_examined == 20);
  CHECK(miss.growth_onset == 3);
  CHECK_FALSE(miss.truncated);

  auto capped = detect_periodicity(h, PlanePoint{1, 0}, 20, 10.0);
  CHECK(std::get<NoCycleInWindow>(capped).stopped_at_height_bound);

  FrobGeneratorWord g = FrobGeneratorWord::identity(2);
  g.gens.push_back(Transvection{Side::Upper, AdditivePoly::frobenius(2)});
  auto two = detect_periodicity(FrobSystem(g), FrobPoint{RationalFunction(2), RationalFunction::t(2)}, 10);
  REQUIRE(std::holds_alternative<Periodic>(two));
  CHECK(std::get<Periodic>(two).period == 2);

  CHECK_THROWS_AS(detect_periodicity(h, PlanePoint{0, 0}, 0), InvariantViolation);
}

TEST_CASE("log_orbit examples") {
  Map f = map(2, 1, 1, 1, 2, 1);
  auto lo = log_orbit(f, Pt(1, 1), Place::archimedean(), 2);
  const double l2 = std::log(2.0);
  CHECK(lo.u[0].isZero());
  CHECK(rel_err(lo.u[1], Eigen::Vector2d(l2, 0)) < 1e-12);
  CHECK(rel_err(lo.u[2], Eigen::Vector2d(3 * l2, l2)) < 1e-12);
  CHECK(lo.ords.empty());

  auto flat = log_orbit(map(2, 1, 1, 1, 1, 1), Pt(1, 1), Place::archimedean(), 10);
  for (const auto& u : flat.u) CHECK(u.isZero());

  auto three = log_orbit(f, Pt(1, 1), Place::prime(BigInt(3)), 10);
  for (const auto& o : three.ords) CHECK((o[0] == 0 && o[1] == 0));

  auto two = log_orbit(f, Pt(1, 1), Place::prime(BigInt(2)), 2);
  // (8, 2): ords (3, 1), so u = -(3, 1) log 2.
  CHECK(two.ords[2][0] == 3);
  CHECK(two.ords[2][1] == 1);
  CHECK(two.u[2][0] == doctest::Approx(-3 * l2));
}

TEST_CASE("asymptotic_decomposition examples") {
  Map f = map(2, 1, 1, 1, 2, 1);
  auto dec = asymptotic_decomposition(f, Pt(1, 1), Place::archimedean());
  CHECK(dec.w0[0] == doctest::Approx(0.0));
  CHECK(dec.w0[1] == doctest::Approx(-std::log(2.0)));
  CHECK(dec.lambda == doctest::Approx((3 + std::sqrt(5.0)) / 2));
  CHECK(std::fabs(dec.a_plus) > 1e-3);
  CHECK_FALSE(dec.bounded());

  auto flat = asymptotic_decomposition(map(2, 1, 1, 1, 1, 1), Pt(1, 1), Place::archimedean());
  CHECK(flat.w0.isZero());
  CHECK(flat.bounded());

  auto two = asymptotic_decomposition(f, Pt(1, 1), Place::prime(BigInt(2)));
  REQUIRE(two.w0_exact);
  CHECK((*two.w0_exact)[0] == 0);
  CHECK((*two.w0_exact)[1] == 1);  // log|b|_2 = (-1, 0) in units of log 2
  CHECK_FALSE(two.bounded());
  CHECK(two.w0[1] == doctest::Approx(dec.w0[1] * -1));

  CHECK_THROWS_AS(asymptotic_decomposition(map(1, 1, 0, 1, 2, 1), Pt(1, 1), Place::archimedean()), NotLoxodromic);
}

TEST_CASE("find_unbounded_place examples") {
  auto hit = find_unbounded_place(map(2, 1, 1, 1, 2, 1), Pt(1, 1));
  REQUIRE(hit);
  CHECK(hit->place.is_archimedean());
  CHECK(hit->a_plus != 0);

  CHECK_FALSE(find_unbounded_place(map(2, 1, 1, 1, 1, 1), Pt(1, 1)));

  Map g = map(2, 1, 1, 1, 3, 1);
  auto first = find_unbounded_place(g, Pt(1, 1));
  REQUIRE(first);
  CHECK(first->place.is_archimedean());
  CHECK_FALSE(asymptotic_decomposition(g, Pt(1, 1), Place::prime(BigInt(3))).bounded());
  auto lo = log_orbit(g, Pt(1, 1), Place::prime(BigInt(3)), 1);
  CHECK(lo.ords[1][0] == 1);
  CHECK(lo.u[1][0] == doctest::Approx(-std::log(3.0)));

  CHECK_THROWS_AS(find_unbounded_place(map(0, -1, 1, 0, 1, 1), Pt(2, 3)), NotLoxodromic);
}

TEST_CASE("recursion matches the exact orbit") {
  std::mt19937_64 rng(10);
  for (int i = 0; i < 50; ++i) {
    auto f = random_torus_map(rng, 2, 40, true);
    auto p = random_torus_point(rng, 40);
    const std::vector<Rational> inputs{f.translation().x, f.translation().y, p.x, p.y};
    for (const auto& v : relevant_places(std::span<const Rational>(inputs))) {
      auto rec = log_orbit(f, p, v, 30);
      auto ex = exact_log_orbit(f, p, v, 30);
      auto dec = asymptotic_decomposition(f, p, v);
      for (long n = 0; n <= 30; ++n) {
        const auto& a = rec.u[static_cast<std::size_t>(n)];
        const auto& b = ex.u[static_cast<std::size_t>(n)];
        if (v.is_archimedean()) {
          CHECK(rel_err(a, b) <= 1e-9);
        } else {
          CHECK(rec.ords[static_cast<std::size_t>(n)] == ex.ords[static_cast<std::size_t>(n)]);
        }
        CHECK(rel_err(dec.reconstruct(n), a) <= 1e-6);
      }
    }
  }
}

TEST_CASE("recursion matches the exact orbit over function fields") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 30; ++i) {
    const std::uint32_t p = i % 2 ? 3 : 2;
    PseudoMonomialMap<RationalFunction> f(random_glz2(rng, 2, true),
                                          TorusPoint<RationalFunction>(random_rational_function(rng, p, 2),
                                                                       random_rational_function(rng, p, 2)));
    TorusPoint<RationalFunction> pt(random_rational_function(rng, p, 2), random_rational_function(rng, p, 2));
    const std::vector<RationalFunction> inputs{f.translation().x, f.translation().y, pt.x, pt.y};
    for (const auto& v : relevant_places(std::span<const RationalFunction>(inputs))) {
      auto rec = log_orbit(f, pt, v, 25);
      auto ex = exact_log_orbit(f, pt, v, 25);
      CHECK(rec.ords == ex.ords);
      auto dec = asymptotic_decomposition(f, pt, v);
      REQUIRE(dec.a_plus_exact);
      for (long n = 0; n <= 25; ++n) CHECK(rel_err(dec.reconstruct(n), rec.u[static_cast<std::size_t>(n)]) <= 1e-6);
    }
  }
}

TEST_CASE("bounded everywhere implies a cycle") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> coin(0, 1);
  int periodic = 0;
  for (int i = 0; i < 60; ++i) {
    // b = p / M(p) fixes p; sign changes keep every place bounded.
    auto m = random_glz2(rng, 3, true);
    auto p = random_torus_point(rng, 20);
    auto mp = monomial_apply(m, p);
    Map f(m, Pt(p.x / mp.x, p.y / mp.y));
    Pt start(coin(rng) ? p.x : -p.x, coin(rng) ? p.y : -p.y);
    CHECK_FALSE(find_unbounded_place(f, start));
    auto sys = system_for(f, start);
    auto verdict = detect_periodicity(sys, sys.lift(start), 512);
    REQUIRE(std::holds_alternative<Periodic>(verdict));
    periodic += std::get<Periodic>(verdict).period > 1;
  }
  CHECK(periodic > 5);
}

TEST_CASE("unbounded torus heights grow by lambda") {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 20; ++i) {
    auto f = random_torus_map(rng, 2, 30, true);
    auto p = random_torus_point(rng, 30);
    if (!find_unbounded_place(f, p)) continue;
    auto sys = system_for(f, p);
    auto seg = iterate_orbit(sys, sys.lift(p), 0, 25);
    const double lambda = dynamical_degree(f).value;
    for (long n = 15; n <= 25; ++n) {
      const double ratio = seg.records[n].height.value / seg.records[n - 1].height.value;
      CHECK(ratio == doctest::Approx(lambda).epsilon(0.05));
    }
  }
}
