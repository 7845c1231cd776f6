#include <random>

#include "doctest.h"
#include "loxo/frobenius.hpp"
#include "support.hpp"

using namespace loxo;
using loxo::testing::random_rational_function;

namespace {

RationalFunction rf(std::uint32_t p, const char* text) { return RationalFunction::parse(p, text); }

AdditivePoly random_additive(std::mt19937_64& rng, std::uint32_t p, int max_len = 3) {
  std::uniform_int_distribution<int> len(1, max_len);
  std::vector<RationalFunction> c;
  const int n = len(rng);
  for (int i = 0; i < n; ++i) c.push_back(random_rational_function(rng, p, 2, i + 1 == n));
  return AdditivePoly(p, c);
}

FrobGeneratorWord random_word(std::mt19937_64& rng, std::uint32_t p) {
  std::uniform_int_distribution<int> len(0, 4), kind(0, 2), side(0, 1);
  FrobGeneratorWord g = FrobGeneratorWord::identity(p);
  const int n = len(rng);
  for (int i = 0; i < n; ++i) {
    switch (kind(rng)) {
      case 0:
        g.gens.push_back(Diagonal(random_rational_function(rng, p, 1), random_rational_function(rng, p, 1)));
        break;
      case 1:
        g.gens.push_back(Transvection{side(rng) ? Side::Upper : Side::Lower, random_additive(rng, p, 2)});
        break;
      default:
        g.gens.push_back(Swap{});
    }
  }
  g.translation = {random_rational_function(rng, p, 2, false), random_rational_function(rng, p, 2, false)};
  return g;
}

FrobPoint random_point(std::mt19937_64& rng, std::uint32_t p) {
  return {random_rational_function(rng, p, 2, false), random_rational_function(rng, p, 2, false)};
}

// Evaluation through plain powers x^(p^i), independent of the Frobenius shortcut.
RationalFunction evaluate_by_powers(const AdditivePoly& a, const RationalFunction& x) {
  RationalFunction acc(a.characteristic());
  long e = 1;
  for (const auto& c : a.coeffs()) {
    acc = acc + c * pow(x, e);
    e *= a.characteristic();
  }
  return acc;
}

}  // namespace

TEST_CASE("additive_compose examples") {
  const auto t = RationalFunction::t(2);
  const auto F = AdditivePoly::frobenius(2);
  const auto tid = AdditivePoly::scalar(t);
  CHECK(additive_compose(F, tid) == AdditivePoly(2, {RationalFunction(2), t * t}));
  CHECK(additive_compose(tid, F) == AdditivePoly(2, {RationalFunction(2), t}));
  CHECK_FALSE(additive_compose(F, tid) == additive_compose(tid, F));
  CHECK(additive_compose(F, AdditivePoly::identity(2)) == F);
  CHECK(additive_compose(AdditivePoly::identity(2), F) == F);
  CHECK(additive_compose(F, AdditivePoly(2)).is_zero());
  CHECK_THROWS_AS(additive_compose(F, AdditivePoly::frobenius(3)), CharacteristicMismatch);
}

TEST_CASE("noncommutativity witness for every non-constant scalar") {
  std::mt19937_64 rng(4);
  for (std::uint32_t p : {2u, 3u}) {
    const auto F = AdditivePoly::frobenius(p);
    for (int i = 0; i < 30; ++i) {
      auto s = random_rational_function(rng, p, 3);
      const bool in_prime_field = s.num().degree() <= 0 && s.den().degree() <= 0;
      const auto c = AdditivePoly::scalar(s);
      CHECK((additive_compose(F, c) == additive_compose(c, F)) == in_prime_field);
    }
  }
}

TEST_CASE("evaluation matches plain powers") {
  std::mt19937_64 rng(8);
  for (std::uint32_t p : {2u, 3u}) {
    for (int i = 0; i < 40; ++i) {
      auto a = random_additive(rng, p);
      auto x = random_rational_function(rng, p, 2, false);
      CHECK(a(x) == evaluate_by_powers(a, x));
    }
  }
}

TEST_CASE("additivity and ring axioms") {
  std::mt19937_64 rng(15);
  for (std::uint32_t p : {2u, 3u}) {
    for (int i = 0; i < 100; ++i) {
      auto a = random_additive(rng, p);
      auto b = random_additive(rng, p);
      auto c = random_additive(rng, p);
      for (int k = 0; k < 5; ++k) {
        auto x = random_rational_function(rng, p, 2, false);
        auto y = random_rational_function(rng, p, 2, false);
        CHECK(a(x + y) == a(x) + a(y));
      }
      auto x = random_rational_function(rng, p, 2, false);
      CHECK(additive_compose(a, b)(x) == a(b(x)));
      CHECK(additive_compose(additive_compose(a, b), c) == additive_compose(a, additive_compose(b, c)));
      CHECK(additive_compose(a, b + c) == additive_compose(a, b) + additive_compose(a, c));
      CHECK(additive_compose(a + b, c) == additive_compose(a, c) + additive_compose(b, c));
      CHECK((a + (-a)).is_zero());
    }
  }
}

TEST_CASE("apply_frobenius_map examples") {
  const auto t = RationalFunction::t(2);
  const auto one = RationalFunction::constant(2, 1);
  FrobGeneratorWord g = FrobGeneratorWord::identity(2);
  g.gens.push_back(Transvection{Side::Upper, AdditivePoly::frobenius(2)});
  CHECK(apply_frobenius_map(g, {t, one}) == FrobPoint{rf(2, "t+1"), one});

  FrobGeneratorWord shift = FrobGeneratorWord::identity(2);
  shift.translation = {t, rf(2, "t+1")};
  CHECK(apply_frobenius_map(shift, {RationalFunction(2), RationalFunction(2)}) == FrobPoint{t, rf(2, "t+1")});

  FrobGeneratorWord sw = FrobGeneratorWord::identity(3);
  sw.gens.push_back(Swap{});
  CHECK(apply_frobenius_map(sw, {rf(3, "t"), rf(3, "2t+1")}) == FrobPoint{rf(3, "2t+1"), rf(3, "t")});

  FrobGeneratorWord low = FrobGeneratorWord::identity(3);
  low.gens.push_back(Transvection{Side::Lower, AdditivePoly::frobenius(3)});
  CHECK(apply_frobenius_map(low, {rf(3, "t"), rf(3, "1")}) == FrobPoint{rf(3, "t"), rf(3, "t^3+1")});

  // Generators act right to left, translation last.
  FrobGeneratorWord two = FrobGeneratorWord::identity(2);
  two.gens = {Diagonal(t, one), Swap{}};
  two.translation = {one, RationalFunction(2)};
  CHECK(apply_frobenius_map(two, {one, t}) == FrobPoint{t * t + one, one});

  CHECK_THROWS_AS(apply_frobenius_map(g, {rf(3, "t"), rf(3, "1")}), CharacteristicMismatch);
  CHECK_THROWS_AS(Diagonal(RationalFunction(2), one), InvariantViolation);
}

TEST_CASE("degree limit") {
  FrobGeneratorWord g = FrobGeneratorWord::identity(2);
  g.gens.push_back(Transvection{Side::Lower, AdditivePoly(2, {RationalFunction(2), RationalFunction(2),
                                                                RationalFunction(2), RationalFunction::constant(2, 1)})});
  Limits tight;
  tight.max_degree = 20;
  CHECK_THROWS_AS(apply_frobenius_map(g, {rf(2, "t^3"), rf(2, "1")}, tight), OverflowGuard);
  auto prof = frobenius_orbit_heights(g, {rf(2, "t^3"), rf(2, "1")}, 5, tight);
  CHECK(prof.truncated);
  CHECK(prof.rows.size() == 1);
}

TEST_CASE("invert_frobenius_word") {
  const auto t = RationalFunction::t(2);
  const auto one = RationalFunction::constant(2, 1);
  FrobGeneratorWord g = FrobGeneratorWord::identity(2);
  g.gens.push_back(Transvection{Side::Upper, AdditivePoly::frobenius(2)});
  auto inv = invert_frobenius_word(g);
  CHECK(inv == g);
  CHECK(apply_frobenius_map(inv, apply_frobenius_map(g, {t, one})) == FrobPoint{t, one});

  FrobGeneratorWord d = FrobGeneratorWord::identity(2);
  d.gens.push_back(Diagonal(t, rf(2, "t+1")));
  auto dinv = invert_frobenius_word(d);
  REQUIRE(dinv.gens.size() == 1);
  CHECK(std::get<Diagonal>(dinv.gens[0]) == Diagonal(rf(2, "1/t"), rf(2, "1/(t+1)")));

  FrobGeneratorWord g3 = FrobGeneratorWord::identity(3);
  g3.gens.push_back(Transvection{Side::Upper, AdditivePoly::frobenius(3)});
  CHECK(std::get<Transvection>(invert_frobenius_word(g3).gens[0]).a == -AdditivePoly::frobenius(3));
}

TEST_CASE("round trips on random words") {
  std::mt19937_64 rng(99);
  for (std::uint32_t p : {2u, 3u}) {
    for (int i = 0; i < 20; ++i) {
      auto g = random_word(rng, p);
      auto inv = invert_frobenius_word(g);
      auto z = random_point(rng, p);
      CHECK(apply_frobenius_map(inv, apply_frobenius_map(g, z)) == z);
      CHECK(apply_frobenius_map(g, apply_frobenius_map(inv, z)) == z);
      CHECK(invert_frobenius_word(inv) == g);
    }
  }
}

TEST_CASE("canonical form") {
  std::mt19937_64 rng(5);
  for (std::uint32_t p : {2u, 3u}) {
    for (int i = 0; i < 30; ++i) {
      auto f = random_word(rng, p);
      auto g = random_word(rng, p);
      auto cf = canonical_form(f);
      auto z = random_point(rng, p);
      auto w = apply_frobenius_map(f, z);
      CHECK(w[0] == cf.m[0](z[0]) + cf.m[1](z[1]) + cf.translation[0]);
      CHECK(w[1] == cf.m[2](z[0]) + cf.m[3](z[1]) + cf.translation[1]);
      CHECK(canonical_form(compose_frobenius(f, invert_frobenius_word(f))) ==
            canonical_form(FrobGeneratorWord::identity(p)));
      CHECK(apply_frobenius_map(compose_frobenius(f, g), z) == apply_frobenius_map(f, apply_frobenius_map(g, z)));
      CHECK(canonical_form(power_frobenius(f, 2)) == canonical_form(compose_frobenius(f, f)));
    }
  }
  // Swap o Swap and the empty word agree canonically but not as words.
  FrobGeneratorWord ss = FrobGeneratorWord::identity(2);
  ss.gens = {Swap{}, Swap{}};
  CHECK_FALSE(ss == FrobGeneratorWord::identity(2));
  CHECK(canonical_form(ss) == canonical_form(FrobGeneratorWord::identity(2)));
}

TEST_CASE("frobenius_orbit_heights") {
  FrobGeneratorWord g = FrobGeneratorWord::identity(2);
  g.gens.push_back(Transvection{Side::Upper, AdditivePoly::frobenius(2)});
  auto prof = frobenius_orbit_heights(g, {RationalFunction(2), RationalFunction::t(2)}, 3);
  REQUIRE(prof.rows.size() == 4);
  CHECK(prof.rows[1].point == FrobPoint{rf(2, "t^2"), rf(2, "t")});
  CHECK(prof.rows[2].point == prof.rows[0].point);
  const double expect[] = {1, 2, 1, 2};
  for (int n = 0; n < 4; ++n) CHECK(prof.rows[n].height.value == expect[n]);

  FrobGeneratorWord shift = FrobGeneratorWord::identity(2);
  shift.translation = {RationalFunction::t(2), RationalFunction(2)};
  auto tr = frobenius_orbit_heights(shift, {RationalFunction(2), RationalFunction(2)}, 3);
  const double expect2[] = {0, 1, 0, 1};
  for (int n = 0; n < 4; ++n) CHECK(tr.rows[n].height.value == expect2[n]);
  CHECK(tr.rows[2].point == tr.rows[0].point);

  auto id = frobenius_orbit_heights(FrobGeneratorWord::identity(3), {rf(3, "t^2/(t+1)"), rf(3, "2")}, 4);
  for (const auto& row : id.rows) CHECK(row.height.value == 2);

  CHECK_THROWS_AS(frobenius_orbit_heights(g, {RationalFunction(2), RationalFunction(2)}, 0), InvariantViolation);
}
