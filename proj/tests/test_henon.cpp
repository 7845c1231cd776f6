#include <cmath>
#include <random>

#include "doctest.h"
#include "loxo/henon.hpp"
#include "support.hpp"

using namespace loxo;
using loxo::testing::random_rational;

namespace {

PlaneAutomorphism henon(std::vector<Rational> poly, Rational delta) {
  return {{HenonFactor(UPoly(std::move(poly)), delta)}};
}

PlaneAutomorphism affine(Rational a, Rational b, Rational c, Rational d, Rational t1, Rational t2) {
  return {{AffineFactor(Matrix2<Rational>{a, b, c, d}, {t1, t2})}};
}

PlaneAutomorphism word(std::initializer_list<PlaneAutomorphism> parts) {
  PlaneAutomorphism out;
  for (const auto& p : parts) out.word.insert(out.word.end(), p.word.begin(), p.word.end());
  return out;
}

PlaneFactor random_factor(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kind(0, 1);
  if (kind(rng) == 0) {
    std::uniform_int_distribution<int> deg(2, 3);
    std::vector<Rational> c;
    const int d = deg(rng);
    for (int i = 0; i < d; ++i) c.push_back(random_rational(rng, 3, false));
    c.push_back(random_rational(rng, 3));
    return HenonFactor(UPoly(c), random_rational(rng, 3));
  }
  while (true) {
    Matrix2<Rational> m{random_rational(rng, 2, false), random_rational(rng, 2, false), random_rational(rng, 2, false),
                        random_rational(rng, 2, false)};
    if (m.det() != 0) return AffineFactor(m, {random_rational(rng, 3, false), random_rational(rng, 3, false)});
  }
}

PlaneAutomorphism random_word(std::mt19937_64& rng, int max_len) {
  std::uniform_int_distribution<int> len(1, max_len);
  PlaneAutomorphism f;
  const int n = len(rng);
  for (int i = 0; i < n; ++i) f.word.push_back(random_factor(rng));
  return f;
}

PlanePoint random_point(std::mt19937_64& rng) { return {random_rational(rng, 5, false), random_rational(rng, 5, false)}; }

std::string describe(const PlaneAutomorphism& f) {
  std::string out;
  for (const auto& fac : f.word) {
    if (const auto* h = std::get_if<HenonFactor>(&fac)) {
      out += "H[";
      for (const auto& c : h->poly.coeffs()) out += c.get_str() + " ";
      out += "; " + h->delta.get_str() + "] ";
    } else {
      const auto& a = std::get<AffineFactor>(fac);
      out += "A[" + a.matrix.a.get_str() + " " + a.matrix.b.get_str() + " " + a.matrix.c.get_str() + " " +
             a.matrix.d.get_str() + "; " + a.translation[0].get_str() + " " + a.translation[1].get_str() + "] ";
    }
  }
  return out;
}

}  // namespace

TEST_CASE("apply_plane") {
  auto h = henon({0, 0, 1}, 1);
  CHECK(apply_plane(h, {1, 0}) == PlanePoint{0, -1});
  CHECK(apply_plane(PlaneAutomorphism::identity(), {3, 4}) == PlanePoint{3, 4});
  CHECK(apply_plane(h, {0, 0}) == PlanePoint{0, 0});

  const std::vector<PlanePoint> orbit = {{1, 0}, {0, -1}, {-1, 1}, {1, 2}, {2, 3}, {3, 7}, {7, 46}, {46, 2109}};
  PlanePoint p = orbit[0];
  for (std::size_t n = 1; n < orbit.size(); ++n) {
    p = apply_plane(h, p);
    CHECK(p == orbit[n]);
  }
}

TEST_CASE("apply order is right to left") {
  auto f = word({affine(1, 0, 0, 1, 10, 0), henon({0, 0, 1}, 1)});
  CHECK(apply_plane(f, {1, 0}) == PlanePoint{10, -1});
}

TEST_CASE("digit limit") {
  Limits tight;
  tight.max_digits = 10;
  CHECK_THROWS_AS(apply_plane(henon({0, 0, 1}, 1), {1, 123456}, tight), OverflowGuard);
}

TEST_CASE("factor invariants") {
  CHECK_THROWS_AS(HenonFactor(UPoly({0, 1}), 1), InvariantViolation);
  CHECK_THROWS_AS(HenonFactor(UPoly({0, 0, 1}), 0), InvariantViolation);
  CHECK_THROWS_AS(AffineFactor(Matrix2<Rational>{1, 2, 2, 4}, {0, 0}), InvariantViolation);
}

TEST_CASE("inverse_plane") {
  auto h = henon({0, 0, 1}, 1);
  CHECK(apply_plane(inverse_plane(h), {0, -1}) == PlanePoint{1, 0});
  CHECK(inverse_plane(PlaneAutomorphism::identity()) == PlaneAutomorphism::identity());
  auto g = henon({1, Rational(1, 2), 3}, Rational(-2, 3));
  CHECK(inverse_plane(inverse_plane(g)) == g);

  std::mt19937_64 rng(11);
  for (int i = 0; i < 10; ++i) {
    auto f = random_word(rng, 3);
    auto ff = inverse_plane(inverse_plane(f));
    auto p = random_point(rng);
    CHECK(apply_plane(ff, p) == apply_plane(f, p));
  }
}

TEST_CASE("inverse law on random words") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 100; ++i) {
    auto f = random_word(rng, 3);
    auto p = random_point(rng);
    CHECK(apply_plane(inverse_plane(f), apply_plane(f, p)) == p);
    CHECK(apply_plane(f, apply_plane(inverse_plane(f), p)) == p);
  }
}

TEST_CASE("normalize preserves the map") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    auto f = random_word(rng, 4);
    if (i % 3 == 0) {
      // Force a swap between two Henon factors so absorption fires.
      f = word({henon({1, 0, 2}, 3), f, affine(0, 1, 1, 0, 0, 0), henon({0, -1, 1}, -1)});
    }
    auto g = normalize(f);
    for (int k = 0; k < 3; ++k) {
      auto p = random_point(rng);
      CHECK(apply_plane(g, p) == apply_plane(f, p));
    }
  }
}

TEST_CASE("plane_dynamical_degree") {
  auto h2 = henon({0, 0, 1}, 1);
  auto h3 = henon({0, 0, 0, 1}, 1);
  CHECK(plane_dynamical_degree(h2) == 2);
  CHECK(plane_dynamical_degree(affine(2, 1, 1, 1, 3, 4)) == 1);
  CHECK(plane_dynamical_degree(PlaneAutomorphism::identity()) == 1);
  CHECK(plane_dynamical_degree(word({h2, h3})) == 6);
  CHECK(plane_dynamical_degree(inverse_plane(h2)) == 2);

  // H o swap o H is the swap (x, y) -> (y, x).
  auto collapsed = word({h2, affine(0, 1, 1, 0, 0, 0), h2});
  CHECK(plane_dynamical_degree(collapsed) == 1);
  CHECK(apply_plane(collapsed, {3, 5}) == PlanePoint{5, 3});

  // The swap at the cyclic join only shows up in f o f.
  auto cyclic = word({affine(0, 1, 1, 0, 0, 0), h2, h3});
  CHECK(plane_dynamical_degree(cyclic) == plane_dynamical_degree(word({h3, affine(0, 1, 1, 0, 0, 0), h2})));
}

TEST_CASE("dynamical degree is a conjugacy invariant and multiplicative in powers") {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 60; ++i) {
    auto f = random_word(rng, 3);
    INFO(describe(f));
    const long lambda = plane_dynamical_degree(f);
    auto a = PlaneAutomorphism{{random_factor(rng)}};
    auto conj = word({a, f, inverse_plane(a)});
    INFO(describe(a));
    CHECK(plane_dynamical_degree(conj) == lambda);
    CHECK(plane_dynamical_degree(inverse_plane(f)) == lambda);
    CHECK(plane_dynamical_degree(power_plane(f, 2)) == lambda * lambda);
  }
}

TEST_CASE("height_growth_profile") {
  auto h = henon({0, 0, 1}, 1);
  auto prof = height_growth_profile(h, {1, 0}, 8);
  REQUIRE(prof.rows.size() == 9);
  const std::vector<double> expect = {0, 0, 0, std::log(2.0), std::log(3.0), std::log(7.0), std::log(46.0),
                                      std::log(2109.0)};
  for (std::size_t n = 0; n < expect.size(); ++n) CHECK(prof.rows[n].height.value == doctest::Approx(expect[n]));
  CHECK_FALSE(prof.rows[1].ratio.has_value());
  CHECK(prof.rows[2].within_initial_bound);
  CHECK_FALSE(prof.rows[3].within_initial_bound);
  CHECK_FALSE(prof.truncated);

  auto id = height_growth_profile(PlaneAutomorphism::identity(), {Rational(2, 3), 5}, 5);
  for (const auto& row : id.rows) {
    CHECK(row.height.value == doctest::Approx(std::log(15.0)));
    if (row.n > 0) CHECK(*row.ratio == doctest::Approx(1.0));
  }

  auto fixed = height_growth_profile(h, {0, 0}, 8);
  for (const auto& row : fixed.rows) CHECK(row.height.value == 0);

  CHECK_THROWS_AS(height_growth_profile(h, {1, 0}, 1), InvariantViolation);
}

TEST_CASE("height ratios approach the dynamical degree") {
  auto h = henon({0, 0, 1}, 1);
  auto prof = height_growth_profile(h, {1, 0}, 14);
  REQUIRE(prof.rows.size() == 15);
  for (long n = 10; n <= 14; ++n) {
    CHECK(*prof.rows[n].ratio >= 1.8);
    CHECK(*prof.rows[n].ratio <= 2.2);
  }
  auto six = height_growth_profile(word({h, henon({0, 0, 0, 1}, 1)}), {1, 1}, 4);
  REQUIRE(six.rows.size() == 5);
  CHECK(*six.rows[4].ratio == doctest::Approx(6.0).epsilon(0.05));
}

TEST_CASE("truncated profile") {
  Limits tight;
  tight.max_digits = 50;
  auto prof = height_growth_profile(henon({0, 0, 1}, 1), {1, 0}, 40, tight);
  CHECK(prof.truncated);
  CHECK(prof.rows.size() > 8);
  CHECK(prof.rows.size() < 41);
}

TEST_CASE("expand") {
  auto h = henon({0, 0, 1}, 1);
  auto e = expand(h);
  CHECK(e.x == BiPoly::y());
  CHECK(e.y == BiPoly::y().times(BiPoly::y(), {}) + Rational(-1) * BiPoly::x());

  std::mt19937_64 rng(9);
  for (int i = 0; i < 30; ++i) {
    auto f = random_word(rng, 3);
    auto poly = expand(f);
    auto p = random_point(rng);
    auto evaluate = [&](const BiPoly& q) {
      Rational acc = 0;
      for (const auto& [ex, c] : q.terms()) acc += c * pow(p[0], ex.first) * pow(p[1], ex.second);
      return acc;
    };
    auto q = apply_plane(f, p);
    CHECK(evaluate(poly.x) == q[0]);
    CHECK(evaluate(poly.y) == q[1]);
    CHECK(expand(normalize(f)) == poly);
  }

  Limits tight;
  tight.max_terms = 20;
  CHECK_THROWS_AS(expand(power_plane(h, 4), tight), OverflowGuard);
}

TEST_CASE("single factor with a collapsing cyclic join") {
  // (H o swap)^2 is the identity.
  auto f = word({henon({0, 0, 1}, 1), affine(0, 1, 1, 0, 0, 0)});
  CHECK(plane_dynamical_degree(f) == 1);
  CHECK(apply_plane(power_plane(f, 2), {7, 9}) == PlanePoint{7, 9});
  auto g = word({henon({0, 0, 1}, 1), affine(1, 1, 1, 0, 0, 0)});
  // H o A o H is (x, y) -> (y, x - y) here, so g has linear growth.
  CHECK(plane_dynamical_degree(g) == 1);
  CHECK(apply_plane(word({henon({0, 0, 1}, 1), affine(1, 1, 1, 0, 0, 0), henon({0, 0, 1}, 1)}), {4, 9}) ==
        PlanePoint{9, -5});
  auto k = word({henon({0, 0, 1}, 1), affine(1, 1, 1, 0, 0, 0), henon({0, 0, 0, 1}, 1)});
  CHECK(plane_dynamical_degree(k) == 3);
}

TEST_CASE("dynamical degree matches height growth on random words") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 40; ++i) {
    auto f = random_word(rng, 3);
    const long lambda = plane_dynamical_degree(f);
    const long steps = lambda == 1 ? 12 : std::max(4L, std::lround(std::log(4000.0) / std::log(double(lambda))));
    auto prof = height_growth_profile(f, {Rational(3, 7), Rational(-5, 2)}, steps);
    REQUIRE_FALSE(prof.truncated);
    REQUIRE(prof.rows.back().ratio.has_value());
    CHECK(*prof.rows.back().ratio / double(lambda) == doctest::Approx(1.0).epsilon(0.2));
  }
}
