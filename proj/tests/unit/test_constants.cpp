#include <doctest.h>

#include <cmath>

#include "gsod/constants.hpp"
#include "gsod/errors.hpp"
#include "gsod/profile.hpp"

using namespace gsod;

TEST_CASE("fixture A constants") {
  const auto k = make_constants(fixture_a_profile(), 2.0, 0.01);
  CHECK(k.family == ProfileFamily::generic);
  CHECK(k.a == 1.0);
  CHECK(k.b == 1.0);
  CHECK(k.A0 == doctest::Approx(1.25).epsilon(1e-15));
  CHECK(k.A1 == doctest::Approx(0.65625).epsilon(1e-15));
  CHECK(k.kappa == doctest::Approx(-0.3125).epsilon(1e-15));
  CHECK(k.FR == doctest::Approx(0.3125).epsilon(1e-15));
  CHECK(k.c_limit() == doctest::Approx(105.0 / 64.0).epsilon(1e-15));
  CHECK(k.swirl_at_zero_squared() == doctest::Approx(0.3125e-4).epsilon(1e-14));
}

TEST_CASE("fixture B constants, degenerate family") {
  const auto k = make_constants(fixture_b_profile(), 1.0, 0.01);
  CHECK(k.family == ProfileFamily::degenerate);
  CHECK(k.b == 0.0);
  CHECK(k.A0 == doctest::Approx(0.25));
  CHECK(k.A1 == doctest::Approx(5.0 / 16.0));
  CHECK(k.kappa == doctest::Approx(-1.0 / 16.0));
  CHECK(k.FR == doctest::Approx(0.25));
  CHECK(k.swirl_at_zero() == doctest::Approx(0.0025));
}

TEST_CASE("closed forms hold across R (property)") {
  const auto p = fixture_a_profile();
  for (double R : {1.8, 2.0, 3.7, 10.0}) {
    const auto k = make_constants(p, R, 0.02);
    const double a = 1.0, b = 1.0;
    CHECK(k.A0 == doctest::Approx((a * R * R + b) / 4));
    CHECK(k.A1 == doctest::Approx((5 * a * R * R + b) / (16 * R)));
    CHECK(k.kappa == doctest::Approx(4 * k.A0 * (k.A0 - k.A1 * R)));
    CHECK(k.FR == doctest::Approx(-k.kappa));
    // κ = -(aR²+b)(aR²-3b)/16
    CHECK(k.kappa == doctest::Approx(-(a * R * R + b) * (a * R * R - 3 * b) / 16));
  }
}

TEST_CASE("inadmissible radius and bad profiles") {
  const auto p = fixture_a_profile();
  CHECK_THROWS_AS(make_constants(p, 1.0, 0.01), Error);  // aR² - 3b < 0
  try {
    make_constants(p, std::sqrt(3.0), 0.01);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InadmissibleR);
  }
  CHECK_THROWS_AS(make_constants(p, -1.0, 0.01), Error);
  CHECK_THROWS_AS(ProfileFunctions::make(Polynomial({0.0, 1.0}), Polynomial({0.0, 1.0}), ProfileFamily::generic),
                  Error);  // F̃'(0) > 0
  CHECK_THROWS_AS(ProfileFunctions::make(Polynomial({0.0, -2.0}), Polynomial({0.0, 1.0}), ProfileFamily::degenerate),
                  Error);
  CHECK_THROWS_AS(ProfileFunctions::make(Polynomial({0.0, -2.0}), Polynomial({0.0, -1.0}), ProfileFamily::generic),
                  Error);
  CHECK_THROWS_AS(family_from_string("weird"), Error);
}

TEST_CASE("polynomial derivatives") {
  const Polynomial p({1.0, -2.0, 3.0});
  CHECK(p(2.0) == 9.0);
  CHECK(p.derivative(2.0, 1) == 10.0);
  CHECK(p.derivative(2.0, 2) == 6.0);
  CHECK(p.derivative(2.0, 3) == 0.0);
}
