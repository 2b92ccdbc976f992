#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <nlohmann/json.hpp>

#include "gsod/errors.hpp"
#include "gsod/fourier_series.hpp"
#include "gsod/spectral_ops.hpp"

using namespace gsod;
using C = std::complex<double>;
constexpr double pi = std::numbers::pi;

namespace {

FourierSeries random_series(std::mt19937_64& rng, int order, bool even) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  FourierSeries f(order);
  f.set_mode(0, u(rng));
  for (int n = 1; n <= order; ++n) f.set_mode(n, even ? C(u(rng), 0.0) : C(u(rng), u(rng)));
  return f;
}

}  // namespace

TEST_CASE("cosine and sine evaluate pointwise") {
  const auto c = FourierSeries::cosine(3, 0.7);
  const auto s = FourierSeries::sine(2, -1.5);
  for (double t : {0.0, 0.3, 1.9, 4.4}) {
    CHECK(c(t) == doctest::Approx(0.7 * std::cos(3 * t)).epsilon(1e-14));
    CHECK(s(t) == doctest::Approx(-1.5 * std::sin(2 * t)).epsilon(1e-14));
    CHECK(s.derivative_at(t, 1) == doctest::Approx(-3.0 * std::cos(2 * t)).epsilon(1e-14));
  }
}

TEST_CASE("from_modes rejects non-real data") {
  CHECK_THROWS_AS(FourierSeries::from_modes({{2, C(1, 0)}, {-2, C(0.5, 0)}}), Error);
  CHECK_THROWS_AS(FourierSeries::from_modes({{0, C(1, 1)}}), Error);
  const auto f = FourierSeries::from_modes({{2, C(1, 2)}, {-2, C(1, -2)}});
  CHECK(f.coeff(-2) == C(1, -2));
}

TEST_CASE("samples round-trip through from_samples") {
  std::mt19937_64 rng(7);
  const auto f = random_series(rng, 6, false);
  const auto s = f.sample(20);
  const auto g = FourierSeries::from_samples(s, 6);
  for (int n = -6; n <= 6; ++n) CHECK(std::abs(g[n] - f[n]) < 1e-14);
}

TEST_CASE("inner product is 2π Σ f_n conj(g_n)") {
  const auto c2 = FourierSeries::cosine(2);
  CHECK(c2.inner(c2) == doctest::Approx(pi).epsilon(1e-14));
  CHECK(std::abs(c2.inner(FourierSeries::cosine(3))) < 1e-15);
  CHECK(FourierSeries::constant(1.0).inner(FourierSeries::constant(1.0)) ==
        doctest::Approx(2 * pi).epsilon(1e-14));
}

TEST_CASE("project_X keeps even modes other than cos θ") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_series(rng, 5, false);
    const auto p = project_X(f);
    CHECK(p.flagged_X());
    CHECK(p.is_even());
    CHECK(p.orthogonal_to_cos());
    // idempotent
    CHECK(project_X(p) == p);
    CHECK(p[0].real() == doctest::Approx(f[0].real()));
    CHECK(p[3].real() == doctest::Approx(f[3].real()));
  }
}

TEST_CASE("mark_X refuses a cos θ component") {
  auto f = FourierSeries::cosine(1);
  CHECK_THROWS_AS(f.mark_X(), Error);
  auto g = FourierSeries::sine(2);
  CHECK_THROWS_AS(g.mark_even(), Error);
}

TEST_CASE("Dirichlet-Neumann map multiplies mode n by |n|") {
  const auto f = FourierSeries::cosine(4, 2.0) + FourierSeries::constant(3.0);
  const auto g = dn_map_disk(f);
  CHECK(g[4].real() == doctest::Approx(4.0));
  CHECK(std::abs(g[0]) == 0.0);
}

TEST_CASE("T' is -1/4 of the boundary radial derivative of T") {
  const auto grid = make_grid(12, 14);
  std::mt19937_64 rng(11);
  const auto f = random_series(rng, 5, true);
  const auto dT = op_T(f, grid).d_rho().trace();
  const auto tp = op_Tprime(f);
  for (int n = -6; n <= 6; ++n) CHECK(std::abs(-0.25 * dT[n] - tp[n]) < 1e-11);
}

TEST_CASE("json round trip is exact") {
  std::mt19937_64 rng(5);
  const auto f = random_series(rng, 4, false);
  const auto g = fourier_from_json(to_json(f));
  CHECK(g == f);
  CHECK_THROWS_AS(fourier_from_json(nlohmann::json::object()), Error);
}

TEST_CASE("products with cos θ shift modes") {
  const auto f = FourierSeries::cosine(2).times_cos();
  for (double t : {0.1, 1.3, 2.7}) CHECK(f(t) == doctest::Approx(std::cos(2 * t) * std::cos(t)));
}
