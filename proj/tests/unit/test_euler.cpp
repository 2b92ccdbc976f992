#include <doctest.h>

#include <cmath>

#include "gsod/errors.hpp"
#include "gsod/euler_assembly.hpp"

using namespace gsod;

namespace {

struct Case {
  ProblemConstants k;
  Assembly as;
};

Case build(const ProfileFunctions& prof, double R, double eps, GridSpec spec = {65, 65, 0.25}) {
  const auto k = make_constants(prof, R, eps);
  const auto grid = make_grid();
  const auto st = solve_shape(k, prof, grid);
  return {k, assemble(st, k, prof, grid, spec)};
}

const Case& fixture_a() {
  static const Case c = build(fixture_a_profile(), 2.0, 0.01);
  return c;
}

}  // namespace

TEST_CASE("zero extension outside the support") {
  const auto& c = fixture_a();
  const auto& f = c.as.field;
  int outside = 0, inside = 0;
  for (int j = 0; j < f.nz; ++j)
    for (int i = 0; i < f.nr; ++i) {
      const int q = f.index(i, j);
      if (f.inside[q]) {
        ++inside;
        continue;
      }
      ++outside;
      CHECK(f.u_r[q] == 0.0);
      CHECK(f.u_phi[q] == 0.0);
      CHECK(f.u_z[q] == 0.0);
      CHECK(f.omega_phi[q] == 0.0);
      CHECK(f.psi[q] == 0.0);
      CHECK(f.p[q] == f.outside_pressure);
    }
  CHECK(inside > 0);
  CHECK(outside > 0);
  // corners of the box are outside
  CHECK_FALSE(f.inside[f.index(0, 0)]);
  CHECK(f.outside_pressure == doctest::Approx(0.0 - 0.5 * c.as.bundle->c_phys()));
}

TEST_CASE("fixture A pointwise identities") {
  const auto& c = fixture_a();
  const auto ch = check_fields(*c.as.bundle, c.as.field);
  CHECK(ch.streamline <= 1e-12);
  CHECK(ch.steady_residual <= 1e-6);
  CHECK(ch.pressure_jump <= 10 * 1e-9);
  CHECK(ch.tangency <= 1e-10);
  CHECK(ch.neumann_spread <= 1e-8);
  CHECK(ch.min_swirl > 0.0);
  CHECK(ch.localizability > 0.0);
}

TEST_CASE("vorticity at the centre matches -rH' + (F^2)'/(2r)") {
  const auto& c = fixture_a();
  const auto s = c.as.bundle->at(2.0, 0.0);
  REQUIRE(s.inside);
  // H' = 1, (F²)' = F̃' = -2 at ψ ≈ 0
  const double expect = -2.0 * 1.0 + (-2.0) / (2.0 * 2.0);
  CHECK(s.omega_phi == doctest::Approx(expect).epsilon(1e-3));
  CHECK(s.u_phi == doctest::Approx(s.swirl / 2.0));
}

TEST_CASE("psi follows the leading quadratic with a third-order remainder") {
  std::vector<double> err;
  for (double eps : {0.04, 0.02, 0.01}) {
    const auto c = build(fixture_a_profile(), 2.0, eps, {9, 9, 0.0});
    const double A0 = c.k.A0;
    double e = 0;
    for (double fr : {-0.6, -0.2, 0.0, 0.3, 0.7})
      for (double fz : {-0.5, 0.0, 0.4}) {
        const double r = 2.0 + fr * eps, z = fz * eps;
        const auto s = c.as.bundle->at(r, z);
        if (!s.inside) continue;
        e = std::max(e, std::abs(s.psi - A0 * ((r - 2.0) * (r - 2.0) + z * z - eps * eps)));
      }
    err.push_back(e);
  }
  CHECK(std::log2(err[0] / err[1]) >= 2.7);
  CHECK(std::log2(err[1] / err[2]) >= 2.7);
}

TEST_CASE("analytic vorticity matches the discrete curl at second order") {
  const auto& b = *fixture_a().as.bundle;
  const double h0 = 0.01 / 64;
  const double d1 = curl_defect(b, h0), d2 = curl_defect(b, h0 / 2);
  CHECK(std::log2(d1 / d2) == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("negative swirl radicand is reported") {
  const auto& b = *fixture_a().as.bundle;
  try {
    b.swirl(1.0);  // ε²F_R - 2ψ < 0
    FAIL("expected NegativeRadicand");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NegativeRadicand);
  }
  CHECK(b.swirl(0.0) == doctest::Approx(b.F0()));
}

TEST_CASE("degenerate family assembles with F > 0") {
  const auto c = build(fixture_b_profile(), 1.0, 0.01);
  const auto ch = check_fields(*c.as.bundle, c.as.field);
  CHECK(ch.min_swirl > 0.0);
  CHECK(ch.streamline <= 1e-12);
  CHECK(ch.steady_residual <= 1e-6);
  CHECK(ch.neumann_spread <= 1e-8);
  CHECK(c.as.bundle->F0() == doctest::Approx(0.0025));
}

TEST_CASE("assembly requires a converged state") {
  const auto k = make_constants(fixture_a_profile(), 2.0, 0.01);
  ShapeState st;
  CHECK_THROWS_AS(assemble(st, k, fixture_a_profile(), make_grid()), Error);
}
