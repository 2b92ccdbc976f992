#include <doctest.h>

#include <cmath>

#include "fd_oracle.hpp"
#include "gsod/dirichlet.hpp"
#include "gsod/errors.hpp"
#include "gsod/spectral_ops.hpp"

using namespace gsod;

namespace {

// Fixture A source, written out by hand: H₁' = 0 and Q₁' = 0, so 𝓡 = ε²a x².
std::pair<double, double> fixture_a_source(double x, double, double eps) {
  const double a = 1.0, b = 1.0, R = 2.0;
  return {a * R * R + b + 2 * a * R * eps * x + eps * eps * a * x * x, 0.0};
}

double max_fd_difference(const DirichletSolution& sol, const gsod_test::FdSolution& fd) {
  const auto in = sol.phi.interpolant();
  double err = 0;
  for (int i = 0; i <= fd.nr; ++i)
    for (int j = 0; j < (i == 0 ? 1 : fd.nt); ++j)
      err = std::max(err, std::abs(in.value(i * fd.h, j * fd.dt) - fd.at(i, j)));
  return err;
}

}  // namespace

TEST_CASE("B = 0 spectral solve agrees with an independent 33x33 finite-difference solve") {
  for (double eps : {0.01, 0.04}) {
    const auto k = make_constants(fixture_a_profile(), 2.0, eps);
    const GsDirichlet solver(k, fixture_a_profile(), make_grid());
    const auto sol = solver.solve(FourierSeries(0));
    const auto fd = gsod_test::fd_polar_solve(32, 33, eps, 2.0,
                                              [eps](double x, double p) { return fixture_a_source(x, p, eps); });
    CHECK(max_fd_difference(sol, fd) <= 1e-4);
  }
}

TEST_CASE("nonlinear degenerate source agrees with the finite-difference oracle") {
  const double eps = 0.05;
  const auto k = make_constants(fixture_b_profile(), 1.0, eps);
  const GsDirichlet solver(k, fixture_b_profile(), make_grid());
  const auto sol = solver.solve(FourierSeries(0));
  // H = ψ, F̃ = ψ², F = εF_R + ψ², ψ = ε²φ; a = 1, b = 0, R = 1, F_R = 1/4.
  auto src = [eps](double x, double p) {
    const double psi = eps * eps * p, r = 1.0 + eps * x, fr = 0.25;
    const double q1 = 2.0 * (eps * fr + psi * psi) * 2.0 * psi;
    const double dq1 = eps * eps * 2.0 * (4.0 * psi * psi + (eps * fr + psi * psi) * 2.0);
    const double S = 1.0 + 2.0 * eps * x + eps * eps * x * x + r * r * 0.0 - 0.5 * q1;
    return std::pair{S, -0.5 * dq1};
  };
  const auto fd = gsod_test::fd_polar_solve(32, 33, eps, 1.0, src);
  CHECK(max_fd_difference(sol, fd) <= 1e-4);
}

TEST_CASE("collocation residual, boundary values and sign") {
  const auto k = make_constants(fixture_a_profile(), 2.0, 0.02);
  const GsDirichlet solver(k, fixture_a_profile(), make_grid());
  const auto shape = project_X(FourierSeries::cosine(2, 0.3) + FourierSeries::cosine(3, 0.1));
  const auto sol = solver.solve(shape);
  CHECK(solver.residual(shape, sol.phi).sup_norm() < 1e-9);
  for (int kk = 0; kk < sol.phi.grid().n_theta(); ++kk) CHECK(std::abs(sol.phi(0, kk)) < 1e-20);
  CHECK(sol.interior_negative);
  CHECK(sol.iterations <= 3);
}

TEST_CASE("Newton converges quadratically on a nonlinear problem") {
  // A strongly nonlinear H makes the tail visible.
  const auto prof = ProfileFunctions::make(Polynomial({0.0, -2.0}), Polynomial({0.0, 1.0, 0.0, 5e3}),
                                           ProfileFamily::generic);
  const auto k = make_constants(prof, 2.0, 0.05);
  const GsDirichlet solver(k, prof, make_grid(), NewtonOptions{1e-13, 25});
  const auto sol = solver.solve(FourierSeries(0));
  const auto& d = sol.increments;
  REQUIRE(d.size() >= 3);
  for (std::size_t i = 0; i + 1 < d.size(); ++i) {
    if (d[i] < 1e-9) break;
    CHECK(d[i + 1] < d[i]);
    CHECK(d[i + 1] <= 50.0 * d[i] * d[i] + 1e-12);
  }
}

TEST_CASE("even boundary data gives an even solution (property)") {
  const auto k = make_constants(fixture_a_profile(), 2.0, 0.03);
  const GsDirichlet solver(k, fixture_a_profile(), make_grid(12, 14));
  for (double amp : {0.0, 0.2, -0.4}) {
    const auto shape = project_X(FourierSeries::cosine(2, amp) + FourierSeries::cosine(4, 0.1));
    const auto sol = solver.solve(shape);
    const auto& g = sol.phi.grid();
    for (int kk = 0; kk < g.n_theta(); ++kk)
      for (int i = 0; i < g.n_rho(); ++i)
        CHECK(sol.phi(i, kk) == doctest::Approx(sol.phi(i, (g.n_theta() - kk) % g.n_theta())).epsilon(1e-10).scale(1.0));
  }
}

TEST_CASE("linearized shape response matches a finite difference of the solution") {
  const double eps = 0.02, t = 1e-4;
  const auto k = make_constants(fixture_a_profile(), 2.0, eps);
  const auto grid = make_grid();
  const GsDirichlet solver(k, fixture_a_profile(), grid);
  const auto bdot = FourierSeries::cosine(2);
  const auto base = solver.solve(FourierSeries(0));
  const auto Phi = solver.shape_derivative(base, bdot);
  const auto pert = solver.solve(bdot * t);
  // Pulled-back difference quotient minus the transport term ερ ∂ρφ ℙ₀Ḃ.
  const auto ext = poisson_disk(bdot, grid);
  const auto dphi = base.phi.d_rho();
  double err = 0;
  for (int kk = 0; kk < grid->n_theta(); ++kk)
    for (int i = 0; i < grid->n_rho(); ++i) {
      const double dq = (pert.phi(i, kk) - base.phi(i, kk)) / t;
      const double transport = eps * grid->rho(i) * dphi(i, kk) * ext(i, kk);
      err = std::max(err, std::abs(dq - transport - Phi(i, kk)));
    }
  CHECK(err <= 1e-6);
  CHECK_THROWS_AS(solver.shape_derivative(pert, bdot), Error);
}

TEST_CASE("Newton reports divergence") {
  const auto k = make_constants(fixture_a_profile(), 2.0, 0.02);
  const GsDirichlet solver(k, fixture_a_profile(), make_grid(), NewtonOptions{1e-30, 2});
  try {
    solver.solve(FourierSeries::cosine(2, 0.3));
    FAIL("expected NewtonDiverged");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NewtonDiverged);
  }
}
