#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gsod/disk_field.hpp"
#include "gsod/domain_map.hpp"
#include "gsod/errors.hpp"
#include "gsod/spectral_ops.hpp"

using namespace gsod;

namespace {

// Smooth test function in Cartesian form: f = x³ - 2xy² + y + 0.5.
double f_xy(double x, double y) { return x * x * x - 2 * x * y * y + y + 0.5; }
double lap_xy(double x, double) { return 6 * x - 4 * x; }

}  // namespace

TEST_CASE("Chebyshev matrix differentiates polynomials exactly") {
  Eigen::VectorXd x;
  const auto d = chebyshev_diff_matrix(8, &x);
  const Eigen::VectorXd p = x.array().pow(5);
  const Eigen::VectorXd dp = d * p;
  for (int i = 0; i <= 8; ++i) CHECK(dp(i) == doctest::Approx(5 * std::pow(x(i), 4)).epsilon(1e-12));
}

TEST_CASE("grid nodes exclude the pole and start at the boundary") {
  const DiskGrid g(10, 12);
  CHECK(g.rho(0) == 1.0);
  CHECK(g.n_theta() == 22);
  for (int i = 0; i < g.n_rho(); ++i) CHECK(g.rho(i) > 0.0);
  CHECK(g.antipode(0) == 11);
  CHECK_THROWS_AS(DiskGrid(1, 12), Error);
}

TEST_CASE("polar Laplacian of a Cartesian polynomial") {
  const auto grid = make_grid(12, 14);
  const auto f = DiskField::from_function(grid, [](double r, double t) {
    return f_xy(r * std::cos(t), r * std::sin(t));
  });
  const auto lap = f.laplacian();
  const auto dx = f.d_x();
  for (int k = 0; k < grid->n_theta(); ++k)
    for (int i = 0; i < grid->n_rho(); ++i) {
      const double x = grid->rho(i) * std::cos(grid->theta(k));
      const double y = grid->rho(i) * std::sin(grid->theta(k));
      CHECK(lap(i, k) == doctest::Approx(lap_xy(x, y)).epsilon(1e-9).scale(1.0));
      CHECK(dx(i, k) == doctest::Approx(3 * x * x - 2 * y * y).epsilon(1e-9).scale(1.0));
    }
  CHECK(f.pole_defect(1) < 1e-10);
  CHECK(f.pole_defect(3) < 1e-10);
}

TEST_CASE("interpolant reproduces the field off the grid, including the pole") {
  const auto grid = make_grid(12, 14);
  const auto f = DiskField::from_function(grid, [](double r, double t) {
    return f_xy(r * std::cos(t), r * std::sin(t));
  });
  const auto in = f.interpolant();
  for (double r : {0.0, 0.13, 0.5, 0.97})
    for (double t : {0.2, 2.0, 5.1}) CHECK(in.value(r, t) == doctest::Approx(f_xy(r * std::cos(t), r * std::sin(t))).epsilon(1e-11));
}

TEST_CASE("harmonic extension is harmonic with the given trace") {
  const auto grid = make_grid(12, 14);
  const auto f = FourierSeries::cosine(2, 0.3) + FourierSeries::cosine(5, -0.1) + FourierSeries::constant(1.0);
  const auto u = poisson_disk(f, grid);
  CHECK(u.laplacian().sup_norm() < 1e-9);
  const auto tr = u.trace();
  for (int n = 0; n <= 6; ++n) CHECK(std::abs(tr[n] - f[n]) < 1e-13);
}

TEST_CASE("harmonic extension into a perturbed domain") {
  const auto grid = make_grid(16, 18);
  const auto shape = FourierSeries::cosine(2, 0.3);
  const double eps = 0.05;
  const auto f = FourierSeries::cosine(3);
  const DomainMap map(grid, shape, eps);
  const auto u = poisson_domain(f, shape, eps, grid);
  const auto c = map.coefficients(0.0, 1.0);
  const Eigen::MatrixXd lu = map.apply(c, u.values());
  double interior = 0;
  for (int k = 0; k < grid->n_theta(); ++k)
    for (int i = 1; i < grid->n_rho(); ++i) interior = std::max(interior, std::abs(lu(i, k)));
  CHECK(interior < 1e-8);
  for (int k = 0; k < grid->n_theta(); ++k) CHECK(u(0, k) == doctest::Approx(f(grid->theta(k))).epsilon(1e-10).scale(1.0));
}

TEST_CASE("domain map: boundary, inverse radius and Cartesian chain rule") {
  const auto grid = make_grid(12, 14);
  const auto shape = FourierSeries::cosine(2, 0.4) + FourierSeries::cosine(3, -0.2);
  const double eps = 0.05;
  const DomainMap map(grid, shape, eps);
  for (double t : {0.0, 1.0, 2.5}) {
    CHECK(map.physical_radius(1.0, t) == doctest::Approx(map.scale(t)).epsilon(1e-14));
    for (double rho : {0.1, 0.6, 1.0}) {
      const double P = map.physical_radius(rho, t);
      CHECK(map.reference_radius(P, t) == doctest::Approx(rho).epsilon(1e-12));
    }
  }
  // Cartesian jet of g(x,y) = f_xy pulled back through the map.
  const auto g = DiskField::from_function(grid, [&](double rho, double t) {
    const double s = map.physical_radius(rho, t);
    return f_xy(s * std::cos(t), s * std::sin(t));
  });
  Eigen::MatrixXd fx, fy;
  map.gradient(g, fx, fy);
  for (int k = 0; k < grid->n_theta(); k += 3)
    for (int i = 0; i < grid->n_rho(); i += 2) {
      const double s = map.physical_radius(grid->rho(i), grid->theta(k));
      const double x = s * std::cos(grid->theta(k)), y = s * std::sin(grid->theta(k));
      CHECK(fx(i, k) == doctest::Approx(3 * x * x - 2 * y * y).scale(1.0).epsilon(1e-8));
      CHECK(fy(i, k) == doctest::Approx(-4 * x * y + 1).scale(1.0).epsilon(1e-8));
    }
  const auto jet = map.to_cartesian(g.interpolant().jet(0.4, 0.7), 0.4, 0.7);
  const double s = map.physical_radius(0.4, 0.7);
  const double x = s * std::cos(0.7), y = s * std::sin(0.7);
  CHECK(jet.f_xx == doctest::Approx(6 * x).scale(1.0).epsilon(1e-8));
  CHECK(jet.f_xy == doctest::Approx(-4 * y).scale(1.0).epsilon(1e-8));
  CHECK(jet.f_yy == doctest::Approx(-4 * x).scale(1.0).epsilon(1e-8));
}

TEST_CASE("over-distorted domain maps are rejected") {
  const auto grid = make_grid(12, 14);
  CHECK_THROWS_AS(DomainMap(grid, FourierSeries::cosine(2, 30.0), 0.05), Error);
  CHECK_THROWS_AS(DomainMap(grid, FourierSeries::constant(-12.0), 0.05), Error);
  try {
    DomainMap(grid, FourierSeries::constant(-25.0), 0.05);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MapDegenerate);
  }
}
