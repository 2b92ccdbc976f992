#include "gsod/dirichlet.hpp"

#include <cmath>
#include <sstream>

#include "gsod/errors.hpp"

namespace gsod {

namespace {

// φ₀ = A0(|X|² - 1) in the physical plane. Its Laplacian and gradient are known in
// closed form, so the discrete operator only ever acts on φ - φ₀ = O(ε), which keeps
// round-off in the boundary gradient proportional to ε.
struct LeadingPart {
  Eigen::MatrixXd value;  // φ₀ at the nodes
  Eigen::MatrixXd op;     // (Δ - drift ∂_x)φ₀ at the nodes
};

LeadingPart leading_part(const DomainMap& map, double a0, double eps, double R) {
  const Eigen::MatrixXd sig = map.radius_nodes();
  const Eigen::MatrixXd x = map.x_nodes();
  LeadingPart lp;
  lp.value = (a0 * (sig.array().square() - 1.0)).matrix();
  const Eigen::ArrayXXd drift = eps / (R + eps * x.array());
  lp.op = (4.0 * a0 - drift * 2.0 * a0 * x.array()).matrix();
  return lp;
}

}  // namespace

GsDirichlet::GsDirichlet(ProblemConstants consts, ProfileFunctions profile, GridPtr grid,
                         NewtonOptions options)
    : consts_(consts), profile_(std::move(profile)), grid_(std::move(grid)), options_(options) {}

double GsDirichlet::source(double x, double phi) const {
  const auto& c = consts_;
  const double eps = c.eps;
  const double psi = eps * eps * phi;
  const double r = c.R + eps * x;
  const double h1 = profile_.h.derivative(psi, 1) - c.a;  // H₁'
  double q1;                                               // Q₁'
  if (c.family == ProfileFamily::generic) {
    q1 = profile_.ftilde.derivative(psi, 1) + 2.0 * c.b;
  } else {
    q1 = 2.0 * (eps * c.FR + profile_.ftilde(psi)) * profile_.ftilde.derivative(psi, 1);
  }
  const double remainder = eps * eps * c.a * x * x + r * r * h1 - 0.5 * q1;
  return c.a * c.R * c.R + c.b + 2.0 * c.a * c.R * eps * x + remainder;
}

double GsDirichlet::source_derivative(double x, double phi) const {
  const auto& c = consts_;
  const double eps = c.eps;
  const double e2 = eps * eps;
  const double psi = e2 * phi;
  const double r = c.R + eps * x;
  double q2;
  if (c.family == ProfileFamily::generic) {
    q2 = profile_.ftilde.derivative(psi, 2);
  } else {
    const double f1 = profile_.ftilde.derivative(psi, 1);
    q2 = 2.0 * (f1 * f1 + (eps * c.FR + profile_.ftilde(psi)) * profile_.ftilde.derivative(psi, 2));
  }
  return e2 * (r * r * profile_.h.derivative(psi, 2) - 0.5 * q2);
}

Eigen::MatrixXd GsDirichlet::jacobian(const DomainMap& map,
                                      const DomainMap::OperatorCoefficients& c,
                                      const Eigen::MatrixXd& phi, const Eigen::MatrixXd& x) const {
  const auto& g = *grid_;
  Eigen::MatrixXd jac = map.matrix(c);
  for (int k = 0; k < g.n_theta(); ++k) {
    const int b = g.index(0, k);
    jac.row(b).setZero();
    jac(b, b) = 1.0;
    for (int i = 1; i < g.n_rho(); ++i) {
      const int row = g.index(i, k);
      jac(row, row) -= source_derivative(x(i, k), phi(i, k));
    }
  }
  return jac;
}

DiskField GsDirichlet::residual(const FourierSeries& shape, const DiskField& phi) const {
  DomainMap map(grid_, shape, consts_.eps);
  const auto c = map.coefficients(consts_.eps, consts_.R);
  const Eigen::MatrixXd x = map.x_nodes();
  const LeadingPart lp = leading_part(map, consts_.A0, consts_.eps, consts_.R);
  Eigen::MatrixXd res = map.apply(c, phi.values() - lp.value) + lp.op;
  const auto& g = *grid_;
  for (int k = 0; k < g.n_theta(); ++k) {
    res(0, k) = phi(0, k);
    for (int i = 1; i < g.n_rho(); ++i) res(i, k) -= source(x(i, k), phi(i, k));
  }
  return {grid_, res};
}

DirichletSolution GsDirichlet::solve(const FourierSeries& shape) const {
  DomainMap map(grid_, shape, consts_.eps);
  const auto coeffs = map.coefficients(consts_.eps, consts_.R);
  const Eigen::MatrixXd x = map.x_nodes();
  const auto& g = *grid_;
  const LeadingPart lp = leading_part(map, consts_.A0, consts_.eps, consts_.R);
  DiskField phi(grid_, lp.value);

  DirichletSolution sol{phi, map, 0, {}};
  auto compute_residual = [&](const Eigen::MatrixXd& v) {
    Eigen::MatrixXd res = map.apply(coeffs, v - lp.value) + lp.op;
    for (int k = 0; k < g.n_theta(); ++k) {
      res(0, k) = v(0, k);
      for (int i = 1; i < g.n_rho(); ++i) res(i, k) -= source(x(i, k), v(i, k));
    }
    return res;
  };

  Eigen::MatrixXd res = compute_residual(phi.values());
  double res_norm = res.cwiseAbs().maxCoeff();
  int iter = 0;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu;
  Eigen::VectorXd frozen_diag;  // source derivative the current factorization was built with
  while (res_norm > options_.tol) {
    if (iter >= options_.max_iter) {
      std::ostringstream msg;
      msg << "residual " << res_norm << " after " << iter << " Newton steps";
      fail(ErrorKind::NewtonDiverged, msg.str());
    }
    Eigen::VectorXd diag(g.size());
    for (int k = 0; k < g.n_theta(); ++k)
      for (int i = 0; i < g.n_rho(); ++i) diag(g.index(i, k)) = source_derivative(x(i, k), phi(i, k));
    if (iter == 0 || diag != frozen_diag) {
      lu.compute(jacobian(map, coeffs, phi.values(), x));
      frozen_diag = diag;
    }
    const Eigen::VectorXd rhs = -Eigen::Map<const Eigen::VectorXd>(res.data(), res.size());
    const Eigen::VectorXd step = lu.solve(rhs);
    const double step_norm = step.cwiseAbs().maxCoeff();
    phi.values() += Eigen::Map<const Eigen::MatrixXd>(step.data(), g.n_rho(), g.n_theta());
    sol.increments.push_back(step_norm);
    ++iter;
    res = compute_residual(phi.values());
    res_norm = res.cwiseAbs().maxCoeff();
    if (!std::isfinite(res_norm)) fail(ErrorKind::NewtonDiverged, "non-finite residual");
    // A step below tolerance means the iterate is a fixed point to tol even when
    // the collocation residual sits at its round-off floor (~N⁴·machine eps).
    if (step_norm <= options_.tol) break;
  }
  sol.phi = std::move(phi);
  sol.iterations = iter;
  sol.residual = res_norm;
  sol.interior_negative = sol.phi.interior_max() < 0.0;
  return sol;
}

DiskField GsDirichlet::shape_derivative(const FourierSeries& bdot) const {
  return shape_derivative(solve(FourierSeries(0)), bdot);
}

DiskField GsDirichlet::shape_derivative(const DirichletSolution& base,
                                        const FourierSeries& bdot) const {
  if (base.map.perturbation().max_coeff() != 0.0)
    fail(ErrorKind::InvalidArgument, "shape derivative is taken at B = 0");
  const auto& g = *grid_;
  const auto coeffs = base.map.coefficients(consts_.eps, consts_.R);
  const Eigen::MatrixXd x = base.map.x_nodes();
  const Eigen::MatrixXd jac = jacobian(base.map, coeffs, base.phi.values(), x);
  const Eigen::MatrixXd dphi = g.apply_d_rho(base.phi.values());
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(g.size());
  for (int k = 0; k < g.n_theta(); ++k)
    rhs(g.index(0, k)) = -consts_.eps * dphi(0, k) * bdot(g.theta(k));
  const Eigen::VectorXd sol = jac.partialPivLu().solve(rhs);
  return {grid_, Eigen::Map<const Eigen::MatrixXd>(sol.data(), g.n_rho(), g.n_theta())};
}

Eigen::VectorXd GsDirichlet::boundary_gradient_nodes(const DirichletSolution& sol) const {
  const LeadingPart lp = leading_part(sol.map, consts_.A0, consts_.eps, consts_.R);
  Eigen::MatrixXd fx, fy;
  sol.map.gradient(DiskField(grid_, sol.phi.values() - lp.value), fx, fy);
  const Eigen::MatrixXd sig = sol.map.radius_nodes();
  const auto& g = *grid_;
  Eigen::VectorXd gx(g.n_theta()), gy(g.n_theta());
  for (int k = 0; k < g.n_theta(); ++k) {
    // ∇φ₀ = 2A0 X
    gx(k) = fx(0, k) + 2.0 * consts_.A0 * sig(0, k) * std::cos(g.theta(k));
    gy(k) = fy(0, k) + 2.0 * consts_.A0 * sig(0, k) * std::sin(g.theta(k));
  }
  return (gx.array().square() + gy.array().square()).matrix();
}

FourierSeries GsDirichlet::boundary_gradient(const DirichletSolution& sol) const {
  const Eigen::VectorXd v = boundary_gradient_nodes(sol);
  return FourierSeries::from_samples(std::span<const double>(v.data(), v.size()), grid_->order());
}

DiskField solve_dirichlet(const ProblemConstants& consts, const ProfileFunctions& profile,
                          const FourierSeries& shape, GridPtr grid, NewtonOptions options) {
  return GsDirichlet(consts, profile, std::move(grid), options).solve(shape).phi;
}

DiskField residual_gs(const ProblemConstants& consts, const ProfileFunctions& profile,
                      const FourierSeries& shape, const DiskField& phi) {
  return GsDirichlet(consts, profile, phi.grid_ptr()).residual(shape, phi);
}

DiskField shape_derivative(const ProblemConstants& consts, const ProfileFunctions& profile,
                           const FourierSeries& bdot, GridPtr grid, NewtonOptions options) {
  return GsDirichlet(consts, profile, std::move(grid), options).shape_derivative(bdot);
}

FourierSeries boundary_gradient(const ProblemConstants& consts, const ProfileFunctions& profile,
                                const FourierSeries& shape, GridPtr grid, NewtonOptions options) {
  GsDirichlet solver(consts, profile, std::move(grid), options);
  return solver.boundary_gradient(solver.solve(shape));
}

}  // namespace gsod
