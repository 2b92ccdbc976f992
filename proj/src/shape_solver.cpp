#include "gsod/shape_solver.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "gsod/errors.hpp"
#include "gsod/spectral_ops.hpp"

namespace gsod {

namespace {

void require_x_member(const FourierSeries& f, const char* what) {
  if (!f.flagged_X() && !(f.is_even(1e-12) && f.orthogonal_to_cos(1e-12)))
    fail(ErrorKind::InvalidArgument, std::string(what) + " must be even with no cos θ component");
}

double invertibility_margin(const ProblemConstants& k) {
  const double m = k.a * k.R * k.R - 3.0 * k.b;
  const double scale = std::abs(k.a * k.R * k.R) + 3.0 * std::abs(k.b);
  if (!(std::abs(m) > 1e-14 * scale))
    fail(ErrorKind::NotInvertible, "D_B G(0,0) is singular: aR^2 - 3b = 0");
  return m;
}

}  // namespace

ShapeSolver::ShapeSolver(const GsDirichlet& dirichlet, ShapeOptions options)
    : dirichlet_(dirichlet), options_(options) {
  if (options_.tol <= 0 || options_.max_iter < 1 || options_.b_max <= 0)
    fail(ErrorKind::InvalidArgument, "invalid shape iteration options");
}

NeumannParts ShapeSolver::neumann_parts(const DirichletSolution& sol) const {
  const auto& k = dirichlet_.constants();
  NeumannParts out;
  if (k.eps == 0.0) {
    out.c = k.c_limit();
    return out;
  }
  const DiskGrid& g = *dirichlet_.grid();
  const Eigen::VectorXd grad2 = dirichlet_.boundary_gradient_nodes(sol);
  const double w = 2.0 * std::numbers::pi / g.n_theta();
  for (int j = 0; j < g.n_theta(); ++j) {
    const double th = g.theta(j);
    const double r = k.R + k.eps * sol.map.scale_node(j) * std::cos(th);
    out.c1 += w * grad2(j) * std::cos(th);
    out.c2 += w * r * r * std::cos(th);
  }
  if (!(std::abs(out.c2) >= 10.0 * std::numeric_limits<double>::epsilon() * std::abs(out.c1)))
    fail(ErrorKind::DegenerateDenominator, "c2 vanishes; the Neumann constant is undefined");
  out.c = out.c1 / out.c2;
  return out;
}

double ShapeSolver::neumann_constant(const FourierSeries& shape) const {
  if (dirichlet_.constants().eps == 0.0) return dirichlet_.constants().c_limit();
  return neumann_parts(dirichlet_.solve(shape)).c;
}

Eigen::VectorXd ShapeSolver::functional_F_nodes(const DirichletSolution& sol, double c) const {
  const auto& k = dirichlet_.constants();
  const DiskGrid& g = *dirichlet_.grid();
  Eigen::VectorXd f = dirichlet_.boundary_gradient_nodes(sol);
  for (int j = 0; j < g.n_theta(); ++j) {
    const double r = k.R + k.eps * sol.map.scale_node(j) * std::cos(g.theta(j));
    f(j) -= c * r * r;
  }
  return f;
}

FourierSeries ShapeSolver::functional_F(const FourierSeries& shape) const {
  const DirichletSolution sol = dirichlet_.solve(shape);
  const double c = neumann_parts(sol).c;
  const Eigen::VectorXd f = functional_F_nodes(sol, c);
  return FourierSeries::from_samples({f.data(), static_cast<std::size_t>(f.size())},
                                     dirichlet_.grid()->order());
}

FourierSeries ShapeSolver::functional_G(const FourierSeries& shape) const {
  const auto& k = dirichlet_.constants();
  if (k.eps == 0.0) {
    if (shape.sup_norm() != 0.0)
      fail(ErrorKind::InvalidArgument, "G is only defined at eps = 0 for B = 0");
    return project_X(FourierSeries(0));
  }
  FourierSeries f = functional_F(shape);
  f -= FourierSeries::constant(k.kappa);
  return project_X(f * (1.0 / k.eps));
}

ShapeState ShapeSolver::solve() const {
  const auto& k = dirichlet_.constants();
  const DiskGrid& g = *dirichlet_.grid();
  if (!(k.eps > 0.0) || k.eps > options_.eps_max)
    fail(ErrorKind::InvalidArgument, "shape iteration needs 0 < eps <= eps_max");

  if (options_.diagnostics) *options_.diagnostics << "iter,g_sup,b_sup,c_eps_b\n";

  ShapeState st;
  st.B = FourierSeries(0);
  st.B.mark_X();
  int stalled = 0;
  double prev = std::numeric_limits<double>::infinity();
  for (int it = 0;; ++it) {
    const DirichletSolution sol = dirichlet_.solve(st.B);
    st.parts = neumann_parts(sol);
    Eigen::VectorXd gn = functional_F_nodes(sol, st.parts.c);
    gn.array() = (gn.array() - k.kappa) / k.eps;
    const FourierSeries gs = FourierSeries::from_samples(
        {gn.data(), static_cast<std::size_t>(gn.size())}, g.order());
    st.G_residual = project_X(gs);
    st.G_sup = gn.cwiseAbs().maxCoeff();
    st.c_eps_B = st.parts.c;
    st.iter = it;
    const ShapeIterate rec{it, st.G_sup, st.B.sup_norm(), st.c_eps_B};
    st.history.push_back(rec);
    if (options_.diagnostics)
      *options_.diagnostics << rec.iter << ',' << rec.g_sup << ',' << rec.b_sup << ','
                            << rec.c_eps_b << '\n';

    if (!std::isfinite(st.G_sup)) fail(ErrorKind::ShapeDiverged, "non-finite shape residual");
    if (st.G_sup <= options_.tol) {
      st.converged = true;
      return st;
    }
    stalled = st.G_sup > 0.99 * prev ? stalled + 1 : 0;
    if (stalled >= 3)
      fail(ErrorKind::ShapeDiverged, "shape residual stagnated at " + std::to_string(st.G_sup));
    if (it + 1 >= options_.max_iter)
      fail(ErrorKind::ShapeDiverged, "shape iteration did not converge in " +
                                         std::to_string(options_.max_iter) + " steps");
    prev = st.G_sup;

    FourierSeries next = st.B - linearized_DG0_inverse(k, st.G_residual);
    st.B = project_X(next.truncated(g.order()));
    if (st.B.sup_norm() > options_.b_max)
      fail(ErrorKind::ShapeDiverged, "shape iterate left the ball ||B|| <= " +
                                         std::to_string(options_.b_max));
  }
}

FourierSeries linearized_DG0(const ProblemConstants& k, const FourierSeries& bdot) {
  require_x_member(bdot, "B-dot");
  invertibility_margin(k);
  const double s = 8.0 * k.A0 * k.A0;
  FourierSeries out(bdot.order());
  out.set_mode(0, s * ((1.0 - k.A1 * k.R / k.A0) * bdot[0] + 0.5 * bdot[2]));
  for (int n = 2; n <= bdot.order(); ++n) out.set_mode(n, -s * double(n - 1) * bdot[n]);
  return project_X(out);
}

FourierSeries linearized_DG0_inverse(const ProblemConstants& k, const FourierSeries& gin) {
  invertibility_margin(k);
  const FourierSeries gx = project_X(gin);
  const double s = 8.0 * k.A0 * k.A0;
  FourierSeries out(gx.order());
  for (int n = 2; n <= gx.order(); ++n) out.set_mode(n, -gx[n] / (s * double(n - 1)));
  out.set_mode(0, (gx[0] / s - 0.5 * out[2]) / (1.0 - k.A1 * k.R / k.A0));
  return project_X(out);
}

double neumann_constant(const ProblemConstants& consts, const ProfileFunctions& profile,
                        const FourierSeries& shape, GridPtr grid) {
  const GsDirichlet d(consts, profile, std::move(grid));
  return ShapeSolver(d).neumann_constant(shape);
}

FourierSeries functional_F(const ProblemConstants& consts, const ProfileFunctions& profile,
                           const FourierSeries& shape, GridPtr grid) {
  const GsDirichlet d(consts, profile, std::move(grid));
  return ShapeSolver(d).functional_F(shape);
}

FourierSeries functional_G(const ProblemConstants& consts, const ProfileFunctions& profile,
                           const FourierSeries& shape, GridPtr grid) {
  const GsDirichlet d(consts, profile, std::move(grid));
  return ShapeSolver(d).functional_G(shape);
}

ShapeState solve_shape(const ProblemConstants& consts, const ProfileFunctions& profile,
                       GridPtr grid, ShapeOptions options) {
  const GsDirichlet d(consts, profile, std::move(grid));
  return ShapeSolver(d, options).solve();
}

}  // namespace gsod
