// Acceptance run: one PASS/FAIL line per criterion with its runtime and budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "fd_oracle.hpp"
#include "gsod/errors.hpp"
#include "gsod/euler_assembly.hpp"
#include "gsod/spectral_ops.hpp"
#include "gsod/validation.hpp"
#include "gsod/weak_form.hpp"

using namespace gsod;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_budget = dt <= budget_s;
  const bool pass = out.ok && in_budget;
  if (!pass) ++failures;
  std::printf("[%s] %d %s: %s (%.3g s, budget %.3g s%s)\n", pass ? "PASS" : "FAIL", id, name,
              out.detail.c_str(), dt, budget_s, in_budget ? "" : ", OVER BUDGET");
  std::fflush(stdout);
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

const std::vector<double> kEps = {0.04, 0.02, 0.01};

struct Solved {
  ProblemConstants k;
  ShapeState st;
  Assembly as;
};

Solved solve_fixture(const Fixture& f, double eps, GridSpec spec = {129, 129, 0.25}) {
  const auto k = make_constants(f.profile, f.R, eps);
  const auto grid = make_grid();
  const auto st = solve_shape(k, f.profile, grid);
  return {k, st, assemble(st, k, f.profile, grid, spec)};
}

// Criterion 4 for one fixture.
Outcome overdetermined(const Fixture& f) {
  const auto s = solve_fixture(f, 0.01, {65, 65, 0.25});
  const auto ch = check_fields(*s.as.bundle, s.as.field);
  std::vector<double> bnorm;
  for (double e : kEps) bnorm.push_back(solve_shape(make_constants(f.profile, f.R, e), f.profile, make_grid()).B.sup_norm());
  const double slope = fit_slope(kEps, bnorm);
  std::ostringstream d;
  d << f.name << " iters=" << s.st.iter << " |G|=" << fmt("%.2e", s.st.G_sup)
    << " neumann_spread=" << fmt("%.2e", ch.neumann_spread) << " |B| slope=" << fmt("%.2f", slope);
  return {s.st.iter <= 10 && s.st.G_sup <= 1e-9 && ch.neumann_spread <= 1e-8 && slope >= 0.7, d.str()};
}

// Criterion 6 for one fixture; `omega_check` adds the ω_φ(R,0) check.
Outcome field_identities(const Fixture& f) {
  const auto s = solve_fixture(f, 0.01);
  const auto& b = *s.as.bundle;
  const auto ch = check_fields(b, s.as.field);
  const double h = 0.01 / 64;
  const double d1 = curl_defect(b, h), d2 = curl_defect(b, h / 2);
  double wmax = 0;
  for (double v : s.as.field.omega_phi) wmax = std::max(wmax, std::abs(v));
  const double order = std::log2(d1 / d2);
  // Below 1e-9·max|ω| both defects sit on the round-off floor of the solution and carry no order.
  const bool floor = d1 <= 1e-9 * wmax && d2 <= 1e-9 * wmax;
  const bool curl_ok = (order >= 1.7 && order <= 2.3) || floor;
  const auto cl7 = run_claim(ClaimId::CL7, f, kEps);
  std::ostringstream d;
  d << f.name << " streamline=" << fmt("%.1e", ch.streamline) << " steady=" << fmt("%.1e", ch.steady_residual)
    << " curl order=" << fmt("%.2f", order) << (floor ? " (floor " + fmt("%.1e", d1) + ")" : "")
    << " psi slope=" << fmt("%.2f", cl7.slope) << " minF=" << fmt("%.2e", ch.min_swirl);
  const bool ok = ch.streamline <= 1e-12 && ch.steady_residual <= 1e-6 && curl_ok && cl7.slope >= 2.7 &&
                  ch.min_swirl > 0.0;
  return {ok, d.str()};
}

}  // namespace

int main() {
  const Fixture A = fixture_by_name("fixture-a");
  const Fixture B = fixture_by_name("fixture-b");

  criterion(1, "constants exactness", 1e-3, [&] {
    const auto k = make_constants(A.profile, 2.0, 0.01);
    const double worst = std::max({rel(k.A0, 1.25), rel(k.A1, 0.65625), rel(k.kappa, -0.3125),
                                   rel(k.FR, 0.3125), rel(k.c_limit(), 105.0 / 64.0)});
    return Outcome{worst <= 1e-12, "max rel err " + fmt("%.1e", worst)};
  });

  criterion(2, "Dirichlet asymptotics", 10, [&] {
    const auto r = run_claim(ClaimId::CL1, A, kEps);
    return Outcome{r.slope >= 1.7 && r.slope <= 2.3, "slope " + fmt("%.3f", r.slope)};
  });

  criterion(3, "shape-derivative oracle", 20, [&] {
    const auto r2 = run_claim(ClaimId::CL2, A, kEps);
    const auto r3 = run_claim(ClaimId::CL3, A, kEps);
    const double eps = 0.02, t = 1e-4;
    const auto k = make_constants(A.profile, A.R, eps);
    const auto grid = make_grid();
    const GsDirichlet solver(k, A.profile, grid);
    const auto bdot = FourierSeries::cosine(2);
    const auto base = solver.solve(FourierSeries(0));
    const auto Phi = solver.shape_derivative(base, bdot);
    const auto plus = solver.solve(bdot * t), minus = solver.solve(bdot * -t);
    // Central difference at fixed reference nodes, moved to fixed physical points by the stretch term.
    const auto ext = poisson_disk(bdot, grid);
    const auto dphi = base.phi.d_rho();
    double fd = 0;
    for (int j = 0; j < grid->n_theta(); ++j)
      for (int i = 0; i < grid->n_rho(); ++i) {
        const double q = (plus.phi(i, j) - minus.phi(i, j)) / (2 * t) - eps * grid->rho(i) * dphi(i, j) * ext(i, j);
        fd = std::max(fd, std::abs(q - Phi(i, j)));
      }
    return Outcome{r2.slope >= 2.7 && r3.slope >= 2.7 && fd <= 1e-6,
                   "CL2 slope " + fmt("%.3f", r2.slope) + ", CL3 slope " + fmt("%.3f", r3.slope) +
                       ", FD cross-check " + fmt("%.1e", fd)};
  });

  criterion(4, "overdetermined solve", 30, [&] { return overdetermined(A); });

  criterion(5, "c-constant expansion", 20, [&] {
    const auto r4 = run_claim(ClaimId::CL4, A, kEps);
    const auto r6 = run_claim(ClaimId::CL6, A, kEps);
    const auto st = solve_shape(make_constants(A.profile, A.R, 0.01), A.profile, make_grid());
    const auto k = make_constants(A.profile, A.R, 0.01);
    const double e1 = rel(st.parts.c1, 8.0 * M_PI * 0.01 * k.A0 * k.A1);
    const double e2 = rel(st.parts.c2, 2.0 * M_PI * 0.01 * k.R);
    return Outcome{r4.slope >= 1.7 && r6.slope >= 2.7 && e1 <= 0.05 && e2 <= 0.05,
                   "F-kappa slope " + fmt("%.2f", r4.slope) + ", c remainder slope " + fmt("%.2f", r6.slope) +
                       ", c1 rel " + fmt("%.1e", e1) + ", c2 rel " + fmt("%.1e", e2)};
  });

  criterion(6, "field identities", 20, [&] {
    auto out = field_identities(A);
    const auto s = solve_fixture(A, 0.01, {9, 9, 0.0}).as.bundle->at(A.R, 0.0);
    const double w0 = -A.R * 1.0 + (-2.0) / (2.0 * A.R);
    out.ok = out.ok && rel(s.omega_phi, w0) <= 1e-3;
    out.detail += " omega_phi(R,0)=" + fmt("%.5f", s.omega_phi);
    return out;
  });

  criterion(7, "weak-solution certification", 60, [&] {
    const auto s = solve_fixture(A, 0.01, {512, 512, 0.25});
    const auto rep = verify_weak(s.as.field, 20, 1);
    AxiField rest = s.as.field;
    for (auto* v : {&rest.u_r, &rest.u_phi, &rest.u_z, &rest.omega_r, &rest.omega_phi, &rest.omega_z})
      std::fill(v->begin(), v->end(), 0.0);
    std::fill(rest.p.begin(), rest.p.end(), rest.outside_pressure);
    const double p_out = rest.outside_pressure;
    const auto inner = s.as.field.sampler;
    rest.sampler = [inner, p_out](double r, double z) {
      FlowSample q;
      q.r = r;
      q.z = z;
      q.inside = inner(r, z).inside;
      q.p = p_out;
      return q;
    };
    const auto zero = verify_weak(rest, 20, 1);
    const bool ok = rep.max_momentum <= 1e-3 && rep.max_divergence <= 1e-4 && zero.max_momentum == 0.0 &&
                    zero.max_divergence == 0.0;
    return Outcome{ok, "momentum " + fmt("%.1e", rep.max_momentum) + ", divergence " +
                           fmt("%.1e", rep.max_divergence) + ", u=0 case " +
                           fmt("%.0e", std::max(zero.max_momentum, zero.max_divergence))};
  });

  criterion(8, "oracle equivalence", 5, [&] {
    const double eps = 0.02;
    const auto k = make_constants(A.profile, A.R, eps);
    const GsDirichlet solver(k, A.profile, make_grid());
    const auto in = solver.solve(FourierSeries(0)).phi.interpolant();
    // Fixture A source written out: aR² + b + 2aRεx + ε²ax² with a = b = 1, R = 2.
    const auto fd = gsod_test::fd_polar_solve(32, 33, eps, 2.0, [eps](double x, double) {
      return std::pair{5.0 + 4.0 * eps * x + eps * eps * x * x, 0.0};
    });
    double err = 0;
    for (int i = 0; i <= fd.nr; ++i)
      for (int j = 0; j < (i == 0 ? 1 : fd.nt); ++j)
        err = std::max(err, std::abs(in.value(i * fd.h, j * fd.dt) - fd.at(i, j)));
    return Outcome{err <= 1e-4, "sup difference " + fmt("%.2e", err)};
  });

  criterion(9, "degenerate family", 30, [&] {
    const auto k = make_constants(B.profile, B.R, 0.01);
    const auto c4 = overdetermined(B);
    const auto c6 = field_identities(B);
    const bool consts = rel(k.kappa, -1.0 / 16.0) <= 1e-12 && rel(k.FR, 0.25) <= 1e-12 && k.b == 0.0;
    return Outcome{consts && c4.ok && c6.ok, c4.detail + "; " + c6.detail};
  });

  std::printf("%s: %d criterion(s) failed\n", failures ? "FAILED" : "OK", failures);
  return failures ? 1 : 0;
}
