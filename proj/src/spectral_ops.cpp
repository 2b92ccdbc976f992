#include "gsod/spectral_ops.hpp"

#include <cmath>

#include "gsod/domain_map.hpp"
#include "gsod/errors.hpp"

namespace gsod {

namespace {

int sgn(int n) { return n > 0 ? 1 : -1; }

}  // namespace

DiskField modal_field(GridPtr grid, const FourierSeries& f, double (*radial)(int n, double rho),
                      int (*target_mode)(int n)) {
  DiskField out(grid);
  auto& v = out.values();
  for (int n = -f.order(); n <= f.order(); ++n) {
    const auto fn = f.coeff(n);
    if (fn == 0.0) continue;
    const int m = target_mode(n);
    for (int k = 0; k < grid->n_theta(); ++k) {
      const double phase_re = std::cos(m * grid->theta(k));
      const double phase_im = std::sin(m * grid->theta(k));
      const double re = fn.real() * phase_re - fn.imag() * phase_im;
      for (int i = 0; i < grid->n_rho(); ++i) v(i, k) += re * radial(n, grid->rho(i));
    }
  }
  return out;
}

DiskField poisson_disk(const FourierSeries& f, GridPtr grid) {
  return modal_field(
      std::move(grid), f, [](int n, double rho) { return std::pow(rho, std::abs(n)); },
      [](int n) { return n; });
}

DiskField poisson_domain(const FourierSeries& f, const FourierSeries& shape, double eps,
                         GridPtr grid) {
  if (eps == 0.0 || shape.max_coeff() == 0.0) {
    // Still validates the map for consistency with the general path.
    DomainMap map(grid, shape, eps);
    return poisson_disk(f, std::move(grid));
  }
  DomainMap map(grid, shape, eps);
  const auto coeffs = map.coefficients(0.0, 1.0);
  // Solve for the correction to the reference-disk extension, which already carries
  // the boundary data; the dense solve then only sees an O(ε) right-hand side.
  const DiskField base = poisson_disk(f, grid);
  Eigen::MatrixXd a = map.matrix(coeffs);
  const Eigen::MatrixXd lb = map.apply(coeffs, base.values());
  const auto& g = *grid;
  Eigen::VectorXd rhs = -Eigen::Map<const Eigen::VectorXd>(lb.data(), lb.size());
  for (int k = 0; k < g.n_theta(); ++k) {
    const int row = g.index(0, k);
    a.row(row).setZero();
    a(row, row) = 1.0;
    rhs(row) = f(g.theta(k)) - base(0, k);
  }
  const Eigen::VectorXd sol = a.partialPivLu().solve(rhs);
  Eigen::MatrixXd values = base.values() + Eigen::Map<const Eigen::MatrixXd>(sol.data(), g.n_rho(), g.n_theta());
  return {std::move(grid), values};
}

FourierSeries dn_map_disk(const FourierSeries& f) {
  FourierSeries out = f;
  for (int n = 1; n <= f.order(); ++n) out.set_mode(n, static_cast<double>(n) * f.coeff(n));
  out.set_mode(0, 0.0);
  if (f.flagged_X()) {
    out.mark_X();
  } else if (f.flagged_even()) {
    out.mark_even();
  }
  return out;
}

DiskField op_T(const FourierSeries& f, GridPtr grid) {
  return modal_field(
      std::move(grid), f,
      [](int n, double rho) {
        if (n == 0) return 0.0;
        const int a = std::abs(n);
        return std::pow(rho, a - 1) - std::pow(rho, a + 1);
      },
      [](int n) { return n == 0 ? 0 : n - sgn(n); });
}

FourierSeries op_Tprime(const FourierSeries& f) {
  std::map<int, FourierSeries::Complex> modes;
  for (int n = -f.order(); n <= f.order(); ++n) {
    if (n == 0) continue;
    modes[n - sgn(n)] += 0.5 * f.coeff(n);
  }
  if (modes.empty()) return FourierSeries(0);
  auto out = FourierSeries::from_modes(modes);
  if (f.flagged_even()) out.mark_even();
  return out;
}

FourierSeries project_X(const FourierSeries& f) {
  FourierSeries out = f.even_part();
  if (out.order() >= 1) out.set_mode(1, 0.0);
  out.mark_X();
  return out;
}

}  // namespace gsod
