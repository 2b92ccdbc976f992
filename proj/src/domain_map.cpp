#include "gsod/domain_map.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "gsod/errors.hpp"

namespace gsod {

DomainMap::DomainMap(GridPtr grid, const FourierSeries& shape, double eps)
    : grid_(std::move(grid)), eb_(shape * eps) {
  const auto& g = *grid_;
  const int m = g.n_theta();
  s_.resize(m);
  nodes_.resize(static_cast<std::size_t>(g.size()));
  double min_jac = std::numeric_limits<double>::infinity();
  for (int k = 0; k < m; ++k) {
    const double th = g.theta(k);
    s_(k) = 1.0 + eb_(th);
    for (int i = 0; i < g.n_rho(); ++i) {
      const Stretch st = stretch(g.rho(i), th);
      nodes_[static_cast<std::size_t>(g.index(i, k))] = st;
      min_jac = std::min(min_jac, st.s_r);
    }
  }
  // Also guard between nodes, where a narrow dip could hide.
  const int fine = std::max(256, 16 * (eb_.order() + 1));
  double min_scale = s_.minCoeff();
  for (int k = 0; k < fine; ++k) {
    const double th = 2.0 * std::numbers::pi * k / fine;
    min_scale = std::min(min_scale, scale(th));
    for (int i = 1; i <= 16; ++i) min_jac = std::min(min_jac, stretch(i / 16.0, th).s_r);
  }
  if (min_scale <= 0.0 || min_jac <= 0.0)
    fail(ErrorKind::MapDegenerate, "1 + εB(θ) <= 0 or the stretch folds over");
  if (min_scale < 0.5 || min_jac < 0.5)
    fail(ErrorKind::MapDegenerate, "1 + εB(θ) < 1/2; domain map too distorted");
}

Stretch DomainMap::stretch(double rho, double theta) const {
  // E = Σ εB_n ρ^{|n|} e^{inθ}, σ = ρ(1 + E).
  double e = eb_[0].real(), e_r = 0, e_rr = 0, e_t = 0, e_rt = 0, e_tt = 0;
  const std::complex<double> step = std::polar(1.0, theta);
  std::complex<double> phase = 1.0;
  double pw = 1.0, pw1 = 0.0, pw2 = 0.0;  // ρ^n, ρ^{n-1}, ρ^{n-2}
  for (int n = 1; n <= eb_.order(); ++n) {
    phase *= step;
    pw2 = pw1;
    pw1 = pw;
    pw *= rho;
    const std::complex<double> c = 2.0 * eb_[n] * phase;
    const double re = c.real(), im = c.imag();
    e += pw * re;
    e_r += n * pw1 * re;
    e_rr += n * (n - 1) * pw2 * re;
    e_t -= n * pw * im;
    e_rt -= n * n * pw1 * im;
    e_tt -= n * n * pw * re;
  }
  Stretch s;
  s.sig = rho * (1.0 + e);
  s.s_r = 1.0 + e + rho * e_r;
  s.s_rr = 2.0 * e_r + rho * e_rr;
  s.s_t = rho * e_t;
  s.s_rt = e_t + rho * e_rt;
  s.s_tt = rho * e_tt;
  return s;
}

double DomainMap::reference_radius(double radius, double theta) const {
  double rho = radius / scale(theta);
  for (int it = 0; it < 50; ++it) {
    const Stretch s = stretch(rho, theta);
    const double step = (s.sig - radius) / s.s_r;
    rho -= step;
    if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(rho))) break;
  }
  return rho;
}

CartesianJet DomainMap::to_cartesian(const PolarJet& ref, double rho, double theta) const {
  const Stretch s = stretch(rho, theta);
  const double c = std::cos(theta), sn = std::sin(theta);

  // Columns of the Jacobian of (ρ, θ) ↦ (x, y) and second derivatives of the position.
  const double x_r = s.s_r * c, y_r = s.s_r * sn;
  const double x_t = s.s_t * c - s.sig * sn, y_t = s.s_t * sn + s.sig * c;
  const double x_rr = s.s_rr * c, y_rr = s.s_rr * sn;
  const double x_rt = s.s_rt * c - s.s_r * sn, y_rt = s.s_rt * sn + s.s_r * c;
  const double x_tt = s.s_tt * c - 2.0 * s.s_t * sn - s.sig * c;
  const double y_tt = s.s_tt * sn + 2.0 * s.s_t * c - s.sig * sn;

  Eigen::Matrix2d jac;
  jac << x_r, x_t, y_r, y_t;
  const Eigen::Matrix2d inv = jac.inverse();
  const Eigen::Matrix2d inv_t = inv.transpose();

  CartesianJet out;
  out.f = ref.f;
  const Eigen::Vector2d grad = inv_t * Eigen::Vector2d(ref.f_r, ref.f_t);
  out.f_x = grad(0);
  out.f_y = grad(1);

  Eigen::Matrix2d m;
  m(0, 0) = ref.f_rr - (grad(0) * x_rr + grad(1) * y_rr);
  m(0, 1) = ref.f_rt - (grad(0) * x_rt + grad(1) * y_rt);
  m(1, 0) = m(0, 1);
  m(1, 1) = ref.f_tt - (grad(0) * x_tt + grad(1) * y_tt);
  const Eigen::Matrix2d hess = inv_t * m * inv;
  out.f_xx = hess(0, 0);
  out.f_xy = 0.5 * (hess(0, 1) + hess(1, 0));
  out.f_yy = hess(1, 1);
  return out;
}

DomainMap::OperatorCoefficients DomainMap::coefficients(double drift_eps,
                                                        double major_radius) const {
  const auto& g = *grid_;
  const int nr = g.n_rho(), m = g.n_theta();
  OperatorCoefficients c{Eigen::MatrixXd(nr, m), Eigen::MatrixXd(nr, m), Eigen::MatrixXd(nr, m),
                         Eigen::MatrixXd(nr, m), Eigen::MatrixXd(nr, m)};
  for (int k = 0; k < m; ++k) {
    const double ct = std::cos(g.theta(k)), st = std::sin(g.theta(k));
    for (int i = 0; i < nr; ++i) {
      const Stretch& s = nodes_[static_cast<std::size_t>(g.index(i, k))];
      // ∂_P = a∂_ρ and ∂_θ|_P = ∂_θ - b∂_ρ in physical polar coordinates (P, θ).
      const double a = 1.0 / s.s_r;
      const double b = s.s_t / s.s_r;
      const double a_r = -s.s_rr * a * a;
      const double b_r = (s.s_rt * s.s_r - s.s_t * s.s_rr) * a * a;
      const double b_t = (s.s_tt * s.s_r - s.s_t * s.s_rt) * a * a;
      const double inv_p2 = 1.0 / (s.sig * s.sig);
      c.rr(i, k) = a * a + b * b * inv_p2;
      c.r(i, k) = a * a_r + a / s.sig + (b * b_r - b_t) * inv_p2;
      c.tt(i, k) = inv_p2;
      c.rt(i, k) = -2.0 * b * inv_p2;
      c.t(i, k) = 0.0;
      if (drift_eps != 0.0) {
        const double x = s.sig * ct;
        const double drift = drift_eps / (major_radius + drift_eps * x);
        // ∂_x = cos θ ∂_P - (sin θ/P) ∂_θ|_P
        c.r(i, k) -= drift * (a * ct + b * st / s.sig);
        c.t(i, k) += drift * st / s.sig;
      }
    }
  }
  return c;
}

Eigen::MatrixXd DomainMap::apply(const OperatorCoefficients& c, const Eigen::MatrixXd& v) const {
  const auto& g = *grid_;
  const Eigen::MatrixXd vt = g.apply_d_theta(v);
  Eigen::MatrixXd out = c.rr.cwiseProduct(g.apply_d_rho2(v));
  out += c.r.cwiseProduct(g.apply_d_rho(v));
  out += c.tt.cwiseProduct(g.apply_d_theta2(v));
  out += c.rt.cwiseProduct(g.apply_d_rho(vt));
  out += c.t.cwiseProduct(vt);
  return out;
}

Eigen::MatrixXd DomainMap::matrix(const OperatorCoefficients& c) const {
  const auto& g = *grid_;
  const int nr = g.n_rho(), m = g.n_theta();
  const int n = g.size();
  const auto& d1n = g.d1_near();
  const auto& d1f = g.d1_far();
  const auto& d2n = g.d2_near();
  const auto& d2f = g.d2_far();
  const auto& dt = g.d_theta();
  const auto& dtt = g.d_theta2();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < m; ++k) {
    const int ka = g.antipode(k);
    for (int i = 0; i < nr; ++i) {
      const int row = g.index(i, k);
      const double crr = c.rr(i, k), cr = c.r(i, k), ctt = c.tt(i, k), crt = c.rt(i, k),
                   ct = c.t(i, k);
      for (int j = 0; j < nr; ++j) {
        a(row, g.index(j, k)) += crr * d2n(i, j) + cr * d1n(i, j);
        a(row, g.index(j, ka)) += crr * d2f(i, j) + cr * d1f(i, j);
      }
      for (int l = 0; l < m; ++l) a(row, g.index(i, l)) += ctt * dtt(k, l) + ct * dt(k, l);
      if (crt != 0.0) {
        for (int l = 0; l < m; ++l) {
          const double tk = dt(k, l), tka = dt(ka, l);
          for (int j = 0; j < nr; ++j) a(row, g.index(j, l)) += crt * (d1n(i, j) * tk + d1f(i, j) * tka);
        }
      }
    }
  }
  return a;
}

Eigen::MatrixXd DomainMap::x_nodes() const {
  const auto& g = *grid_;
  Eigen::MatrixXd x(g.n_rho(), g.n_theta());
  for (int k = 0; k < g.n_theta(); ++k)
    for (int i = 0; i < g.n_rho(); ++i)
      x(i, k) = nodes_[static_cast<std::size_t>(g.index(i, k))].sig * std::cos(g.theta(k));
  return x;
}

Eigen::MatrixXd DomainMap::radius_nodes() const {
  const auto& g = *grid_;
  Eigen::MatrixXd r(g.n_rho(), g.n_theta());
  for (int k = 0; k < g.n_theta(); ++k)
    for (int i = 0; i < g.n_rho(); ++i) r(i, k) = nodes_[static_cast<std::size_t>(g.index(i, k))].sig;
  return r;
}

void DomainMap::gradient(const DiskField& f, Eigen::MatrixXd& fx, Eigen::MatrixXd& fy) const {
  const auto& g = *grid_;
  const Eigen::MatrixXd fr = g.apply_d_rho(f.values());
  const Eigen::MatrixXd ft = g.apply_d_theta(f.values());
  fx.resize(g.n_rho(), g.n_theta());
  fy.resize(g.n_rho(), g.n_theta());
  for (int k = 0; k < g.n_theta(); ++k) {
    const double c = std::cos(g.theta(k)), sn = std::sin(g.theta(k));
    for (int i = 0; i < g.n_rho(); ++i) {
      const Stretch& s = nodes_[static_cast<std::size_t>(g.index(i, k))];
      // ∇f = J^{-T}(f_ρ, f_θ), det J = σ σ_ρ.
      const double x_r = s.s_r * c, y_r = s.s_r * sn;
      const double x_t = s.s_t * c - s.sig * sn, y_t = s.s_t * sn + s.sig * c;
      const double det = s.sig * s.s_r;
      fx(i, k) = (y_t * fr(i, k) - y_r * ft(i, k)) / det;
      fy(i, k) = (x_r * ft(i, k) - x_t * fr(i, k)) / det;
    }
  }
}

}  // namespace gsod
