#include "gsod/disk_field.hpp"

#include <cmath>
#include <numbers>

#include "gsod/errors.hpp"

namespace gsod {

namespace {

// T_m, T_m', T_m'' at x for m = 0..n.
void chebyshev_values(double x, int n, double* t, double* dt, double* ddt) {
  t[0] = 1.0;
  dt[0] = 0.0;
  ddt[0] = 0.0;
  if (n == 0) return;
  t[1] = x;
  dt[1] = 1.0;
  ddt[1] = 0.0;
  for (int m = 1; m < n; ++m) {
    t[m + 1] = 2.0 * x * t[m] - t[m - 1];
    dt[m + 1] = 2.0 * t[m] + 2.0 * x * dt[m] - dt[m - 1];
    ddt[m + 1] = 4.0 * dt[m] + 2.0 * x * ddt[m] - ddt[m - 1];
  }
}

}  // namespace

SpectralInterpolant::SpectralInterpolant(const DiskGrid& grid, const Eigen::MatrixXd& values) {
  cheb_n_ = grid.cheb_degree();
  const int m = grid.n_theta();
  n_modes_ = m / 2 + 1;
  const Eigen::MatrixXd full = grid.unfold(values);

  // Chebyshev transform along each diameter.
  const int n = cheb_n_;
  Eigen::MatrixXd cheb(n + 1, m);
  for (int mm = 0; mm <= n; ++mm) {
    const double cm = (mm == 0 || mm == n) ? 2.0 : 1.0;
    for (int k = 0; k < m; ++k) {
      double sum = 0.0;
      for (int j = 0; j <= n; ++j) {
        const double w = (j == 0 || j == n) ? 0.5 : 1.0;
        sum += w * full(j, k) * std::cos(std::numbers::pi * mm * j / n);
      }
      cheb(mm, k) = 2.0 * sum / (n * cm);
    }
  }

  // Fourier transform in θ; fold the conjugate half into a weight on the real part.
  coeffs_ = Eigen::MatrixXcd::Zero(n + 1, n_modes_);
  const double h = 2.0 * std::numbers::pi / m;
  for (int q = 0; q < n_modes_; ++q) {
    const double weight = (q == 0 || 2 * q == m) ? 1.0 : 2.0;
    for (int mm = 0; mm <= n; ++mm) {
      if ((mm + q) % 2 != 0) continue;  // parity of the folded representation
      std::complex<double> sum{};
      for (int k = 0; k < m; ++k) sum += cheb(mm, k) * std::polar(1.0, -q * h * k);
      coeffs_(mm, q) = weight * sum / static_cast<double>(m);
    }
  }
}

PolarJet SpectralInterpolant::jet(double rho, double theta) const {
  const int n = cheb_n_;
  thread_local std::vector<double> t, dt, ddt;
  t.resize(n + 1);
  dt.resize(n + 1);
  ddt.resize(n + 1);
  chebyshev_values(rho, n, t.data(), dt.data(), ddt.data());
  PolarJet out;
  const std::complex<double> step = std::polar(1.0, theta);
  std::complex<double> phase = 1.0;
  for (int q = 0; q < n_modes_; ++q) {
    std::complex<double> c0{}, c1{}, c2{};
    for (int mm = q % 2; mm <= n; mm += 2) {
      const auto a = coeffs_(mm, q);
      c0 += a * t[mm];
      c1 += a * dt[mm];
      c2 += a * ddt[mm];
    }
    const std::complex<double> iq(0.0, q);
    out.f += (c0 * phase).real();
    out.f_r += (c1 * phase).real();
    out.f_rr += (c2 * phase).real();
    out.f_t += (iq * c0 * phase).real();
    out.f_rt += (iq * c1 * phase).real();
    out.f_tt += (iq * iq * c0 * phase).real();
    phase *= step;
  }
  return out;
}

double SpectralInterpolant::value(double rho, double theta) const {
  const int n = cheb_n_;
  thread_local std::vector<double> t;
  t.resize(n + 1);
  t[0] = 1.0;
  if (n > 0) t[1] = rho;
  for (int m = 1; m < n; ++m) t[m + 1] = 2.0 * rho * t[m] - t[m - 1];
  double total = 0.0;
  const std::complex<double> step = std::polar(1.0, theta);
  std::complex<double> phase = 1.0;
  for (int q = 0; q < n_modes_; ++q) {
    std::complex<double> c0{};
    for (int mm = q % 2; mm <= n; mm += 2) c0 += coeffs_(mm, q) * t[mm];
    total += (c0 * phase).real();
    phase *= step;
  }
  return total;
}

std::complex<double> SpectralInterpolant::mode_profile(int n, double rho, int k) const {
  if (n < 0 || n >= n_modes_) return {};
  std::vector<double> t(cheb_n_ + 1), dt(cheb_n_ + 1), ddt(cheb_n_ + 1);
  chebyshev_values(rho, cheb_n_, t.data(), dt.data(), ddt.data());
  const double* basis = (k == 0) ? t.data() : (k == 1) ? dt.data() : ddt.data();
  std::complex<double> sum{};
  for (int mm = 0; mm <= cheb_n_; ++mm) sum += coeffs_(mm, n) * basis[mm];
  // Undo the real-part weight so the result is the plain amplitude c_n(ρ).
  const double weight = (n == 0 || n == n_modes_ - 1) ? 1.0 : 2.0;
  return sum / weight;
}

DiskField::DiskField(GridPtr grid) : grid_(std::move(grid)) {
  values_ = Eigen::MatrixXd::Zero(grid_->n_rho(), grid_->n_theta());
}

DiskField::DiskField(GridPtr grid, Eigen::MatrixXd values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.rows() != grid_->n_rho() || values_.cols() != grid_->n_theta())
    fail(ErrorKind::InvalidArgument, "field shape does not match grid");
}

DiskField DiskField::from_function(GridPtr grid, const std::function<double(double, double)>& f) {
  DiskField out(grid);
  for (int k = 0; k < grid->n_theta(); ++k)
    for (int i = 0; i < grid->n_rho(); ++i) out.values_(i, k) = f(grid->rho(i), grid->theta(k));
  return out;
}

DiskField DiskField::d_rho() const { return {grid_, grid_->apply_d_rho(values_)}; }
DiskField DiskField::d_rho2() const { return {grid_, grid_->apply_d_rho2(values_)}; }
DiskField DiskField::d_theta() const { return {grid_, grid_->apply_d_theta(values_)}; }
DiskField DiskField::d_theta2() const { return {grid_, grid_->apply_d_theta2(values_)}; }
DiskField DiskField::d_rho_theta() const {
  return {grid_, grid_->apply_d_rho(grid_->apply_d_theta(values_))};
}

DiskField DiskField::laplacian() const {
  const auto& g = *grid_;
  Eigen::MatrixXd out = g.apply_d_rho2(values_);
  const Eigen::MatrixXd dr = g.apply_d_rho(values_);
  const Eigen::MatrixXd dtt = g.apply_d_theta2(values_);
  for (int k = 0; k < g.n_theta(); ++k) {
    for (int i = 0; i < g.n_rho(); ++i) {
      const double r = g.rho(i);
      out(i, k) += dr(i, k) / r + dtt(i, k) / (r * r);
    }
  }
  return {grid_, out};
}

DiskField DiskField::d_x() const {
  const auto& g = *grid_;
  const Eigen::MatrixXd dr = g.apply_d_rho(values_);
  const Eigen::MatrixXd dt = g.apply_d_theta(values_);
  Eigen::MatrixXd out(g.n_rho(), g.n_theta());
  for (int k = 0; k < g.n_theta(); ++k) {
    const double c = std::cos(g.theta(k));
    const double s = std::sin(g.theta(k));
    for (int i = 0; i < g.n_rho(); ++i) out(i, k) = c * dr(i, k) - s * dt(i, k) / g.rho(i);
  }
  return {grid_, out};
}

FourierSeries DiskField::trace() const {
  const Eigen::VectorXd row = values_.row(0).transpose();
  return FourierSeries::from_samples(std::span<const double>(row.data(), row.size()),
                                     grid_->order());
}

Eigen::MatrixXcd DiskField::modal() const {
  const int m = grid_->n_theta();
  const int modes = m / 2 + 1;
  Eigen::MatrixXcd out(grid_->n_rho(), modes);
  const double h = 2.0 * std::numbers::pi / m;
  for (int q = 0; q < modes; ++q) {
    for (int i = 0; i < grid_->n_rho(); ++i) {
      std::complex<double> sum{};
      for (int k = 0; k < m; ++k) sum += values_(i, k) * std::polar(1.0, -q * h * k);
      out(i, q) = sum / static_cast<double>(m);
    }
  }
  return out;
}

DiskField DiskField::from_modal(GridPtr grid, const Eigen::MatrixXcd& modal) {
  DiskField out(grid);
  const int m = grid->n_theta();
  for (int k = 0; k < m; ++k) {
    for (int i = 0; i < grid->n_rho(); ++i) {
      double v = modal(i, 0).real();
      for (int q = 1; q < modal.cols(); ++q) {
        const double weight = (2 * q == m) ? 1.0 : 2.0;
        v += weight * (modal(i, q) * std::polar(1.0, q * grid->theta(k))).real();
      }
      out.values_(i, k) = v;
    }
  }
  return out;
}

double DiskField::interior_max() const {
  return values_.bottomRows(values_.rows() - 1).maxCoeff();
}

double DiskField::pole_defect(int n) const {
  n = std::abs(n);
  const auto interp = interpolant();
  double worst = 0.0;
  for (int k = 0; k < std::min(n, 3); ++k) worst = std::max(worst, std::abs(interp.mode_profile(n, 0.0, k)));
  return worst;
}

DiskField& DiskField::operator+=(const DiskField& rhs) {
  values_ += rhs.values_;
  return *this;
}

DiskField& DiskField::operator-=(const DiskField& rhs) {
  values_ -= rhs.values_;
  return *this;
}

DiskField& DiskField::operator*=(double s) {
  values_ *= s;
  return *this;
}

}  // namespace gsod
