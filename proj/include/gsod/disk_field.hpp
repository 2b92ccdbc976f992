#pragma once

#include <functional>

#include <Eigen/Dense>

#include "gsod/disk_grid.hpp"
#include "gsod/fourier_series.hpp"

namespace gsod {

/// Value and derivatives up to second order in the polar coordinates (ρ, θ).
struct PolarJet {
  double f = 0, f_r = 0, f_t = 0, f_rr = 0, f_rt = 0, f_tt = 0;
};

/// Tensor Chebyshev (signed radius on [-1, 1]) × Fourier expansion of a
/// DiskField, evaluable anywhere with |ρ| slightly beyond 1.
class SpectralInterpolant {
 public:
  SpectralInterpolant() = default;
  SpectralInterpolant(const DiskGrid& grid, const Eigen::MatrixXd& values);

  PolarJet jet(double rho, double theta) const;
  double value(double rho, double theta) const;
  /// Radial profile of Fourier mode n >= 0 and its k-th ρ-derivative.
  std::complex<double> mode_profile(int n, double rho, int k = 0) const;

 private:
  int cheb_n_ = 0;
  int n_modes_ = 0;  // n = 0 .. n_modes_-1
  Eigen::MatrixXcd coeffs_;  // (cheb_n_+1) × n_modes_, weights for the real part folded in
};

/// Scalar field on the unit disk sampled at the DiskGrid nodes.
class DiskField {
 public:
  explicit DiskField(GridPtr grid);
  DiskField(GridPtr grid, Eigen::MatrixXd values);
  static DiskField from_function(GridPtr grid, const std::function<double(double, double)>& f);

  const DiskGrid& grid() const noexcept { return *grid_; }
  const GridPtr& grid_ptr() const noexcept { return grid_; }
  const Eigen::MatrixXd& values() const noexcept { return values_; }
  Eigen::MatrixXd& values() noexcept { return values_; }
  double operator()(int i, int k) const { return values_(i, k); }

  DiskField d_rho() const;
  DiskField d_rho2() const;
  DiskField d_theta() const;
  DiskField d_theta2() const;
  DiskField d_rho_theta() const;
  /// Polar Laplacian on the unit disk, ∂ρρ + ∂ρ/ρ + ∂θθ/ρ².
  DiskField laplacian() const;
  /// ∂_x = cos θ ∂ρ - (sin θ/ρ) ∂θ, spectrally.
  DiskField d_x() const;

  /// Boundary trace at ρ = 1.
  FourierSeries trace() const;
  /// Per-mode radial values c_n(ρ_i) for n = 0 .. M/2 (columns).
  Eigen::MatrixXcd modal() const;
  static DiskField from_modal(GridPtr grid, const Eigen::MatrixXcd& modal);

  SpectralInterpolant interpolant() const { return SpectralInterpolant(*grid_, values_); }

  double sup_norm() const { return values_.cwiseAbs().maxCoeff(); }
  /// Largest value over nodes with ρ < 1.
  double interior_max() const;
  /// Max |d^k c_n/dρ^k (0)| over k < |n|, for the mode-n radial profile.
  double pole_defect(int n) const;

  DiskField& operator+=(const DiskField& rhs);
  DiskField& operator-=(const DiskField& rhs);
  DiskField& operator*=(double s);
  friend DiskField operator+(DiskField a, const DiskField& b) { return a += b; }
  friend DiskField operator-(DiskField a, const DiskField& b) { return a -= b; }
  friend DiskField operator*(DiskField a, double s) { return a *= s; }
  friend DiskField operator*(double s, DiskField a) { return a *= s; }

 private:
  GridPtr grid_;
  Eigen::MatrixXd values_;
};

}  // namespace gsod
