#pragma once

#include <vector>

#include <Eigen/Dense>

#include "gsod/disk_field.hpp"
#include "gsod/fourier_series.hpp"

namespace gsod {

/// Value, gradient and Hessian with respect to Cartesian (x, y).
struct CartesianJet {
  double f = 0, f_x = 0, f_y = 0, f_xx = 0, f_xy = 0, f_yy = 0;
};

/// Radial stretch σ(ρ, θ) of the reference disk and its derivatives.
struct Stretch {
  double sig = 0, s_r = 0, s_t = 0, s_rr = 0, s_rt = 0, s_tt = 0;
};

/// The pullback (ρ, θ) ↦ σ(ρ, θ)(cos θ, sin θ) from the unit disk onto
/// Ω_{εB} = {ρ < 1 + εB(θ)}, with σ = ρ(1 + ε·ℙ₀B). Using the harmonic
/// extension ℙ₀B instead of B(θ) keeps the map polynomial in (x, y) near
/// the pole for every Fourier mode of B, odd ones included. Only εB is stored.
class DomainMap {
 public:
  DomainMap(GridPtr grid, const FourierSeries& shape, double eps);

  const DiskGrid& grid() const noexcept { return *grid_; }
  const GridPtr& grid_ptr() const noexcept { return grid_; }
  /// The boundary perturbation εB.
  const FourierSeries& perturbation() const noexcept { return eb_; }

  /// Boundary scale s(θ) = 1 + εB(θ) = σ(1, θ).
  double scale(double theta) const { return 1.0 + eb_(theta); }
  double scale_node(int k) const { return s_(k); }

  Stretch stretch(double rho, double theta) const;

  /// Physical polar radius σ(ρ, θ) of the reference point and its inverse in ρ.
  double physical_radius(double rho, double theta) const { return stretch(rho, theta).sig; }
  double reference_radius(double radius, double theta) const;

  /// Cartesian derivatives (in the rescaled plane) of a field given by its
  /// polar jet in reference coordinates.
  CartesianJet to_cartesian(const PolarJet& ref, double rho, double theta) const;

  /// Node-wise coefficients of Δ - drift·∂_x pulled back to the unit disk,
  /// with drift = ε/(R + εx) when `drift_eps` is nonzero.
  struct OperatorCoefficients {
    Eigen::MatrixXd rr, r, tt, rt, t;
  };
  OperatorCoefficients coefficients(double drift_eps, double major_radius) const;

  /// Apply the pulled-back operator to nodal values.
  Eigen::MatrixXd apply(const OperatorCoefficients& c, const Eigen::MatrixXd& v) const;
  /// Dense matrix of the same operator, rows/cols in DiskGrid::index order.
  Eigen::MatrixXd matrix(const OperatorCoefficients& c) const;

  /// Physical x = σ cos θ at each node.
  Eigen::MatrixXd x_nodes() const;
  /// Physical polar radius σ at each node.
  Eigen::MatrixXd radius_nodes() const;
  /// Cartesian gradient of a field at the nodes, via the exact chain rule.
  void gradient(const DiskField& f, Eigen::MatrixXd& fx, Eigen::MatrixXd& fy) const;

 private:
  GridPtr grid_;
  FourierSeries eb_;
  Eigen::VectorXd s_;
  std::vector<Stretch> nodes_;  // DiskGrid::index order
};

}  // namespace gsod
