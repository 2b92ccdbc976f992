#pragma once

#include <memory>

#include <Eigen/Dense>

namespace gsod {

/// Collocation nodes on the closed unit disk.
///
/// Radially the nodes are the positive half of the Chebyshev–Gauss–Lobatto
/// points of an odd-degree grid on [-1, 1]; a polar field f(ρ, θ) is read on
/// the full diameter through f(-ρ, θ) = f(ρ, θ + π). This keeps the pole out
/// of the node set, clusters nodes at ρ = 1 and makes mode n radially of
/// parity (-1)^n, which is what regularity at the pole requires.
///
/// Field values are stored as an n_rho × n_theta_points matrix: row i is ρ_i
/// (ρ_0 = 1 is the boundary), column k is θ_k = 2πk/M.
class DiskGrid {
 public:
  /// `order` is the Fourier truncation N_θ (modes |n| <= order are resolved
  /// exactly); `n_rho` is the number of radial nodes in (0, 1].
  DiskGrid(int order, int n_rho);

  int order() const noexcept { return order_; }
  int n_rho() const noexcept { return n_rho_; }
  int n_theta() const noexcept { return m_; }
  int cheb_degree() const noexcept { return cheb_n_; }
  int size() const noexcept { return n_rho_ * m_; }
  int index(int i, int k) const noexcept { return k * n_rho_ + i; }
  int antipode(int k) const noexcept { return (k + m_ / 2) % m_; }

  double rho(int i) const { return rho_(i); }
  double theta(int k) const { return theta_(k); }
  const Eigen::VectorXd& rho_nodes() const noexcept { return rho_; }
  const Eigen::VectorXd& theta_nodes() const noexcept { return theta_; }

  // Folded Chebyshev differentiation: (∂_ρ V)(i,k) = near(i,:)·V(:,k) + far(i,:)·V(:,k+M/2).
  const Eigen::MatrixXd& d1_near() const noexcept { return d1_near_; }
  const Eigen::MatrixXd& d1_far() const noexcept { return d1_far_; }
  const Eigen::MatrixXd& d2_near() const noexcept { return d2_near_; }
  const Eigen::MatrixXd& d2_far() const noexcept { return d2_far_; }
  const Eigen::MatrixXd& d_theta() const noexcept { return dt_; }
  const Eigen::MatrixXd& d_theta2() const noexcept { return dtt_; }

  Eigen::MatrixXd apply_d_rho(const Eigen::MatrixXd& v) const;
  Eigen::MatrixXd apply_d_rho2(const Eigen::MatrixXd& v) const;
  Eigen::MatrixXd apply_d_theta(const Eigen::MatrixXd& v) const;
  Eigen::MatrixXd apply_d_theta2(const Eigen::MatrixXd& v) const;

  /// Values on the full Chebyshev diameter grid, (cheb_degree+1) × M.
  Eigen::MatrixXd unfold(const Eigen::MatrixXd& v) const;

 private:
  Eigen::MatrixXd shifted(const Eigen::MatrixXd& v) const;

  int order_;
  int n_rho_;
  int m_;
  int cheb_n_;
  Eigen::VectorXd rho_;
  Eigen::VectorXd theta_;
  Eigen::MatrixXd d1_near_, d1_far_, d2_near_, d2_far_;
  Eigen::MatrixXd dt_, dtt_;
};

using GridPtr = std::shared_ptr<const DiskGrid>;

GridPtr make_grid(int order = 24, int n_rho = 24);

/// Chebyshev–Gauss–Lobatto differentiation matrix on x_j = cos(jπ/N).
Eigen::MatrixXd chebyshev_diff_matrix(int n, Eigen::VectorXd* nodes = nullptr);

}  // namespace gsod
