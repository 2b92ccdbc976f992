#include "gsod/disk_grid.hpp"

#include <cmath>
#include <numbers>

#include "gsod/errors.hpp"

namespace gsod {

Eigen::MatrixXd chebyshev_diff_matrix(int n, Eigen::VectorXd* nodes) {
  Eigen::VectorXd x(n + 1);
  for (int j = 0; j <= n; ++j) x(j) = std::cos(std::numbers::pi * j / n);
  Eigen::VectorXd c(n + 1);
  for (int j = 0; j <= n; ++j) c(j) = ((j == 0 || j == n) ? 2.0 : 1.0) * ((j % 2) ? -1.0 : 1.0);
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n + 1, n + 1);
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      if (i != j) d(i, j) = (c(i) / c(j)) / (x(i) - x(j));
    }
  }
  // Negative-sum trick for the diagonal.
  for (int i = 0; i <= n; ++i) d(i, i) = -d.row(i).sum();
  if (nodes) *nodes = x;
  return d;
}

DiskGrid::DiskGrid(int order, int n_rho) : order_(order), n_rho_(n_rho) {
  if (order < 2 || n_rho < 4) fail(ErrorKind::InvalidArgument, "disk grid too small");
  m_ = 2 * (order + 1);
  cheb_n_ = 2 * n_rho - 1;

  Eigen::VectorXd x;
  const Eigen::MatrixXd d = chebyshev_diff_matrix(cheb_n_, &x);
  const Eigen::MatrixXd dd = d * d;
  rho_ = x.head(n_rho);
  d1_near_.resize(n_rho, n_rho);
  d1_far_.resize(n_rho, n_rho);
  d2_near_.resize(n_rho, n_rho);
  d2_far_.resize(n_rho, n_rho);
  for (int i = 0; i < n_rho; ++i) {
    for (int j = 0; j < n_rho; ++j) {
      d1_near_(i, j) = d(i, j);
      d1_far_(i, j) = d(i, cheb_n_ - j);
      d2_near_(i, j) = dd(i, j);
      d2_far_(i, j) = dd(i, cheb_n_ - j);
    }
  }

  const double h = 2.0 * std::numbers::pi / m_;
  theta_.resize(m_);
  for (int k = 0; k < m_; ++k) theta_(k) = h * k;
  dt_ = Eigen::MatrixXd::Zero(m_, m_);
  dtt_ = Eigen::MatrixXd::Zero(m_, m_);
  for (int k = 0; k < m_; ++k) {
    for (int l = 0; l < m_; ++l) {
      if (k == l) {
        dtt_(k, l) = -std::numbers::pi * std::numbers::pi / (3.0 * h * h) - 1.0 / 6.0;
        continue;
      }
      const double sign = ((k - l) % 2 == 0) ? 1.0 : -1.0;
      const double half = 0.5 * (k - l) * h;
      dt_(k, l) = 0.5 * sign / std::tan(half);
      dtt_(k, l) = -0.5 * sign / (std::sin(half) * std::sin(half));
    }
  }
}

Eigen::MatrixXd DiskGrid::shifted(const Eigen::MatrixXd& v) const {
  Eigen::MatrixXd out(v.rows(), v.cols());
  for (int k = 0; k < m_; ++k) out.col(k) = v.col(antipode(k));
  return out;
}

Eigen::MatrixXd DiskGrid::apply_d_rho(const Eigen::MatrixXd& v) const {
  return d1_near_ * v + d1_far_ * shifted(v);
}

Eigen::MatrixXd DiskGrid::apply_d_rho2(const Eigen::MatrixXd& v) const {
  return d2_near_ * v + d2_far_ * shifted(v);
}

Eigen::MatrixXd DiskGrid::apply_d_theta(const Eigen::MatrixXd& v) const {
  return v * dt_.transpose();
}

Eigen::MatrixXd DiskGrid::apply_d_theta2(const Eigen::MatrixXd& v) const {
  return v * dtt_.transpose();
}

Eigen::MatrixXd DiskGrid::unfold(const Eigen::MatrixXd& v) const {
  Eigen::MatrixXd full(cheb_n_ + 1, m_);
  for (int k = 0; k < m_; ++k) {
    for (int j = 0; j < n_rho_; ++j) {
      full(j, k) = v(j, k);
      full(cheb_n_ - j, k) = v(j, antipode(k));
    }
  }
  return full;
}

GridPtr make_grid(int order, int n_rho) { return std::make_shared<const DiskGrid>(order, n_rho); }

}  // namespace gsod
