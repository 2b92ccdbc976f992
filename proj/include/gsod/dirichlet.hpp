#pragma once

#include <vector>

#include "gsod/constants.hpp"
#include "gsod/disk_field.hpp"
#include "gsod/domain_map.hpp"
#include "gsod/fourier_series.hpp"
#include "gsod/profile.hpp"

namespace gsod {

struct NewtonOptions {
  double tol = 1e-11;  // sup norm of the collocation residual
  int max_iter = 25;
};

struct DirichletSolution {
  DiskField phi;  // pulled back to the unit disk
  DomainMap map;
  int iterations = 0;
  std::vector<double> increments;  // sup norm of each Newton step
  double residual = 0;             // final sup-norm residual
  bool interior_negative = false;  // φ < 0 at every interior node
};

/// The rescaled Grad–Shafranov Dirichlet problem
///
///   Δφ - ε/(R+εx) ∂_xφ = aR² + b + 2aRεx + 𝓡(x, φ)   in Ω_{εB},   φ = 0 on ∂Ω_{εB},
///
/// with 𝓡(x, φ) = ε²ax² + (R+εx)² H₁'(ε²φ) - ½ Q₁'(ε²φ). For the generic family
/// Q₁ = F̃₁ = F̃ + 2bψ; for the degenerate family Q₁ = F² = (εF_R + F̃)².
class GsDirichlet {
 public:
  GsDirichlet(ProblemConstants consts, ProfileFunctions profile, GridPtr grid,
              NewtonOptions options = {});

  const ProblemConstants& constants() const noexcept { return consts_; }
  const ProfileFunctions& profile() const noexcept { return profile_; }
  const GridPtr& grid() const noexcept { return grid_; }
  const NewtonOptions& options() const noexcept { return options_; }

  /// Right-hand side aR² + b + 2aRεx + 𝓡(x, φ) and its φ-derivative.
  double source(double x, double phi) const;
  double source_derivative(double x, double phi) const;

  /// Newton solve from φ₀ = A0(ρ² - 1). Throws NewtonDiverged or MapDegenerate.
  DirichletSolution solve(const FourierSeries& shape) const;

  /// Pointwise residual of the pulled-back equation; boundary nodes hold φ(1, θ).
  DiskField residual(const FourierSeries& shape, const DiskField& phi) const;

  /// Response Φ of the solution to the boundary perturbation Ḃ at B = 0, from the
  /// linearized equation with Φ(1, θ) = -ε ∂ρφ_{ε,0}(1, θ) Ḃ(θ).
  DiskField shape_derivative(const FourierSeries& bdot) const;
  DiskField shape_derivative(const DirichletSolution& base, const FourierSeries& bdot) const;

  /// |∇φ|² at the boundary nodes (1 + εB(θ_k), θ_k), exact chain rule.
  Eigen::VectorXd boundary_gradient_nodes(const DirichletSolution& sol) const;
  FourierSeries boundary_gradient(const DirichletSolution& sol) const;

 private:
  Eigen::MatrixXd jacobian(const DomainMap& map, const DomainMap::OperatorCoefficients& c,
                           const Eigen::MatrixXd& phi, const Eigen::MatrixXd& x) const;

  ProblemConstants consts_;
  ProfileFunctions profile_;
  GridPtr grid_;
  NewtonOptions options_;
};

// Free-function forms.
DiskField solve_dirichlet(const ProblemConstants& consts, const ProfileFunctions& profile,
                          const FourierSeries& shape, GridPtr grid, NewtonOptions options = {});
DiskField residual_gs(const ProblemConstants& consts, const ProfileFunctions& profile,
                      const FourierSeries& shape, const DiskField& phi);
DiskField shape_derivative(const ProblemConstants& consts, const ProfileFunctions& profile,
                           const FourierSeries& bdot, GridPtr grid, NewtonOptions options = {});
FourierSeries boundary_gradient(const ProblemConstants& consts, const ProfileFunctions& profile,
                                const FourierSeries& shape, GridPtr grid,
                                NewtonOptions options = {});

}  // namespace gsod
