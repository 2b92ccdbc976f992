#pragma once

#include <ostream>
#include <vector>

#include "gsod/dirichlet.hpp"

namespace gsod {

/// The two integrals whose ratio is the compatibility constant c_{ε,B}:
///   c1 = ∫ |∇φ(1+εB, θ)|² cos θ dθ,   c2 = ∫ [R + ε(1+εB) cos θ]² cos θ dθ.
struct NeumannParts {
  double c1 = 0;
  double c2 = 0;
  double c = 0;
};

struct ShapeOptions {
  double tol = 1e-9;     // sup norm of 𝓖 at the θ nodes
  int max_iter = 40;
  double b_max = 0.5;    // divergence guard on ‖B‖_∞
  double eps_max = 0.05;
  std::ostream* diagnostics = nullptr;  // CSV stream, one row per iterate
};

struct ShapeIterate {
  int iter = 0;
  double g_sup = 0;
  double b_sup = 0;
  double c_eps_b = 0;
};

struct ShapeState {
  FourierSeries B;  // X-flagged
  double c_eps_B = 0;
  FourierSeries G_residual;
  double G_sup = 0;
  int iter = 0;
  bool converged = false;
  NeumannParts parts;
  std::vector<ShapeIterate> history;
};

/// Neumann functional 𝓕, its normalization 𝓖 and the quasi-Newton shape
/// iteration built on a Dirichlet solver.
class ShapeSolver {
 public:
  explicit ShapeSolver(const GsDirichlet& dirichlet, ShapeOptions options = {});

  const GsDirichlet& dirichlet() const noexcept { return dirichlet_; }
  const ShapeOptions& options() const noexcept { return options_; }

  /// Throws DegenerateDenominator if |c2| < 10·machine-eps·|c1|. At ε = 0 the
  /// continuity value 4A0A1/R is returned with c1 = c2 = 0.
  NeumannParts neumann_parts(const DirichletSolution& sol) const;
  double neumann_constant(const FourierSeries& shape) const;

  /// 𝓕 at the θ nodes for a given Dirichlet solution and constant c.
  Eigen::VectorXd functional_F_nodes(const DirichletSolution& sol, double c) const;
  FourierSeries functional_F(const FourierSeries& shape) const;
  /// (𝓕 - κ)/ε, even part without cos θ (the X projection is applied).
  FourierSeries functional_G(const FourierSeries& shape) const;

  /// B ← B - [D_B𝓖(0,0)]⁻¹ Π_X 𝓖(ε, B) from B = 0.
  ShapeState solve() const;

  /// Final Dirichlet solution for a converged state.
  DirichletSolution solution_for(const ShapeState& state) const { return dirichlet_.solve(state.B); }

 private:
  const GsDirichlet& dirichlet_;
  ShapeOptions options_;
};

/// D_B𝓖(0,0)Ḃ = 8A0²[(1 - A1R/A0)Ḃ₀ + ½Ḃ₂ - 2 Σ_{n≥2} (n-1) Ḃ_n cos nθ] on X.
/// Throws NotInvertible if aR² - 3b = 0.
FourierSeries linearized_DG0(const ProblemConstants& consts, const FourierSeries& bdot);
/// Exact inverse on X: diagonal for n >= 2, closed-form 2×2 for modes (0, 2).
FourierSeries linearized_DG0_inverse(const ProblemConstants& consts, const FourierSeries& g);

// Free-function forms that build the Dirichlet solver on the fly.
double neumann_constant(const ProblemConstants& consts, const ProfileFunctions& profile,
                        const FourierSeries& shape, GridPtr grid);
FourierSeries functional_F(const ProblemConstants& consts, const ProfileFunctions& profile,
                           const FourierSeries& shape, GridPtr grid);
FourierSeries functional_G(const ProblemConstants& consts, const ProfileFunctions& profile,
                           const FourierSeries& shape, GridPtr grid);
ShapeState solve_shape(const ProblemConstants& consts, const ProfileFunctions& profile,
                       GridPtr grid, ShapeOptions options = {});

}  // namespace gsod
