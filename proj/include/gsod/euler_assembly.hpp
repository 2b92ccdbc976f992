#pragma once

#include <array>
#include <functional>
#include <memory>
#include <vector>

#include "gsod/shape_solver.hpp"

namespace gsod {

/// Everything known about the flow at one meridional point (r, z).
/// Outside the domain u = ω = 0, ψ = 0 and p is the outside pressure.
struct FlowSample {
  bool inside = false;
  double r = 0, z = 0;
  double psi = 0, psi_r = 0, psi_z = 0, psi_rr = 0, psi_rz = 0, psi_zz = 0;
  double swirl = 0;  // F(ψ)
  double u_r = 0, u_phi = 0, u_z = 0;
  double p = 0, p_r = 0, p_z = 0;
  double omega_r = 0, omega_phi = 0, omega_z = 0;
};

/// Converged overdetermined solution in physical variables:
///   ψ(r, z) = ε²φ((r - R)/ε, z/ε),  u = (1/r)[ψ_r e_z - ψ_z e_r + F(ψ) e_φ],
///   p = H(ψ) - (|∇ψ|² + F(ψ)²)/(2r²) inside and H(0) - c/2 outside.
class SolutionBundle {
 public:
  SolutionBundle(ProblemConstants consts, ProfileFunctions profile, ShapeState shape,
                 DirichletSolution solution);

  const ProblemConstants& constants() const noexcept { return consts_; }
  const ProfileFunctions& profile() const noexcept { return profile_; }
  const ShapeState& shape() const noexcept { return shape_; }
  const DirichletSolution& dirichlet() const noexcept { return sol_; }

  double F0() const noexcept { return consts_.swirl_at_zero(); }
  double c_phys() const noexcept { return consts_.eps * consts_.eps * shape_.c_eps_B; }
  double outside_pressure() const noexcept { return profile_.h(0.0) - 0.5 * c_phys(); }
  /// Largest distance of ∂Ω from (R, 0).
  double half_width() const noexcept { return half_width_; }

  /// F(ψ), F'(ψ) and (F²)'(ψ). Throws NegativeRadicand when F(ψ) would not be
  /// a positive real number.
  double swirl(double psi) const;
  double swirl_derivative(double psi, double swirl_value) const;
  double swirl_sq_derivative(double psi) const;

  bool inside(double r, double z) const;
  FlowSample at(double r, double z) const;
  /// Inside-limit sample at the reference point (ρ, θ) of the unit disk.
  FlowSample at_reference(double rho, double theta) const;

 private:
  CartesianJet cartesian_jet(double x, double y) const;
  FlowSample from_jet(double r, double z, const CartesianJet& j) const;

  ProblemConstants consts_;
  ProfileFunctions profile_;
  ShapeState shape_;
  DirichletSolution sol_;
  SpectralInterpolant interp_;
  double half_width_ = 0;
};

using BundlePtr = std::shared_ptr<const SolutionBundle>;

/// Uniform (r, z) box [R - w, R + w] × [-w, w], w = (1 + margin)·half_width.
struct GridSpec {
  int nr = 129;
  int nz = 129;
  double margin = 0.25;
  bool operator==(const GridSpec&) const = default;
};

/// Samples on a uniform meridional grid, plus the point evaluator they came from.
struct AxiField {
  int nr = 0, nz = 0;
  std::vector<double> r, z;
  std::vector<unsigned char> inside;
  std::vector<double> u_r, u_phi, u_z, p, omega_r, omega_phi, omega_z, psi;
  double outside_pressure = 0;
  double length_scale = 0;  // size of the support, used to judge grid resolution
  std::function<FlowSample(double, double)> sampler;

  int index(int i, int j) const noexcept { return j * nr + i; }
  double dr() const { return nr > 1 ? r[1] - r[0] : 0.0; }
  double dz() const { return nz > 1 ? z[1] - z[0] : 0.0; }
  void resize(int nr_, int nz_);
  void store(int i, int j, const FlowSample& s);
};

struct Assembly {
  BundlePtr bundle;
  AxiField field;
};

/// Re-solves the Dirichlet problem at the converged shape and samples the flow.
/// Throws NegativeRadicand if ε²F_R + F̃(ψ) (or εF_R + F̃(ψ)) is not positive on Ω.
Assembly assemble(const ShapeState& state, const ProblemConstants& consts,
                  const ProfileFunctions& profile, GridPtr grid, const GridSpec& spec = {});
BundlePtr make_bundle(const ShapeState& state, const ProblemConstants& consts,
                      const ProfileFunctions& profile, GridPtr grid);
AxiField sample_field(BundlePtr bundle, const GridSpec& spec);
/// Same samples as sample_field; ω is part of every FlowSample.
AxiField vorticity(BundlePtr bundle, const GridSpec& spec);

/// Centered-difference curl of u at (r, z) with step h.
std::array<double, 3> curl_fd(const SolutionBundle& bundle, double r, double z, double h);
/// max |ω - curl_h u| over probe points whose whole stencil lies inside Ω.
double curl_defect(const SolutionBundle& bundle, double h, int probes_per_axis = 24);

struct FieldChecks {
  double streamline = 0;        // max |u_r ψ_r + u_z ψ_z| / (max|u| max|∇ψ|)
  double steady_residual = 0;   // max |u·∇u + ∇p| / max |u·∇u|
  double pressure_jump = 0;     // sup |p_inside(∂Ω) - p_out|
  double tangency = 0;          // max |ν·u| / max |u| on ∂Ω
  double neumann_spread = 0;    // (max - min)/mean of [(∂_νψ)² + F(0)²]/r² on ∂Ω
  double min_swirl = 0;         // min F(ψ) over the sampled points of Ω
  double localizability = 0;
};

/// Pointwise identities over the inside nodes of `field` and a fine boundary sampling.
FieldChecks check_fields(const SolutionBundle& bundle, const AxiField& field,
                         int boundary_samples = 256);

/// max |u·∇p| / (max|u| max|∇p|) over inside nodes; 0 when u or ∇p vanish.
double localizability(const SolutionBundle& bundle, const AxiField& field);
double localizability(const std::vector<FlowSample>& samples);

}  // namespace gsod
