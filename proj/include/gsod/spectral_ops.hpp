#pragma once

#include "gsod/disk_field.hpp"
#include "gsod/fourier_series.hpp"

namespace gsod {

/// Harmonic extension into the unit disk: Σ f_n ρ^{|n|} e^{inθ}.
DiskField poisson_disk(const FourierSeries& f, GridPtr grid);

/// Harmonic extension into Ω_{εB} with boundary trace f, pulled back to the
/// unit disk. Solved by collocation of the mapped Laplacian.
DiskField poisson_domain(const FourierSeries& f, const FourierSeries& shape, double eps,
                         GridPtr grid);

/// Dirichlet–Neumann map of the unit disk: multiply mode n by |n|.
FourierSeries dn_map_disk(const FourierSeries& f);

/// Σ_{n≠0} f_n (ρ^{|n|-1} - ρ^{|n|+1}) e^{i(n - sgn n)θ}.
DiskField op_T(const FourierSeries& f, GridPtr grid);

/// ½ Σ_{n≠0} f_n e^{i(n - sgn n)θ}; equals -¼ ∂ρ(Tf) at ρ = 1.
FourierSeries op_Tprime(const FourierSeries& f);

/// Even part with the n = ±1 modes removed. Result carries the X flag.
FourierSeries project_X(const FourierSeries& f);

/// Evaluate Σ f_n g_n(ρ) e^{imθ} style sums on the grid; shared by the
/// closed-form operators above and by test oracles.
DiskField modal_field(GridPtr grid, const FourierSeries& f,
                      double (*radial)(int n, double rho), int (*target_mode)(int n));

}  // namespace gsod
