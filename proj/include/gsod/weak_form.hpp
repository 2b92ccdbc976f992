#pragma once

#include <cstdint>
#include <vector>

#include "gsod/euler_assembly.hpp"

namespace gsod {

/// Residuals of the weak stationary Euler identities
///   ∫ [(u⊗u):∇w + p div w] dx = 0,   ∫ u·∇φ dx = 0
/// against axisymmetric bump test fields. Each residual is |∫ integrand| divided
/// by ∫ |integrand|, so it is scale free; it is 0 when the integrand vanishes.
struct WeakReport {
  std::vector<double> momentum;
  std::vector<double> divergence;
  double max_momentum = 0;
  double max_divergence = 0;
  double cells_across = 0;  // support size over grid spacing
  long evaluations = 0;
};

struct WeakOptions {
  int refine_depth = 4;    // recursive 2×2 splits of cells cut by ∂Ω
  double min_cells = 8.0;  // GridTooCoarse below this many cells across the support
};

/// Quadrature over the cells of `field`; cells whose corners disagree on the
/// inside mask are refined through `field.sampler`.
WeakReport verify_weak(const AxiField& field, int n_tests, std::uint64_t seed,
                       const WeakOptions& options = {});

}  // namespace gsod
