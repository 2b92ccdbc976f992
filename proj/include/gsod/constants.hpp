#pragma once

#include "gsod/profile.hpp"

namespace gsod {

/// Derived constants of the rescaled problem for one profile, R and ε.
struct ProblemConstants {
  double R = 0;
  double eps = 0;
  double a = 0;   // H'(0)
  double b = 0;   // -½F̃'(0), zero for the degenerate family
  double A0 = 0;  // (aR² + b)/4
  double A1 = 0;  // (5aR² + b)/(16R)
  double kappa = 0;  // 4A0(A0 - A1 R)
  double FR = 0;
  ProfileFamily family = ProfileFamily::generic;
  bool admissible = false;

  /// Leading-order compatibility constant 4A0A1/R.
  double c_limit() const { return 4.0 * A0 * A1 / R; }
  /// F(0) for the swirl function of the family.
  double swirl_at_zero() const;
  /// F(0)², the value entering the Neumann condition.
  double swirl_at_zero_squared() const;
};

/// Throws InadmissibleR when aR² - 3b <= 0 (generic) or InvalidArgument for R <= 0.
ProblemConstants make_constants(const ProfileFunctions& profile, double R, double eps);

}  // namespace gsod
