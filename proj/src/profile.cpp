#include "gsod/profile.hpp"

#include <cmath>

#include "gsod/errors.hpp"

namespace gsod {

double Polynomial::derivative(double x, int k) const {
  // Horner on the k-th derivative coefficients.
  double total = 0.0;
  for (int n = static_cast<int>(coeffs_.size()) - 1; n >= k; --n) {
    double factor = 1.0;
    for (int j = 0; j < k; ++j) factor *= (n - j);
    total = total * x + factor * coeffs_[static_cast<std::size_t>(n)];
  }
  return total;
}

const char* to_string(ProfileFamily family) {
  return family == ProfileFamily::generic ? "generic" : "degenerate";
}

ProfileFamily family_from_string(const std::string& name) {
  if (name == "generic") return ProfileFamily::generic;
  if (name == "degenerate") return ProfileFamily::degenerate;
  fail(ErrorKind::InvalidProfile, "unknown profile family '" + name + "'");
}

void ProfileFunctions::validate() const {
  const double f0 = ftilde(0.0);
  const double f1 = ftilde.derivative(0.0, 1);
  const double h1 = h.derivative(0.0, 1);
  if (f0 != 0.0) fail(ErrorKind::InvalidProfile, "F̃(0) must vanish");
  if (!(h1 > 0.0)) fail(ErrorKind::InvalidProfile, "H'(0) must be positive");
  if (family == ProfileFamily::generic) {
    if (!(f1 < 0.0)) fail(ErrorKind::InvalidProfile, "generic family needs F̃'(0) < 0");
  } else {
    if (f1 != 0.0) fail(ErrorKind::InvalidProfile, "degenerate family needs F̃'(0) = 0");
  }
}

Polynomial ProfileFunctions::linear_H(double slope, double offset) {
  return Polynomial({offset, slope});
}

Polynomial ProfileFunctions::linear_Ftilde(double b) { return Polynomial({0.0, -2.0 * b}); }

Polynomial ProfileFunctions::quadratic_Ftilde(double c) { return Polynomial({0.0, 0.0, c}); }

ProfileFunctions ProfileFunctions::make(Polynomial ftilde, Polynomial h, ProfileFamily family) {
  ProfileFunctions p{std::move(ftilde), std::move(h), family};
  p.validate();
  return p;
}

ProfileFunctions fixture_a_profile() {
  return ProfileFunctions::make(ProfileFunctions::linear_Ftilde(1.0),
                                ProfileFunctions::linear_H(1.0), ProfileFamily::generic);
}

ProfileFunctions fixture_b_profile() {
  return ProfileFunctions::make(ProfileFunctions::quadratic_Ftilde(1.0),
                                ProfileFunctions::linear_H(1.0), ProfileFamily::degenerate);
}

}  // namespace gsod
