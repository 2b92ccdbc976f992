#pragma once

#include <string>
#include <vector>

namespace gsod {

/// Polynomial in ψ with coefficients in increasing degree.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {}

  double operator()(double x) const { return derivative(x, 0); }
  double derivative(double x, int k) const;
  const std::vector<double>& coeffs() const noexcept { return coeffs_; }

 private:
  std::vector<double> coeffs_;
};

enum class ProfileFamily { generic, degenerate };

const char* to_string(ProfileFamily family);
ProfileFamily family_from_string(const std::string& name);

/// The pair (F̃, H) defining the swirl and Bernoulli functions.
///
/// generic:    F̃(0) = 0, F̃'(0) < 0, H'(0) > 0, and F(ψ) = [ε²F_R + F̃(ψ)]^{1/2}
/// degenerate: F̃(0) = F̃'(0) = 0, H'(0) > 0, and F(ψ) = εF_R + F̃(ψ)
struct ProfileFunctions {
  Polynomial ftilde;
  Polynomial h;
  ProfileFamily family = ProfileFamily::generic;
  /// Hölder exponent of the profiles; informational only.
  double smoothness = 2.5;

  /// Throws InvalidProfile if the family conditions fail.
  void validate() const;

  // Named built-ins.
  static Polynomial linear_H(double slope, double offset = 0.0);
  static Polynomial linear_Ftilde(double b);  // F̃ = -2bψ
  static Polynomial quadratic_Ftilde(double c);  // F̃ = cψ²

  static ProfileFunctions make(Polynomial ftilde, Polynomial h, ProfileFamily family);
};

/// H = ψ, F̃ = -2ψ.
ProfileFunctions fixture_a_profile();
/// H = ψ, F̃ = ψ², degenerate family.
ProfileFunctions fixture_b_profile();

}  // namespace gsod
