#pragma once

#include <complex>
#include <map>
#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace gsod {

/// Real 2π-periodic function stored as the finite set of complex amplitudes
/// f_n, |n| <= order, of f(θ) = Σ f_n e^{inθ}. The reality condition
/// f_{-n} = conj(f_n) is maintained by every mutator.
///
/// Two flags may be attached: `even` (f(θ) = f(-θ), hence real amplitudes)
/// and `X` (even and ⟨f, cos θ⟩ = 0). Both are verified when set.
class FourierSeries {
 public:
  using Complex = std::complex<double>;

  FourierSeries() : FourierSeries(0) {}
  explicit FourierSeries(int order);

  static FourierSeries constant(double value);
  static FourierSeries cosine(int n, double amplitude = 1.0);
  static FourierSeries sine(int n, double amplitude = 1.0);
  /// Throws InvalidArgument when the map violates f_{-n} = conj(f_n).
  static FourierSeries from_modes(const std::map<int, Complex>& modes);
  /// Samples at θ_k = 2πk/M; keeps modes |n| <= min(order, (M-1)/2).
  static FourierSeries from_samples(std::span<const double> samples, int order);

  int order() const noexcept { return order_; }
  Complex coeff(int n) const noexcept;
  Complex operator[](int n) const noexcept { return coeff(n); }
  /// Sets f_n and f_{-n} = conj(f_n); grows the order if needed. Clears flags.
  void set_mode(int n, Complex value);

  double operator()(double theta) const { return derivative_at(theta, 0); }
  double derivative_at(double theta, int k) const;
  std::vector<double> sample(int count) const;
  double sup_norm() const;
  double max_coeff() const;

  FourierSeries derivative() const;
  FourierSeries times_cos() const;
  FourierSeries truncated(int order) const;
  FourierSeries even_part() const;
  FourierSeries conj_reflect() const;  // θ -> -θ

  /// ⟨f, g⟩ = ∫_0^{2π} f g dθ.
  double inner(const FourierSeries& other) const;

  bool is_even(double tol = 1e-12) const;
  bool orthogonal_to_cos(double tol = 1e-12) const;

  bool flagged_even() const noexcept { return even_; }
  bool flagged_X() const noexcept { return x_member_; }
  FourierSeries& mark_even(double tol = 1e-12);
  FourierSeries& mark_X(double tol = 1e-12);

  FourierSeries& operator+=(const FourierSeries& rhs);
  FourierSeries& operator-=(const FourierSeries& rhs);
  FourierSeries& operator*=(double s);
  friend FourierSeries operator+(FourierSeries a, const FourierSeries& b) { return a += b; }
  friend FourierSeries operator-(FourierSeries a, const FourierSeries& b) { return a -= b; }
  friend FourierSeries operator*(FourierSeries a, double s) { return a *= s; }
  friend FourierSeries operator*(double s, FourierSeries a) { return a *= s; }

  bool operator==(const FourierSeries& other) const;

 private:
  void grow(int order);
  Complex& at(int n) { return coeffs_[static_cast<std::size_t>(n + order_)]; }

  int order_;
  std::vector<Complex> coeffs_;
  bool even_ = false;
  bool x_member_ = false;
};

/// JSON array of [n, re, im] triples, one per stored mode.
nlohmann::json to_json(const FourierSeries& f);
FourierSeries fourier_from_json(const nlohmann::json& j);

}  // namespace gsod
