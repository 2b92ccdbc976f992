#include "gsod/fourier_series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <nlohmann/json.hpp>

#include "gsod/errors.hpp"

namespace gsod {

using Complex = FourierSeries::Complex;

FourierSeries::FourierSeries(int order) : order_(order) {
  if (order < 0) fail(ErrorKind::InvalidArgument, "negative Fourier order");
  coeffs_.assign(static_cast<std::size_t>(2 * order + 1), Complex{});
}

FourierSeries FourierSeries::constant(double value) {
  FourierSeries f(0);
  f.at(0) = value;
  f.even_ = true;
  return f;
}

FourierSeries FourierSeries::cosine(int n, double amplitude) {
  n = std::abs(n);
  FourierSeries f(n);
  if (n == 0) {
    f.at(0) = amplitude;
  } else {
    f.at(n) = 0.5 * amplitude;
    f.at(-n) = 0.5 * amplitude;
  }
  f.even_ = true;
  return f;
}

FourierSeries FourierSeries::sine(int n, double amplitude) {
  FourierSeries f(std::abs(n));
  if (n == 0) return f;
  // sin nθ = (e^{inθ} - e^{-inθ}) / 2i
  f.set_mode(n, Complex(0.0, -0.5 * amplitude));
  return f;
}

FourierSeries FourierSeries::from_modes(const std::map<int, Complex>& modes) {
  int order = 0;
  for (const auto& [n, v] : modes) order = std::max(order, std::abs(n));
  FourierSeries f(order);
  for (const auto& [n, v] : modes) f.at(n) = v;
  double scale = 1.0;
  for (const auto& v : f.coeffs_) scale = std::max(scale, std::abs(v));
  for (int n = 0; n <= order; ++n) {
    const Complex a = f.at(n);
    const Complex b = f.at(-n);
    const bool given_pos = modes.count(n) > 0;
    const bool given_neg = modes.count(-n) > 0;
    if (given_pos && given_neg) {
      if (std::abs(a - std::conj(b)) > 1e-12 * scale) {
        fail(ErrorKind::InvalidArgument, "Fourier modes violate f_{-n} = conj(f_n) at n=" +
                                             std::to_string(n));
      }
    } else if (given_pos) {
      f.at(-n) = std::conj(a);
    } else if (given_neg) {
      f.at(n) = std::conj(b);
    }
  }
  if (std::abs(f.at(0).imag()) > 1e-12 * scale)
    fail(ErrorKind::InvalidArgument, "mode 0 of a real series must be real");
  f.at(0) = f.at(0).real();
  return f;
}

FourierSeries FourierSeries::from_samples(std::span<const double> samples, int order) {
  const int m = static_cast<int>(samples.size());
  if (m == 0) fail(ErrorKind::InvalidArgument, "no samples");
  order = std::min(order, (m - 1) / 2);
  FourierSeries f(order);
  const double step = 2.0 * std::numbers::pi / m;
  for (int n = 0; n <= order; ++n) {
    Complex sum{};
    for (int k = 0; k < m; ++k) {
      const double phase = -n * step * k;
      sum += samples[static_cast<std::size_t>(k)] * Complex(std::cos(phase), std::sin(phase));
    }
    sum /= static_cast<double>(m);
    if (n == 0) sum = sum.real();
    f.at(n) = sum;
    f.at(-n) = std::conj(sum);
  }
  return f;
}

Complex FourierSeries::coeff(int n) const noexcept {
  if (std::abs(n) > order_) return {};
  return coeffs_[static_cast<std::size_t>(n + order_)];
}

void FourierSeries::grow(int order) {
  if (order <= order_) return;
  std::vector<Complex> next(static_cast<std::size_t>(2 * order + 1));
  for (int n = -order_; n <= order_; ++n) next[static_cast<std::size_t>(n + order)] = coeff(n);
  coeffs_ = std::move(next);
  order_ = order;
}

void FourierSeries::set_mode(int n, Complex value) {
  grow(std::abs(n));
  if (n == 0) value = value.real();
  at(n) = value;
  at(-n) = std::conj(value);
  even_ = false;
  x_member_ = false;
}

double FourierSeries::derivative_at(double theta, int k) const {
  // Real part of Σ (in)^k f_n e^{inθ}, summed over n >= 0 with the conjugate pair folded in.
  double total = (k == 0) ? coeff(0).real() : 0.0;
  for (int n = 1; n <= order_; ++n) {
    Complex factor = std::pow(Complex(0.0, n), k);
    total += 2.0 * (factor * coeff(n) * std::polar(1.0, n * theta)).real();
  }
  return total;
}

std::vector<double> FourierSeries::sample(int count) const {
  std::vector<double> out(static_cast<std::size_t>(count));
  const double step = 2.0 * std::numbers::pi / count;
  for (int k = 0; k < count; ++k) out[static_cast<std::size_t>(k)] = (*this)(step * k);
  return out;
}

double FourierSeries::sup_norm() const {
  const auto values = sample(std::max(64, 16 * (order_ + 1)));
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

double FourierSeries::max_coeff() const {
  double m = 0.0;
  for (const auto& v : coeffs_) m = std::max(m, std::abs(v));
  return m;
}

FourierSeries FourierSeries::derivative() const {
  FourierSeries out(order_);
  for (int n = -order_; n <= order_; ++n) out.at(n) = Complex(0.0, n) * coeff(n);
  return out;
}

FourierSeries FourierSeries::times_cos() const {
  // cos θ · e^{inθ} = ½ e^{i(n+1)θ} + ½ e^{i(n-1)θ}
  FourierSeries out(order_ + 1);
  for (int n = -order_; n <= order_; ++n) {
    out.at(n + 1) += 0.5 * coeff(n);
    out.at(n - 1) += 0.5 * coeff(n);
  }
  out.even_ = even_;
  return out;
}

FourierSeries FourierSeries::truncated(int order) const {
  FourierSeries out(order);
  for (int n = -std::min(order, order_); n <= std::min(order, order_); ++n) out.at(n) = coeff(n);
  out.even_ = even_;
  out.x_member_ = x_member_;
  return out;
}

FourierSeries FourierSeries::even_part() const {
  // f_e(θ) = ½[f(θ) + f(-θ)] has amplitudes Re f_n.
  FourierSeries out(order_);
  for (int n = -order_; n <= order_; ++n) out.at(n) = coeff(n).real();
  out.even_ = true;
  return out;
}

FourierSeries FourierSeries::conj_reflect() const {
  FourierSeries out(order_);
  for (int n = -order_; n <= order_; ++n) out.at(n) = coeff(-n);
  out.even_ = even_;
  out.x_member_ = x_member_;
  return out;
}

double FourierSeries::inner(const FourierSeries& other) const {
  const int n_max = std::min(order_, other.order_);
  Complex sum{};
  for (int n = -n_max; n <= n_max; ++n) sum += coeff(n) * other.coeff(-n);
  return 2.0 * std::numbers::pi * sum.real();
}

bool FourierSeries::is_even(double tol) const {
  const double scale = std::max(1.0, max_coeff());
  for (const auto& v : coeffs_)
    if (std::abs(v.imag()) > tol * scale) return false;
  return true;
}

bool FourierSeries::orthogonal_to_cos(double tol) const {
  return std::abs(coeff(1).real()) <= tol * std::max(1.0, max_coeff());
}

FourierSeries& FourierSeries::mark_even(double tol) {
  if (!is_even(tol)) fail(ErrorKind::InvalidArgument, "series is not even");
  for (auto& v : coeffs_) v = v.real();
  even_ = true;
  return *this;
}

FourierSeries& FourierSeries::mark_X(double tol) {
  mark_even(tol);
  if (!orthogonal_to_cos(tol)) fail(ErrorKind::InvalidArgument, "series has a cos θ component");
  if (order_ >= 1) {
    at(1) = 0.0;
    at(-1) = 0.0;
  }
  x_member_ = true;
  return *this;
}

FourierSeries& FourierSeries::operator+=(const FourierSeries& rhs) {
  grow(rhs.order_);
  for (int n = -rhs.order_; n <= rhs.order_; ++n) at(n) += rhs.coeff(n);
  even_ = even_ && rhs.even_;
  x_member_ = x_member_ && rhs.x_member_;
  return *this;
}

FourierSeries& FourierSeries::operator-=(const FourierSeries& rhs) {
  grow(rhs.order_);
  for (int n = -rhs.order_; n <= rhs.order_; ++n) at(n) -= rhs.coeff(n);
  even_ = even_ && rhs.even_;
  x_member_ = x_member_ && rhs.x_member_;
  return *this;
}

FourierSeries& FourierSeries::operator*=(double s) {
  for (auto& v : coeffs_) v *= s;
  return *this;
}

bool FourierSeries::operator==(const FourierSeries& other) const {
  const int n_max = std::max(order_, other.order_);
  for (int n = -n_max; n <= n_max; ++n)
    if (coeff(n) != other.coeff(n)) return false;
  return true;
}

nlohmann::json to_json(const FourierSeries& f) {
  auto out = nlohmann::json::array();
  for (int n = -f.order(); n <= f.order(); ++n) {
    const auto c = f.coeff(n);
    out.push_back({n, c.real(), c.imag()});
  }
  return out;
}

FourierSeries fourier_from_json(const nlohmann::json& j) {
  if (!j.is_array()) fail(ErrorKind::InvalidArgument, "Fourier series JSON must be an array");
  std::map<int, Complex> modes;
  for (const auto& triple : j) {
    if (!triple.is_array() || triple.size() != 3)
      fail(ErrorKind::InvalidArgument, "Fourier series entries must be [n, re, im]");
    modes[triple[0].get<int>()] = Complex(triple[1].get<double>(), triple[2].get<double>());
  }
  if (modes.empty()) return FourierSeries(0);
  return FourierSeries::from_modes(modes);
}

}  // namespace gsod
