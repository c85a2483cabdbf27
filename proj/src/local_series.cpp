#include "local_series.hpp"

#include <cmath>

#include "polydisk/errors.hpp"

namespace polydisk::detail {

BoxSeries::BoxSeries(std::vector<int> bound) : bound_(std::move(bound)), stride_(bound_.size()) {
  std::size_t total = 1;
  for (std::size_t j = bound_.size(); j-- > 0;) {
    stride_[j] = total;
    total *= static_cast<std::size_t>(bound_[j] + 1);
  }
  data_.assign(total, Complex{});
}

BoxSeries BoxSeries::constant(std::vector<int> bound, Complex c) {
  BoxSeries s(std::move(bound));
  s.data_[0] = c;
  return s;
}

BoxSeries BoxSeries::univariate(std::vector<int> bound, std::size_t var,
                                std::span<const Complex> coeffs) {
  BoxSeries s(std::move(bound));
  const int top = std::min<int>(s.bound_[var], static_cast<int>(coeffs.size()) - 1);
  for (int m = 0; m <= top; ++m) s.data_[static_cast<std::size_t>(m) * s.stride_[var]] = coeffs[m];
  return s;
}

std::size_t BoxSeries::offset(std::span<const int> k) const {
  std::size_t off = 0;
  for (std::size_t j = 0; j < k.size(); ++j) off += static_cast<std::size_t>(k[j]) * stride_[j];
  return off;
}

Complex BoxSeries::coeff(std::span<const int> k) const {
  if (k.size() != bound_.size()) throw DomainError("series index length mismatch");
  for (std::size_t j = 0; j < k.size(); ++j) {
    if (k[j] < 0 || k[j] > bound_[j]) return Complex{};
  }
  return data_[offset(k)];
}

std::vector<int> BoxSeries::index_of(std::size_t i) const {
  std::vector<int> k(bound_.size());
  for (std::size_t j = 0; j < bound_.size(); ++j) {
    k[j] = static_cast<int>(i / stride_[j]);
    i %= stride_[j];
  }
  return k;
}

BoxSeries BoxSeries::operator*(const BoxSeries& other) const {
  if (other.bound_ != bound_) throw DomainError("series bound mismatch");
  BoxSeries out(bound_);
  const std::size_t n = bound_.size();
  std::vector<int> ki, kj;
  for (std::size_t i = 0; i < data_.size(); ++i) {
    if (data_[i] == Complex{}) continue;
    ki = index_of(i);
    for (std::size_t j = 0; j < other.data_.size(); ++j) {
      if (other.data_[j] == Complex{}) continue;
      kj = other.index_of(j);
      bool inside = true;
      for (std::size_t d = 0; d < n && inside; ++d) inside = ki[d] + kj[d] <= bound_[d];
      if (inside) out.data_[i + j] += data_[i] * other.data_[j];
    }
  }
  return out;
}

BoxSeries& BoxSeries::operator+=(const BoxSeries& other) {
  if (other.bound_ != bound_) throw DomainError("series bound mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

BoxSeries& BoxSeries::operator*=(Complex s) {
  for (auto& c : data_) c *= s;
  return *this;
}

std::vector<Complex> mobius_taylor(Complex lambda, Complex a, Complex z0, int order) {
  const Complex n0 = z0 - a;
  const Complex d0 = 1.0 - std::conj(a) * z0;
  const Complex c = std::conj(a) / d0;
  const Complex scale = lambda / d0;
  std::vector<Complex> out(static_cast<std::size_t>(order) + 1);
  out[0] = scale * n0;
  Complex cpow = 1.0;  // c^(m-1)
  for (int m = 1; m <= order; ++m) {
    out[m] = scale * (n0 * cpow * c + cpow);
    cpow *= c;
  }
  return out;
}

BoxSeries log_ratio_of(const BoxSeries& p) {
  const Complex p0 = p.constant_term();
  if (std::abs(p0) >= 1.0) throw DomainError("log-ratio expansion needs |p(0)| < 1");
  int top = 0;
  for (int b : p.bound()) top += b;

  BoxSeries delta = p;
  delta += BoxSeries::constant(p.bound(), -p0);

  BoxSeries out = BoxSeries::constant(p.bound(), std::log((1.0 + p0) / (1.0 - p0)));
  BoxSeries power = BoxSeries::constant(p.bound(), 1.0);
  const Complex up = 1.0 / (1.0 + p0);
  const Complex um = 1.0 / (1.0 - p0);
  Complex up_m = 1.0, um_m = 1.0;
  for (int m = 1; m <= top; ++m) {
    power = power * delta;
    up_m *= up;
    um_m *= um;
    // l^(m)(w) / m! = ((-1)^(m-1) (1+w)^-m + (1-w)^-m) / m
    const double sign = (m % 2 == 1) ? 1.0 : -1.0;
    BoxSeries term = power;
    term *= (sign * up_m + um_m) / static_cast<double>(m);
    out += term;
  }
  return out;
}

}  // namespace polydisk::detail
