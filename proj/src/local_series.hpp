#pragma once

// Truncated multivariate Taylor series over a box {k : k <= bound componentwise}.
// Backs exact derivatives and series expansions of the closed-form maps.

#include <span>
#include <vector>

#include "polydisk/multiindex.hpp"
#include "polydisk/types.hpp"

namespace polydisk::detail {

class BoxSeries {
 public:
  explicit BoxSeries(std::vector<int> bound);

  static BoxSeries constant(std::vector<int> bound, Complex c);
  /// Series depending only on variable `var`, with the given 1-D coefficients.
  static BoxSeries univariate(std::vector<int> bound, std::size_t var,
                              std::span<const Complex> coeffs);

  const std::vector<int>& bound() const { return bound_; }
  std::size_t size() const { return data_.size(); }

  Complex coeff(std::span<const int> k) const;
  Complex coeff(const MultiIndex& k) const { return coeff(k.components()); }
  Complex constant_term() const { return data_[0]; }

  BoxSeries operator*(const BoxSeries& other) const;
  BoxSeries& operator+=(const BoxSeries& other);
  BoxSeries& operator*=(Complex s);

  /// Multi-index of the flat slot i.
  std::vector<int> index_of(std::size_t i) const;
  Complex flat(std::size_t i) const { return data_[i]; }

 private:
  std::size_t offset(std::span<const int> k) const;

  std::vector<int> bound_;
  std::vector<std::size_t> stride_;
  std::vector<Complex> data_;
};

/// Taylor coefficients in t of lambda (z0 + t - a) / (1 - conj(a) (z0 + t)) up to `order`.
std::vector<Complex> mobius_taylor(Complex lambda, Complex a, Complex z0, int order);

/// log((1 + p) / (1 - p)) composed with a series p whose constant term lies in the unit disk.
BoxSeries log_ratio_of(const BoxSeries& p);

}  // namespace polydisk::detail
