#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace polydisk {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kFourOverPi = 4.0 / kPi;

/// max_j |z_j|
double inf_norm(std::span<const Complex> z);

/// Euclidean norm of a complex vector.
double euclid_norm(std::span<const Complex> v);

/// Dense row-major complex matrix; only what Jacobians and automorphism derivatives need.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  /// this * v
  CVector apply(std::span<const Complex> v) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// A point of the open unit polydisk: every coordinate strictly inside the unit disk.
class PolydiskPoint {
 public:
  explicit PolydiskPoint(CVector coords);
  PolydiskPoint(std::initializer_list<Complex> coords) : PolydiskPoint(CVector(coords)) {}

  std::size_t dim() const { return coords_.size(); }
  std::span<const Complex> coords() const { return coords_; }
  const Complex& operator[](std::size_t j) const { return coords_[j]; }
  double inf_norm() const { return polydisk::inf_norm(coords_); }

 private:
  CVector coords_;
};

}  // namespace polydisk
