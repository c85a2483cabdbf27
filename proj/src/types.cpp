#include "polydisk/types.hpp"

#include <cmath>
#include <string>

#include "polydisk/errors.hpp"

namespace polydisk {

double inf_norm(std::span<const Complex> z) {
  double m = 0.0;
  for (const auto& v : z) m = std::max(m, std::abs(v));
  return m;
}

double euclid_norm(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

CVector CMatrix::apply(std::span<const Complex> v) const {
  if (v.size() != cols_) throw DomainError("matrix-vector dimension mismatch");
  CVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    Complex s = 0.0;
    for (std::size_t c = 0; c < cols_; ++c) s += (*this)(r, c) * v[c];
    out[r] = s;
  }
  return out;
}

PolydiskPoint::PolydiskPoint(CVector coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw DomainError("polydisk point needs at least one coordinate");
  for (std::size_t j = 0; j < coords_.size(); ++j) {
    const double r = std::abs(coords_[j]);
    if (!std::isfinite(r)) throw DomainError("polydisk point has a non-finite coordinate");
    if (r >= 1.0) {
      throw DomainError("point not inside the open polydisk: |z_" + std::to_string(j + 1) +
                        "| = " + std::to_string(r));
    }
  }
}

}  // namespace polydisk
