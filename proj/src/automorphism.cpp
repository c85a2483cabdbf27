#include "polydisk/automorphism.hpp"

#include <cmath>

#include "polydisk/errors.hpp"

namespace polydisk {

PolydiskAutomorphism::PolydiskAutomorphism(PolydiskPoint center)
    : PolydiskAutomorphism(center, CVector(center.dim(), Complex{1.0, 0.0})) {}

PolydiskAutomorphism::PolydiskAutomorphism(PolydiskPoint center, CVector rotations)
    : center_(std::move(center)), rotations_(std::move(rotations)) {
  if (rotations_.size() != center_.dim()) {
    throw DomainError("automorphism: one rotation per coordinate required");
  }
  for (const auto& u : rotations_) {
    if (std::abs(std::abs(u) - 1.0) > 1e-12) throw DomainError("automorphism: rotation not unimodular");
  }
}

PolydiskAutomorphism PolydiskAutomorphism::identity(std::size_t n) {
  return PolydiskAutomorphism(PolydiskPoint(CVector(n)));
}

CVector PolydiskAutomorphism::apply(std::span<const Complex> zeta) const {
  if (zeta.size() != dim()) throw DomainError("automorphism: dimension mismatch");
  CVector out(dim());
  for (std::size_t j = 0; j < dim(); ++j) {
    const Complex c = center_[j];
    const Complex w = rotations_[j] * zeta[j];
    out[j] = (c + w) / (1.0 + std::conj(c) * w);
  }
  return out;
}

PolydiskPoint PolydiskAutomorphism::operator()(const PolydiskPoint& zeta) const {
  return PolydiskPoint(apply(zeta.coords()));
}

CMatrix automorphism_derivative_at_zero(const PolydiskAutomorphism& phi) {
  const std::size_t n = phi.dim();
  CMatrix d(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    d(j, j) = phi.rotations()[j] * (1.0 - std::norm(phi.center()[j]));
  }
  return d;
}

}  // namespace polydisk
