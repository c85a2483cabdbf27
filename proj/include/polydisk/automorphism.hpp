#pragma once

#include <span>

#include "polydisk/types.hpp"

namespace polydisk {

/// Coordinatewise Mobius automorphism of the polydisk,
///   phi_j(zeta) = (c_j + u_j zeta) / (1 + conj(c_j) u_j zeta),
/// i.e. rotate by the unimodular u_j, then move 0 to the center c_j.
class PolydiskAutomorphism {
 public:
  explicit PolydiskAutomorphism(PolydiskPoint center);
  PolydiskAutomorphism(PolydiskPoint center, CVector rotations);

  static PolydiskAutomorphism identity(std::size_t n);

  std::size_t dim() const { return center_.dim(); }
  const PolydiskPoint& center() const { return center_; }
  std::span<const Complex> rotations() const { return rotations_; }

  /// phi applied to any zeta with |zeta_j| <= 1; the closed polydisk maps into itself.
  CVector apply(std::span<const Complex> zeta) const;
  PolydiskPoint operator()(const PolydiskPoint& zeta) const;

 private:
  PolydiskPoint center_;
  CVector rotations_;
};

/// Diagonal matrix with entries u_j (1 - |c_j|^2).
CMatrix automorphism_derivative_at_zero(const PolydiskAutomorphism& phi);

}  // namespace polydisk
