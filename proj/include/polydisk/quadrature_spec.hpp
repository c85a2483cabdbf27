#pragma once

#include <vector>

namespace polydisk {

/// Node count and circle radii for trapezoidal sums on tori.
/// An empty `radii` means "use the operation's default radius".
struct QuadratureSpec {
  int nodes_per_dim = 64;
  std::vector<double> radii;

  /// Throws DomainError unless nodes_per_dim >= 8 is a power of two and
  /// every radius is in (0, 1).
  void validate() const;
};

}  // namespace polydisk
