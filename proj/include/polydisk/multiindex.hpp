#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace polydisk {

/// n nonnegative integers (k_1, ..., k_n). Used both for series exponents and
/// for derivative orders.
class MultiIndex {
 public:
  explicit MultiIndex(std::vector<int> components);
  MultiIndex(std::initializer_list<int> components) : MultiIndex(std::vector<int>(components)) {}

  /// The all-zero index of length n.
  static MultiIndex zero(std::size_t n);
  /// The j-th unit index of length n.
  static MultiIndex unit(std::size_t n, std::size_t j);

  std::size_t size() const { return c_.size(); }
  int operator[](std::size_t j) const { return c_[j]; }
  std::span<const int> components() const { return c_; }

  int degree() const;
  /// prod_j k_j!  Throws std::overflow_error instead of wrapping.
  std::uint64_t factorial() const;

  /// Componentwise k >= other.
  bool dominates(const MultiIndex& other) const;
  int min_component() const;

  MultiIndex operator+(const MultiIndex& other) const;
  MultiIndex operator-(const MultiIndex& other) const;

  bool operator==(const MultiIndex&) const = default;
  /// Graded lexicographic: by degree, then lexicographically.
  std::strong_ordering operator<=>(const MultiIndex& other) const;

 private:
  std::vector<int> c_;
};

inline int mi_degree(const MultiIndex& k) { return k.degree(); }
inline std::uint64_t mi_factorial(const MultiIndex& k) { return k.factorial(); }

/// All indices of length n with every component >= min_component and
/// degree <= max_degree, in graded lexicographic order.
std::vector<MultiIndex> mi_enumerate(std::size_t n, int max_degree, int min_component = 0);

/// All indices of length n with degree exactly m (lexicographic).
std::vector<MultiIndex> mi_homogeneous(std::size_t n, int m);

/// prod_j k_j! / (k_j - alpha_j)!, the coefficient produced by differentiating z^k.
/// Requires k >= alpha componentwise. Returned as double; used in series differentiation.
double falling_factorial(const MultiIndex& k, const MultiIndex& alpha);

double binomial(int n, int k);

}  // namespace polydisk
