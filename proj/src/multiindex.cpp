#include "polydisk/multiindex.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "polydisk/errors.hpp"

namespace polydisk {

MultiIndex::MultiIndex(std::vector<int> components) : c_(std::move(components)) {
  if (c_.empty()) throw DomainError("multi-index must have length >= 1");
  for (int v : c_) {
    if (v < 0) throw DomainError("multi-index components must be nonnegative");
  }
}

MultiIndex MultiIndex::zero(std::size_t n) { return MultiIndex(std::vector<int>(n, 0)); }

MultiIndex MultiIndex::unit(std::size_t n, std::size_t j) {
  std::vector<int> c(n, 0);
  c.at(j) = 1;
  return MultiIndex(std::move(c));
}

int MultiIndex::degree() const { return std::accumulate(c_.begin(), c_.end(), 0); }

std::uint64_t MultiIndex::factorial() const {
  std::uint64_t result = 1;
  for (int v : c_) {
    for (int i = 2; i <= v; ++i) {
      if (__builtin_mul_overflow(result, static_cast<std::uint64_t>(i), &result)) {
        throw std::overflow_error("multi-index factorial overflows 64 bits");
      }
    }
  }
  return result;
}

bool MultiIndex::dominates(const MultiIndex& other) const {
  if (other.size() != size()) return false;
  for (std::size_t j = 0; j < c_.size(); ++j) {
    if (c_[j] < other.c_[j]) return false;
  }
  return true;
}

int MultiIndex::min_component() const { return *std::min_element(c_.begin(), c_.end()); }

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  if (other.size() != size()) throw DomainError("multi-index length mismatch");
  std::vector<int> c(c_);
  for (std::size_t j = 0; j < c.size(); ++j) c[j] += other.c_[j];
  return MultiIndex(std::move(c));
}

MultiIndex MultiIndex::operator-(const MultiIndex& other) const {
  if (!dominates(other)) throw DomainError("multi-index subtraction would go negative");
  std::vector<int> c(c_);
  for (std::size_t j = 0; j < c.size(); ++j) c[j] -= other.c_[j];
  return MultiIndex(std::move(c));
}

std::strong_ordering MultiIndex::operator<=>(const MultiIndex& other) const {
  if (auto d = degree() <=> other.degree(); d != 0) return d;
  return c_ <=> other.c_;
}

namespace {

void fill_homogeneous(std::size_t pos, int remaining, int min_component, std::vector<int>& cur,
                      std::vector<MultiIndex>& out) {
  const std::size_t n = cur.size();
  if (pos + 1 == n) {
    if (remaining >= min_component) {
      cur[pos] = remaining;
      out.emplace_back(cur);
    }
    return;
  }
  // Leave room for the trailing components' minimums.
  const int tail_min = static_cast<int>(n - pos - 1) * min_component;
  for (int v = min_component; v <= remaining - tail_min; ++v) {
    cur[pos] = v;
    fill_homogeneous(pos + 1, remaining - v, min_component, cur, out);
  }
}

}  // namespace

std::vector<MultiIndex> mi_enumerate(std::size_t n, int max_degree, int min_component) {
  if (n == 0) throw DomainError("dimension must be >= 1");
  if (max_degree < 0) throw DomainError("max_degree must be >= 0");
  min_component = std::max(min_component, 0);
  std::vector<MultiIndex> out;
  std::vector<int> cur(n, 0);
  for (int d = static_cast<int>(n) * min_component; d <= max_degree; ++d) {
    fill_homogeneous(0, d, min_component, cur, out);
  }
  return out;
}

std::vector<MultiIndex> mi_homogeneous(std::size_t n, int m) {
  if (n == 0) throw DomainError("dimension must be >= 1");
  std::vector<MultiIndex> out;
  if (m < 0) return out;
  std::vector<int> cur(n, 0);
  fill_homogeneous(0, m, 0, cur, out);
  return out;
}

double falling_factorial(const MultiIndex& k, const MultiIndex& alpha) {
  double f = 1.0;
  for (std::size_t j = 0; j < k.size(); ++j) {
    for (int i = 0; i < alpha[j]; ++i) f *= static_cast<double>(k[j] - i);
  }
  return f;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace polydisk
