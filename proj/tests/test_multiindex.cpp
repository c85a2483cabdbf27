#include <algorithm>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "polydisk/multiindex.hpp"
#include "polydisk/rng.hpp"

using namespace polydisk;

TEST_CASE("degree") {
  CHECK(mi_degree({0, 0, 0}) == 0);
  CHECK(mi_degree({2, 1, 3}) == 6);
  CHECK(mi_degree({5}) == 5);
}

TEST_CASE("factorial") {
  CHECK(mi_factorial({0, 0}) == 1);
  CHECK(mi_factorial({2, 1, 3}) == 12);
  CHECK(mi_factorial({4}) == 24);
  CHECK(mi_factorial({20}) == 2432902008176640000ull);
}

TEST_CASE("factorial overflow is reported") {
  CHECK_THROWS_AS(mi_factorial({21}), std::overflow_error);
  CHECK_THROWS_AS(mi_factorial({20, 4}), std::overflow_error);
}

TEST_CASE("invalid indices are rejected") {
  CHECK_THROWS_AS(MultiIndex(std::vector<int>{}), std::invalid_argument);
  CHECK_THROWS_AS(MultiIndex({1, -1}), std::invalid_argument);
}

TEST_CASE("enumerate examples") {
  CHECK(mi_enumerate(1, 2, 0) == std::vector<MultiIndex>{{0}, {1}, {2}});
  CHECK(mi_enumerate(2, 1, 0) == std::vector<MultiIndex>{{0, 0}, {0, 1}, {1, 0}});
  CHECK(mi_enumerate(2, 2, 1) == std::vector<MultiIndex>{{1, 1}});
  CHECK(mi_enumerate(3, 2, 1).empty());
}

TEST_CASE("enumerate is graded lex, unique and complete") {
  for (std::size_t n = 1; n <= 4; ++n) {
    for (int d = 0; d <= 6; ++d) {
      const auto all = mi_enumerate(n, d, 0);
      CHECK(all.size() == static_cast<std::size_t>(binomial(static_cast<int>(n) + d, static_cast<int>(n))));
      CHECK(std::is_sorted(all.begin(), all.end()));
      CHECK(std::set<MultiIndex>(all.begin(), all.end()).size() == all.size());
      for (std::size_t i = 1; i < all.size(); ++i) CHECK(all[i - 1].degree() <= all[i].degree());
      for (const auto& k : all) CHECK(k.degree() <= d);
    }
  }
}

TEST_CASE("homogeneous slices partition the enumeration") {
  std::size_t total = 0;
  for (int m = 0; m <= 5; ++m) {
    for (const auto& k : mi_homogeneous(3, m)) CHECK(k.degree() == m);
    total += mi_homogeneous(3, m).size();
  }
  CHECK(total == mi_enumerate(3, 5).size());
}

TEST_CASE("degree additivity and factorial symmetry") {
  RandomStream rs(11, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rs.next_u64() % 4;
    std::vector<int> x(n), y(n);
    for (std::size_t j = 0; j < n; ++j) {
      x[j] = static_cast<int>(rs.next_u64() % 7);
      y[j] = static_cast<int>(rs.next_u64() % 7);
    }
    const MultiIndex a(x), b(y);
    CHECK(mi_degree(a + b) == mi_degree(a) + mi_degree(b));
    CHECK(mi_factorial(a) >= 1);
    auto p = x;
    std::reverse(p.begin(), p.end());
    CHECK(mi_factorial(MultiIndex(p)) == mi_factorial(a));
    std::rotate(p.begin(), p.begin() + 1, p.end());
    CHECK(mi_factorial(MultiIndex(p)) == mi_factorial(a));
  }
}

TEST_CASE("falling factorial and dominance") {
  CHECK(falling_factorial({5, 2}, {2, 1}) == doctest::Approx(20.0 * 2.0));
  CHECK(MultiIndex({3, 1}).dominates({1, 1}));
  CHECK_FALSE(MultiIndex({3, 0}).dominates({1, 1}));
  CHECK(MultiIndex({3, 1}) - MultiIndex({1, 1}) == MultiIndex({2, 0}));
}
