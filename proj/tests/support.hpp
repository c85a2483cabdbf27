#pragma once

#include <cmath>
#include <vector>

#include "polydisk/mapping.hpp"
#include "polydisk/rng.hpp"

namespace testing {

using namespace polydisk;

struct ScalarTerm {
  std::vector<int> k;
  Complex a;
  Complex b;
};

inline PluriharmonicMap scalar_series(std::size_t n, std::initializer_list<ScalarTerm> terms) {
  TermTable t;
  for (const auto& s : terms) t[MultiIndex(s.k)] = SeriesTerm{{s.a}, {s.b}};
  return PluriharmonicMap::from_terms(n, 1, std::move(t));
}

inline PolydiskPoint random_point(RandomStream& rs, std::size_t n, double max_abs) {
  CVector z(n);
  for (auto& c : z) c = rs.in_disk(max_abs);
  return PolydiskPoint(z);
}

// Independent evaluation of a series map straight from its term table.
inline CVector naive_series_value(const PluriharmonicMap& f, std::span<const Complex> z) {
  CVector out(f.codim());
  for (const auto& [k, term] : f.terms()) {
    Complex zk = 1.0;
    for (std::size_t j = 0; j < k.size(); ++j) zk *= std::pow(z[j], k[j]);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += term.a[i] * zk + std::conj(term.b[i] * zk);
  }
  return out;
}

inline double max_abs_diff(std::span<const Complex> x, std::span<const Complex> y) {
  double m = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

}  // namespace testing
