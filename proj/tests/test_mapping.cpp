#include <cmath>

#include "doctest.h"
#include "polydisk/errors.hpp"
#include "polydisk/mapping.hpp"
#include "polydisk/quadrature.hpp"
#include "support.hpp"

using namespace polydisk;
using testing::scalar_series;
using testing::ScalarTerm;

namespace {
const Complex I{0.0, 1.0};
}

TEST_CASE("points must lie in the open polydisk") {
  CHECK_THROWS_AS(PolydiskPoint({Complex(1.0, 0.0)}), DomainError);
  CHECK_THROWS_AS(PolydiskPoint({Complex(0.1, 0.0), Complex(0.0, -1.2)}), DomainError);
  CHECK_THROWS_AS(PolydiskPoint({Complex(NAN, 0.0)}), DomainError);
  CHECK_THROWS_AS(PolydiskPoint(CVector{}), DomainError);
  CHECK_NOTHROW(PolydiskPoint({Complex(0.0, 0.0), Complex(0.0, 0.999)}));
}

TEST_CASE("evaluate examples") {
  const auto f = scalar_series(2, {{{1, 1}, 1.0, 0.0}});
  CHECK(std::abs(evaluate(f, {0.5, 0.5})[0] - 0.25) < 1e-15);

  const auto g = scalar_series(2, {{{2, 0}, 0.3, 0.0}, {{0, 1}, 0.0, 0.2}});
  CHECK(std::abs(evaluate(g, {0.5 * I, 0.4})[0] - 0.005) < 1e-15);

  const auto c = make_extremal_colonna(1.0, 0.0, 1.0);
  const Complex v = evaluate(c, {0.5 * I})[0];
  CHECK(v.real() == doctest::Approx(0.5903344).epsilon(1e-7));
  CHECK(std::abs(v - kFourOverPi * std::atan(0.5)) < 1e-14);
}

TEST_CASE("evaluate rejects dimension mismatch") {
  const auto f = scalar_series(2, {{{1, 1}, 1.0, 0.0}});
  CHECK_THROWS_AS(evaluate(f, {0.5}), DomainError);
}

TEST_CASE("term table validation") {
  TermTable t;
  t[MultiIndex{1, 0, 0}] = SeriesTerm{{1.0}, {0.0}};
  CHECK_THROWS_AS(PluriharmonicMap::from_terms(2, 1, t), DomainError);
  TermTable u;
  u[MultiIndex{1}] = SeriesTerm{{1.0, 2.0}, {0.0}};
  CHECK_THROWS_AS(PluriharmonicMap::from_terms(1, 1, u), DomainError);
}

TEST_CASE("derivative_exact examples") {
  const auto f = scalar_series(2, {{{1, 1}, 1.0, 0.0}, {{2, 0}, 0.0, 1.0}});
  for (const PolydiskPoint& z : {PolydiskPoint{0.0, 0.0}, PolydiskPoint{0.3 - 0.2 * I, 0.7 * I}}) {
    const auto d = derivative_exact(f, z, {1, 1});
    CHECK(std::abs(d.holo[0] - 1.0) < 1e-15);
    CHECK(std::abs(d.anti[0]) < 1e-15);
  }
  const auto g = scalar_series(2, {{{2, 0}, 0.3, 0.0}});
  const auto d = derivative_exact(g, {0.1, 0.7}, {2, 0});
  CHECK(std::abs(d.holo[0] - 0.6) < 1e-15);
  CHECK(std::abs(d.anti[0]) < 1e-15);
  CHECK_THROWS_AS(derivative_exact(g, {0.1, 0.7}, {1}), DomainError);
}

TEST_CASE("extremal derivatives at the origin") {
  const auto c = make_extremal_colonna(1.0, 0.0, 1.0);
  const auto d = derivative_exact(c, {0.0}, {1});
  CHECK(std::abs(d.holo[0] - (-2.0 * I / kPi)) < 1e-14);
  CHECK(std::abs(d.holo[0]) == doctest::Approx(0.6366198).epsilon(1e-7));
  CHECK(std::abs(d.anti[0]) == doctest::Approx(2.0 / kPi).epsilon(1e-14));
  CHECK(std::abs(d.holo[0]) + std::abs(d.anti[0]) == doctest::Approx(kFourOverPi).epsilon(1e-14));

  const auto jp = jacobian_pair(c, {0.0});
  CHECK(std::abs(std::abs(jp.d(0, 0)) - 2.0 / kPi) < 1e-14);
  CHECK(std::abs(std::abs(jp.dbar(0, 0)) - 2.0 / kPi) < 1e-14);
}

TEST_CASE("jacobian_pair examples") {
  const auto re = scalar_series(2, {{{1, 0}, 0.5, 0.5}});
  const auto jp = jacobian_pair(re, {0.0, 0.0});
  CHECK(jp.d.rows() == 1);
  CHECK(jp.d.cols() == 2);
  CHECK(std::abs(jp.d(0, 0) - 0.5) < 1e-15);
  CHECK(std::abs(jp.d(0, 1)) < 1e-15);
  CHECK(std::abs(jp.dbar(0, 0) - 0.5) < 1e-15);
  CHECK(std::abs(jp.dbar(0, 1)) < 1e-15);

  TermTable t;
  t[MultiIndex{1, 0}] = SeriesTerm{{1.0, 0.0}, {0.0, 0.0}};
  t[MultiIndex{0, 1}] = SeriesTerm{{0.0, 0.0}, {0.0, 1.0}};
  const auto v = PluriharmonicMap::from_terms(2, 2, t);
  const auto jv = jacobian_pair(v, {0.0, 0.0});
  const double want_d[2][2] = {{1, 0}, {0, 0}};
  const double want_dbar[2][2] = {{0, 0}, {0, 1}};
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      CHECK(std::abs(jv.d(r, c) - want_d[r][c]) < 1e-15);
      CHECK(std::abs(jv.dbar(r, c) - want_dbar[r][c]) < 1e-15);
    }
  }
}

TEST_CASE("jacobian columns are unit-order derivatives") {
  const auto f = random_bounded_map(3, 2, 4, 5, 0.05);
  RandomStream rs(1, 0);
  const auto z = testing::random_point(rs, 3, 0.8);
  const auto jp = jacobian_pair(f, z);
  for (std::size_t m = 0; m < 3; ++m) {
    const auto d = derivative_exact(f, z, MultiIndex::unit(3, m));
    for (std::size_t i = 0; i < 2; ++i) {
      CHECK(jp.d(i, m) == d.holo[i]);
      CHECK(jp.dbar(i, m) == d.anti[i]);
    }
  }
}

TEST_CASE("extremal construction") {
  CHECK_THROWS_AS(make_extremal_colonna({1.1, 0.0}, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(make_extremal_colonna(1.0, {1.0, 0.0}, 1.0), DomainError);
  CHECK_THROWS_AS(make_extremal_colonna(1.0, 0.0, {0.0, 0.9}), DomainError);
  const auto c = make_extremal_colonna(1.0, 0.0, 1.0);
  CHECK(std::abs(evaluate(c, {0.0})[0]) == 0.0);
  double last = 0.0;
  for (double t : {0.9, 0.99, 0.999, 0.99999}) {
    const double v = std::abs(evaluate(c, {t * I})[0]);
    CHECK(v > last);
    CHECK(v < 1.0);
    last = v;
  }
  CHECK(last > 0.999);
}

TEST_CASE("extremal with gamma = 1 is real and inside the disk") {
  RandomStream rs(3, 0);
  for (int trial = 0; trial < 5; ++trial) {
    const auto c = make_extremal_colonna(1.0, rs.in_disk(0.9), rs.unimodular());
    for (int i = 0; i < 200; ++i) {
      const Complex v = evaluate(c, {rs.in_disk(0.999)})[0];
      CHECK(std::abs(v.imag()) < 1e-15);
      CHECK(std::abs(v) < 1.0);
    }
  }
}

TEST_CASE("extremal parts match the closed-form value") {
  RandomStream rs(4, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto c = make_extremal_colonna(rs.unimodular(), rs.in_disk(0.8), rs.unimodular());
    const CVector z{rs.in_disk(0.95)};
    const auto p = c.parts(z);
    const Complex via_parts = p.h[0] + std::conj(p.g[0]);
    CHECK(std::abs(via_parts - c.value(z)[0]) < 1e-12);
  }
}

TEST_CASE("order-zero derivative reproduces evaluate") {
  RandomStream rs(5, 0);
  std::vector<PluriharmonicMap> maps{random_bounded_map(2, 2, 5, 9, 0.1),
                                     make_extremal_colonna(rs.unimodular(), 0.3 * I, rs.unimodular()),
                                     make_blaschke(rs.unimodular(), {0.2, -0.5 * I})};
  for (const auto& f : maps) {
    for (int i = 0; i < 20; ++i) {
      const auto z = testing::random_point(rs, f.dim(), 0.9);
      const auto d = derivative_exact(f, z, MultiIndex::zero(f.dim()));
      const auto v = evaluate(f, z);
      for (std::size_t c = 0; c < v.size(); ++c) CHECK(std::abs(d.holo[c] + d.anti[c] - v[c]) < 1e-14);
    }
  }
}

TEST_CASE("series evaluation agrees with a naive sum") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto f = random_bounded_map(1 + seed % 3, 1 + seed % 2, 5, seed, 0.05);
    RandomStream rs(seed, 1);
    for (int i = 0; i < 10; ++i) {
      const auto z = testing::random_point(rs, f.dim(), 0.95);
      CHECK(testing::max_abs_diff(evaluate(f, z), testing::naive_series_value(f, z.coords())) < 1e-14);
    }
  }
}

TEST_CASE("unit derivatives agree with central differences") {
  const double h = 1e-5;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const std::size_t n = 1 + seed % 3;
    const auto f = random_bounded_map(n, 1, 5, 100 + seed, 0.05);
    RandomStream rs(seed, 2);
    const auto z = testing::random_point(rs, n, 0.8);
    for (std::size_t j = 0; j < n; ++j) {
      auto shifted = [&](Complex dz) {
        CVector w(z.coords().begin(), z.coords().end());
        w[j] += dz;
        return evaluate(f, PolydiskPoint(w))[0];
      };
      const Complex fx = (shifted(h) - shifted(-h)) / (2 * h);
      const Complex fy = (shifted(h * I) - shifted(-h * I)) / (2 * h);
      const Complex dz = 0.5 * (fx - I * fy);
      const Complex dzbar = 0.5 * (fx + I * fy);
      const auto d = derivative_exact(f, z, MultiIndex::unit(n, j));
      CHECK(std::abs(d.holo[0] - dz) <= 1e-6 * std::max(1.0, std::abs(d.holo[0])));
      CHECK(std::abs(d.anti[0] - dzbar) <= 1e-6 * std::max(1.0, std::abs(d.anti[0])));
    }
  }
}

TEST_CASE("mixed Wirtinger derivatives vanish") {
  const double h = 1e-3;
  const auto f = random_bounded_map(2, 1, 5, 77, 0.05);
  const PolydiskPoint z{0.2 + 0.1 * I, -0.3 * I};
  // d/dz_1 d/dzbar_2 by nested central differences
  auto at = [&](Complex d1, Complex d2) { return evaluate(f, {z[0] + d1, z[1] + d2})[0]; };
  auto dzbar2 = [&](Complex d1) {
    const Complex fx = (at(d1, h) - at(d1, -h)) / (2 * h);
    const Complex fy = (at(d1, h * I) - at(d1, -h * I)) / (2 * h);
    return 0.5 * (fx + I * fy);
  };
  const Complex gx = (dzbar2(h) - dzbar2(-h)) / (2 * h);
  const Complex gy = (dzbar2(h * I) - dzbar2(-h * I)) / (2 * h);
  CHECK(std::abs(0.5 * (gx - I * gy)) < 1e-5);
  // same component of the closed form in one variable: d/dz d/dzbar f = 0
  const auto c = make_extremal_colonna(I, 0.4, 1.0);
  auto cv = [&](Complex d) { return evaluate(c, {0.3 + d})[0]; };
  const Complex lap = (cv(h) + cv(-h) + cv(h * I) + cv(-h * I) - 4.0 * cv(0.0)) / (h * h);
  CHECK(std::abs(lap) < 1e-4);
}

TEST_CASE("closed-form derivatives agree with contour integrals") {
  RandomStream rs(8, 0);
  const QuadratureSpec spec{256, {}};
  for (int trial = 0; trial < 6; ++trial) {
    const PluriharmonicMap f = trial % 2 == 0
                                   ? make_extremal_colonna(rs.unimodular(), rs.in_disk(0.6), rs.unimodular())
                                   : make_blaschke(rs.unimodular(), {rs.in_disk(0.6), rs.in_disk(0.6)});
    const PolydiskPoint z{rs.in_disk(0.4)};
    for (int order = 0; order <= 5; ++order) {
      const auto ex = derivative_exact(f, z, {order});
      const auto cq = cauchy_derivative(f, z, {order}, spec);
      const double scale = std::max(1.0, std::abs(ex.holo[0]) + std::abs(ex.anti[0]));
      CHECK(std::abs(ex.holo[0] - cq.holo[0]) < 1e-9 * scale);
      CHECK(std::abs(ex.anti[0] - cq.anti[0]) < 1e-9 * scale);
    }
  }
}

TEST_CASE("colonna product derivatives agree with contour integrals") {
  const auto f = make_colonna_product(I, {0.2, -0.3 * I}, {1.0, std::polar(1.0, 0.4)});
  const PolydiskPoint z{0.1 + 0.2 * I, -0.25};
  for (const auto& a : mi_enumerate(2, 3)) {
    const auto ex = derivative_exact(f, z, a);
    const auto cq = cauchy_derivative(f, z, a, QuadratureSpec{256, {}});
    CHECK(std::abs(ex.holo[0] - cq.holo[0]) < 1e-9 * std::max(1.0, std::abs(ex.holo[0])));
    CHECK(std::abs(ex.anti[0] - cq.anti[0]) < 1e-9 * std::max(1.0, std::abs(ex.anti[0])));
  }
}

TEST_CASE("blaschke products are holomorphic self-maps") {
  const auto b = make_blaschke(I, {0.5, -0.3 + 0.3 * I, 0.0});
  RandomStream rs(9, 0);
  for (int i = 0; i < 100; ++i) {
    const PolydiskPoint z{rs.in_disk(0.999)};
    CHECK(std::abs(evaluate(b, z)[0]) < 1.0);
    CHECK(std::abs(derivative_exact(b, z, {1}).anti[0]) == 0.0);
  }
  CHECK(std::abs(evaluate(b, {0.5})[0]) < 1e-15);
}

TEST_CASE("series expansion of the extremal") {
  const auto c = make_extremal_colonna(1.0, 0.0, 1.0);
  const auto s = series_expansion(c, 33);
  // (2/pi) arg((1+z)/(1-z)) = (4/pi) sum over odd k of Im(z^k)/k
  for (const auto& [k, t] : s.terms()) {
    if (k[0] % 2 == 0) {
      CHECK(std::abs(t.a[0]) < 1e-15);
      CHECK(std::abs(t.b[0]) < 1e-15);
    } else {
      CHECK(std::abs(t.a[0] - Complex(0.0, -2.0 / (kPi * k[0]))) < 1e-15);
      CHECK(std::abs(t.b[0] - Complex(0.0, -2.0 / (kPi * k[0]))) < 1e-15);
    }
  }
  const PolydiskPoint z{0.3 - 0.2 * I};
  CHECK(std::abs(evaluate(s, z)[0] - evaluate(c, z)[0]) < 1e-16 + std::pow(0.37, 34));
  CHECK_THROWS_AS(series_expansion(c, -1), DomainError);
}

TEST_CASE("composition with the identity automorphism") {
  const auto f = random_bounded_map(2, 2, 4, 21, 0.05);
  const auto t = compose_with_automorphism(f, PolydiskAutomorphism::identity(2));
  CHECK(t.kind() == PluriharmonicMap::Kind::composed);
  RandomStream rs(21, 0);
  for (int i = 0; i < 20; ++i) {
    const auto z = testing::random_point(rs, 2, 0.95);
    CHECK(testing::max_abs_diff(evaluate(t, z), evaluate(f, z)) < 1e-14);
  }
  CHECK_THROWS_AS(compose_with_automorphism(f, PolydiskAutomorphism::identity(3)), DomainError);
  CHECK_THROWS_AS(derivative_exact(t, {0.0, 0.0}, {1, 0}), DomainError);
}

TEST_CASE("composition evaluates through the automorphism") {
  RandomStream rs(22, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = random_bounded_map(2, 1, 5, 200 + trial, 0.05);
    const PolydiskAutomorphism phi(testing::random_point(rs, 2, 0.8), {rs.unimodular(), rs.unimodular()});
    const auto t = compose_with_automorphism(f, phi);
    CHECK(testing::max_abs_diff(evaluate(t, {0.0, 0.0}), evaluate(f, phi.center())) < 1e-15);
    for (int i = 0; i < 20; ++i) {
      const auto z = testing::random_point(rs, 2, 0.95);
      CHECK(testing::max_abs_diff(evaluate(t, z), evaluate(f, phi(z))) < 1e-13);
    }
  }
}

TEST_CASE("automorphisms") {
  const auto id = automorphism_derivative_at_zero(PolydiskAutomorphism::identity(3));
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 3; ++c) CHECK(id(r, c) == Complex(r == c ? 1.0 : 0.0));
  }
  const auto d = automorphism_derivative_at_zero(PolydiskAutomorphism({0.5, 0.0}, {1.0, 1.0}));
  CHECK(std::abs(d(0, 0) - 0.75) < 1e-15);
  CHECK(std::abs(d(1, 1) - 1.0) < 1e-15);
  CHECK(d(0, 1) == Complex(0.0));
  const auto r = automorphism_derivative_at_zero(PolydiskAutomorphism({0.6}, {I}));
  CHECK(std::abs(r(0, 0) - 0.64 * I) < 1e-15);

  const PolydiskAutomorphism phi({0.3 - 0.4 * I, 0.1}, {I, -1.0});
  const auto at0 = phi({0.0, 0.0});
  CHECK(at0[0] == phi.center()[0]);
  CHECK(at0[1] == phi.center()[1]);
  CHECK_THROWS_AS(PolydiskAutomorphism({0.1}, {Complex(1.0, 1e-5)}), DomainError);
  CHECK_THROWS_AS(PolydiskAutomorphism({0.1}, {1.0, 1.0}), DomainError);

  // derivative at zero by finite differences
  const double h = 1e-6;
  for (std::size_t j = 0; j < 2; ++j) {
    CVector plus(2, 0.0), minus(2, 0.0);
    plus[j] = h;
    minus[j] = -h;
    const Complex fd = (phi.apply(plus)[j] - phi.apply(minus)[j]) / (2 * h);
    CHECK(std::abs(fd - automorphism_derivative_at_zero(phi)(j, j)) < 1e-8);
  }
}

TEST_CASE("random maps are certified and deterministic") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const double margin = 0.01 + 0.03 * (seed % 5);
    const auto f = random_bounded_map(1 + seed % 3, 1 + seed % 3, static_cast<int>(seed % 7), seed, margin);
    CHECK(sup_bound_l1(f) <= 1.0 - margin + 1e-12);
    const auto g = random_bounded_map(1 + seed % 3, 1 + seed % 3, static_cast<int>(seed % 7), seed, margin);
    REQUIRE(f.terms().size() == g.terms().size());
    for (const auto& [k, t] : f.terms()) {
      CHECK(g.terms().at(k).a == t.a);
      CHECK(g.terms().at(k).b == t.b);
    }
  }
  const auto c = random_bounded_map(2, 1, 0, 4, 0.05);
  CHECK(c.terms().size() == 1);
  CHECK(std::abs(evaluate(c, {0.3, -0.2})[0]) <= 0.95 + 1e-12);
  CHECK(std::abs(evaluate(c, {0.3, -0.2})[0] - evaluate(c, {0.0, 0.7 * I})[0]) < 1e-15);
  const auto z0 = random_bounded_map(3, 2, 4, 5, 0.05, RandomMapOptions{true});
  CHECK(euclid_norm(evaluate(z0, {0.0, 0.0, 0.0})) == 0.0);
  CHECK_THROWS_AS(random_bounded_map(1, 1, 2, 0, 0.0), DomainError);
  CHECK_THROWS_AS(random_bounded_map(1, 1, -1, 0, 0.5), DomainError);
}

TEST_CASE("certificates") {
  CHECK(certify(scalar_series(2, {{{1, 0}, 0.6, 0.0}, {{0, 1}, 0.0, 0.3}})).sup_bound == doctest::Approx(0.9));
  CHECK(certify(make_extremal_colonna(I, 0.3, 1.0)).sup_bound == 1.0);
  CHECK(certify(make_blaschke(1.0, {0.5})).sup_bound == 1.0);
  const auto f = random_bounded_map(2, 1, 3, 1, 0.2);
  CHECK(certify(compose_with_automorphism(f, PolydiskAutomorphism({0.5, 0.1}))).sup_bound ==
        doctest::Approx(0.8));
}
