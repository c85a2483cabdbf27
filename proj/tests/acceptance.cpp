// One line per acceptance criterion; exit status is nonzero if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "polydisk/bounds.hpp"
#include "polydisk/quadrature.hpp"
#include "polydisk/search.hpp"
#include "support.hpp"

using namespace polydisk;

namespace {

const Complex I{0.0, 1.0};

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Accumulates the worst observed value of some quantity for the summary line.
struct Worst {
  double value = -INFINITY;
  void see(double v) { value = std::max(value, v); }
};

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

std::vector<PluriharmonicMap> scalar_suite() {
  std::vector<PluriharmonicMap> maps;
  for (std::uint64_t i = 0; i < 100; ++i) {
    maps.push_back(random_bounded_map(1 + i % 3, 1, 1 + static_cast<int>(i % 6), 1000 + i, 0.01 + 0.001 * (i % 10)));
  }
  return maps;
}

std::vector<PluriharmonicMap> vector_suite() {
  std::vector<PluriharmonicMap> maps;
  for (std::uint64_t i = 0; i < 100; ++i) {
    maps.push_back(random_bounded_map(1 + i % 3, 1 + (i / 3) % 3, 1 + static_cast<int>(i % 5), 2000 + i, 0.01));
  }
  return maps;
}

Outcome lemma_oracle() {
  RandomStream rs(1, 0);
  std::vector<double> gammas(20);
  for (auto& g : gammas) g = rs.uniform(0.0, 2.0 * kPi);
  Worst err;
  for (int m = 1; m <= 10; ++m) {
    for (double g : gammas) err.see(std::abs(abs_cos_integral(m, g, 4096) - 4.0));
  }
  return {err.value <= 1e-5, fmt("max |I - 4| = %.2e over 200 cases", err.value)};
}

Outcome claim_coefficients() {
  Worst lhs;
  long reports = 0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const std::size_t n = 1 + i % 3;
    const int degree = 1 + static_cast<int>(i % 6);
    const auto f = random_bounded_map(n, 1, degree, 3000 + i, 0.01);
    std::vector<PluriharmonicMap> family{f};
    RandomStream rs(i, 77);
    for (int a = 0; a < 3; ++a) {
      CVector rot(n);
      for (auto& u : rot) u = rs.unimodular();
      family.push_back(compose_with_automorphism(f, PolydiskAutomorphism(testing::random_point(rs, n, 0.8), rot)));
    }
    for (const auto& g : family) {
      const QuadratureSpec spec{g.kind() == PluriharmonicMap::Kind::series ? 16 : 64, {}};
      for (const auto& est : extract_coefficients(g, 6, spec, 1)) {
        lhs.see(std::abs(est.a[0]) + std::abs(est.b[0]));
        ++reports;
      }
    }
  }
  return {lhs.value <= kFourOverPi + 1e-6,
          fmt("max |a_k|+|b_k| = %.9f vs 4/pi = %.9f", lhs.value, kFourOverPi) + ", " +
              std::to_string(reports) + " coefficients"};
}

Outcome polydisk_bound() {
  Worst excess;
  long checks = 0;
  const auto maps = scalar_suite();
  for (std::size_t i = 0; i < maps.size(); ++i) {
    const auto& f = maps[i];
    const std::size_t n = f.dim();
    RandomStream rs(i, 3);
    for (int p = 0; p < 10; ++p) {
      const auto z = testing::random_point(rs, n, 0.9);
      for (const auto& a : mi_enumerate(n, static_cast<int>(2 * n), 1)) {
        bool small = true;
        for (std::size_t j = 0; j < n; ++j) small = small && a[j] <= 2;
        if (!small) continue;
        const auto r = verify_derivative_bound(f, z, a, DerivativeMethod::exact, 1e-9);
        excess.see(r.lhs - r.rhs);
        ++checks;
        if (!r.pass) return {false, "failed at map " + std::to_string(i)};
      }
    }
  }
  return {excess.value <= 1e-9, fmt("max lhs - rhs = %.3e", excess.value) + " over " + std::to_string(checks) + " checks"};
}

Outcome derivative_cross_validation() {
  Worst vs_exact, vs_radius;
  for (std::uint64_t i = 0; i < 50; ++i) {
    const std::size_t n = 1 + i % 2;
    const auto f = random_bounded_map(n, 1, 6, 4000 + i, 0.05);
    RandomStream rs(i, 4);
    const auto z = testing::random_point(rs, n, 0.7);
    const double zi = z.inf_norm();
    const auto alphas = mi_enumerate(n, 4);
    const auto near = cauchy_derivatives(f, z, alphas, QuadratureSpec{512, std::vector<double>(n, zi + 0.1)});
    const auto far = cauchy_derivatives(f, z, alphas, QuadratureSpec{512, std::vector<double>(n, 0.95)});
    for (std::size_t k = 0; k < alphas.size(); ++k) {
      const auto ex = derivative_exact(f, z, alphas[k]);
      vs_exact.see(std::abs(ex.holo[0] - near[k].holo[0]));
      vs_exact.see(std::abs(ex.anti[0] - near[k].anti[0]));
      vs_exact.see(std::abs(ex.holo[0] - far[k].holo[0]));
      vs_exact.see(std::abs(ex.anti[0] - far[k].anti[0]));
      vs_radius.see(std::abs(near[k].holo[0] - far[k].holo[0]));
      vs_radius.see(std::abs(near[k].anti[0] - far[k].anti[0]));
    }
  }
  return {vs_exact.value <= 1e-8 && vs_radius.value < 1e-8,
          fmt("max |cauchy - exact| = %.2e, max radius spread = %.2e (n <= 2)", vs_exact.value, vs_radius.value)};
}

Outcome colonna_sharpness() {
  // psi(z) = -i z is real on the imaginary axis, where equality holds.
  const auto c = make_extremal_colonna(1.0, 0.0, -I);
  Worst dev;
  dev.see(std::abs(sharpness_ratio(c, {0.0}, {1}) - 1.0));
  for (int i = 1; i <= 10; ++i) dev.see(std::abs(sharpness_ratio(c, {0.09 * i * I}, {1}) - 1.0));
  const auto s = sharpness_search(1, {1}, SearchFamily::colonna_tensor, 2000, 42);
  return {dev.value <= 1e-6 && s.ratio >= 0.999,
          fmt("max |ratio - 1| on z = it: %.2e; search ratio %.9f", dev.value, s.ratio)};
}

Outcome growth_equality() {
  const auto c = make_extremal_colonna(1.0, 0.0, 1.0);
  Worst dev;
  for (int i = 1; i <= 9; ++i) {
    const double t = 0.1 * i;
    dev.see(std::abs(euclid_norm(evaluate(c, {t * I})) - kFourOverPi * std::atan(t)));
  }
  long checks = 0;
  bool all = true;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const std::size_t n = 1 + i % 3;
    const auto f = random_bounded_map(n, 1 + (i / 3) % 3, 1 + static_cast<int>(i % 6), 5000 + i, 0.01,
                                      RandomMapOptions{true});
    RandomStream rs(i, 6);
    for (int p = 0; p < 20; ++p) {
      all = all && verify_growth_bound(f, testing::random_point(rs, n, 0.99)).pass;
      ++checks;
    }
  }
  return {dev.value <= 1e-10 && all,
          fmt("max |f(it)| - (4/pi)atan t = %.2e; ", dev.value) + std::to_string(checks) + " growth checks " +
              (all ? "passed" : "FAILED")};
}

double brute_force(const JacobianPair& jp) {
  const std::size_t n = jp.d.cols();
  double best = 0.0;
  CVector theta(n, 1.0);
  if (n == 1) {
    for (int a = 0; a < 360; ++a) {
      theta[0] = std::polar(1.0, 2.0 * kPi * a / 360);
      best = std::max(best, direction_objective(jp, theta));
    }
    return best;
  }
  for (int a = 0; a < 360; ++a) {
    theta[0] = std::polar(1.0, 2.0 * kPi * a / 360);
    for (int b = 0; b < 360; ++b) {
      theta[1] = std::polar(1.0, 2.0 * kPi * b / 360);
      best = std::max(best, direction_objective(jp, theta));
    }
  }
  return best;
}

Outcome gradient_bound() {
  Worst excess, gap;
  long brute = 0;
  const auto maps = vector_suite();
  for (std::size_t i = 0; i < maps.size(); ++i) {
    const auto& f = maps[i];
    RandomStream rs(i, 7);
    for (int p = 0; p < 10; ++p) {
      const auto z = testing::random_point(rs, f.dim(), 0.9);
      const auto jp = jacobian_pair(f, z);
      const auto m = direction_max(jp);
      excess.see(m.value - rhs_gradient(z.inf_norm()));
      if (f.dim() <= 2) {
        gap.see(std::abs(m.value - brute_force(jp)));
        ++brute;
      }
    }
  }
  return {excess.value <= 1e-7 && gap.value <= 1e-3,
          fmt("max value - rhs = %.3e; max |direction_max - brute force| = %.2e", excess.value, gap.value) +
              " over " + std::to_string(brute) + " grids"};
}

Outcome lemma_two_two() {
  Worst homog, l2, parseval;
  auto maps = scalar_suite();
  const auto vec = vector_suite();
  maps.insert(maps.end(), vec.begin(), vec.end());
  for (std::size_t i = 0; i < maps.size(); ++i) {
    const auto& f = maps[i];
    const std::size_t n = f.dim();
    RandomStream rs(i, 8);
    for (int p = 0; p < 10; ++p) {
      const auto z = testing::random_point(rs, n, 0.99);
      for (int m = 1; m <= 3; ++m) {
        const auto r = verify_homogeneous_bound(f, m, z);
        if (!r.pass) return {false, "homogeneous bound failed at map " + std::to_string(i)};
        homog.see(r.lhs - r.rhs);
      }
    }
    const auto r = verify_l2_bound(f);
    if (!r.pass) return {false, "l2 bound failed at map " + std::to_string(i)};
    l2.see(r.lhs);

    std::vector<double> xi(n);
    for (auto& x : xi) x = rs.uniform(0.1, 0.99);
    double want = 0.0;
    for (const auto& [k, t] : f.terms()) {
      if (k.degree() == 0) {
        CVector f0(t.a.size());
        for (std::size_t c = 0; c < f0.size(); ++c) f0[c] = t.a[c] + std::conj(t.b[c]);
        want += std::norm(euclid_norm(f0));
        continue;
      }
      double w = 1.0;
      for (std::size_t j = 0; j < n; ++j) w *= std::pow(xi[j], 2 * k[j]);
      want += (std::norm(euclid_norm(t.a)) + std::norm(euclid_norm(t.b))) * w;
    }
    parseval.see(std::abs(torus_mean_square(f, xi, 16) - want));
  }
  return {homog.value <= 1e-9 && l2.value <= 1.0 && parseval.value <= 1e-10,
          fmt("max homogeneous lhs - rhs = %.3f; max l2 lhs = %.4f; ", homog.value, l2.value) +
              fmt("max Parseval error %.2e", parseval.value)};
}

Outcome formula_consistency() {
  Worst colonna, gradient, rusch;
  for (int i = 0; i < 1000; ++i) {
    const double t = 0.999 * i / 999.0;
    colonna.see(std::abs(rhs_polydisk({1}, t) - rhs_colonna(t)));
    gradient.see(std::abs(rhs_gradient(t) - rhs_colonna(t)));
  }
  RandomStream rs(9, 0);
  for (int i = 0; i < 1000; ++i) {
    const double t = rs.uniform(0.0, 0.999), s = rs.uniform(0.0, 0.999);
    const double want = (1 - s * s) / (1 - t * t);
    rusch.see(std::abs(rhs_ruscheweyh(1, t, s) - want) / want);
  }
  return {colonna.value <= 1e-15 && gradient.value <= 1e-15 && rusch.value <= 1e-12,
          fmt("max |polydisk - colonna| = %.1e, |gradient - colonna| = %.1e, ", colonna.value, gradient.value) +
              fmt("Ruscheweyh order 1 rel. diff %.1e", rusch.value)};
}

Outcome classical_bounds() {
  RandomStream rs(10, 0);
  const QuadratureSpec spec{2048, {}};
  long checks = 0;
  Worst sz, ru;
  for (int i = 0; i < 20; ++i) {
    CVector zeros(1 + i % 3);
    for (auto& a : zeros) a = rs.in_disk(0.9);
    const auto b = make_blaschke(rs.unimodular(), zeros);
    for (int p = 0; p < 10; ++p) {
      const PolydiskPoint z{rs.in_disk(0.9)};
      for (int m : {1, 2}) {
        const auto s = verify_szasz_bound(b, z, m, DerivativeMethod::cauchy, spec);
        const auto r = verify_ruscheweyh_bound(b, z, 2 * m + 1, DerivativeMethod::cauchy, spec);
        if (!s.pass || !r.pass) return {false, "failed at map " + std::to_string(i)};
        sz.see(s.lhs / s.rhs);
        ru.see(r.lhs / r.rhs);
        checks += 2;
      }
    }
  }
  return {true, fmt("max lhs/rhs: Szasz %.4f, Ruscheweyh %.4f; ", sz.value, ru.value) + std::to_string(checks) +
                    " checks"};
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "abs-cos integral equals 4", 1.0, lemma_oracle},
      {2, "coefficient bound incl. automorphism compositions", 60.0, claim_coefficients},
      {3, "polydisk derivative bound, exact series", 60.0, polydisk_bound},
      {4, "Cauchy vs exact derivatives, radius independence", 60.0, derivative_cross_validation},
      {5, "sharpness of the arg extremal and search", 30.0, colonna_sharpness},
      {6, "arctan growth equality and property", 30.0, growth_equality},
      {7, "gradient bound and brute-force direction check", 120.0, gradient_bound},
      {8, "homogeneous-part, l2 and Parseval", 30.0, lemma_two_two},
      {9, "right-hand side consistency", 1.0, formula_consistency},
      {10, "Szasz and Ruscheweyh bounds on Blaschke products", 30.0, classical_bounds},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.limit_seconds;
    const bool ok = o.pass && in_time;
    failed += ok ? 0 : 1;
    std::printf("[%s] criterion %d: %s | %s | %.2f s (limit %.0f s)%s\n", ok ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs, c.limit_seconds, in_time ? "" : " TIME LIMIT EXCEEDED");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
