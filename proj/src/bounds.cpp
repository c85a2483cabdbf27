#include "polydisk/bounds.hpp"

#include <cmath>
#include <string>

#include "polydisk/errors.hpp"
#include "polydisk/search.hpp"

namespace polydisk {

namespace {

void require_unit_interval(double t, const char* what) {
  if (!(t >= 0.0 && t < 1.0)) {
    throw DomainError(std::string(what) + " must lie in [0, 1), got " + std::to_string(t));
  }
}

double pow_int(double x, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

double factorial(int m) {
  double r = 1.0;
  for (int i = 2; i <= m; ++i) r *= i;
  return r;
}

double sum_abs(const DerivativePair& dp) { return std::abs(dp.holo[0]) + std::abs(dp.anti[0]); }

double effective_tol(double tol, DerivativeMethod method, double rhs) {
  if (tol >= 0.0) return tol;
  return method == DerivativeMethod::exact ? kExactTol : kQuadratureTol * std::max(1.0, rhs);
}

DerivativePair derivative_by(const PluriharmonicMap& map, const PolydiskPoint& z,
                             const MultiIndex& alpha, DerivativeMethod method,
                             const QuadratureSpec& spec, nlohmann::json& params) {
  if (method == DerivativeMethod::exact) return derivative_exact(map, z, alpha);
  QuadratureMeta meta;
  auto dp = cauchy_derivative(map, z, alpha, spec, &meta);
  params["nodes"] = meta.nodes;
  params["radii"] = meta.radii;
  params["est_error"] = meta.est_error;
  return dp;
}

// A contour-integral lhs is only reported when its estimated error is
// within the tolerance; otherwise the pass flag would reflect the quadrature.
BoundReport converged(BoundReport r) {
  if (!r.params.contains("est_error")) return r;
  const double est = r.params["est_error"].get<double>();
  if (est > r.tol) {
    throw NumericError("contour quadrature not converged: estimated error " + std::to_string(est) +
                       " exceeds tol " + std::to_string(r.tol) + " at " +
                       std::to_string(r.params["nodes"].get<int>()) + " nodes; raise the node count");
  }
  return r;
}

void require_holomorphic_disk_map(const PluriharmonicMap& map) {
  if (map.dim() != 1 || map.codim() != 1) {
    throw DomainError("classical disk bounds need a one-variable scalar map");
  }
  if (!is_holomorphic(map)) throw HypothesisError("hypothesis: map is not holomorphic");
  require_certified(map, true);
}

}  // namespace

std::string_view to_string(CheckId id) {
  switch (id) {
    case CheckId::derivative_bound: return "derivative_bound";
    case CheckId::coefficient_bound: return "coefficient_bound";
    case CheckId::homogeneous_bound: return "homogeneous_bound";
    case CheckId::l2_bound: return "l2_bound";
    case CheckId::gradient_bound: return "gradient_bound";
    case CheckId::growth_bound: return "growth_bound";
    case CheckId::szasz_bound: return "szasz_bound";
    case CheckId::ruscheweyh_bound: return "ruscheweyh_bound";
  }
  return "unknown";
}

CheckId check_id_from_string(std::string_view name) {
  for (auto id : {CheckId::derivative_bound, CheckId::coefficient_bound,
                  CheckId::homogeneous_bound, CheckId::l2_bound, CheckId::gradient_bound,
                  CheckId::growth_bound, CheckId::szasz_bound, CheckId::ruscheweyh_bound}) {
    if (to_string(id) == name) return id;
  }
  throw DomainError("unknown check id: " + std::string(name));
}

std::string_view to_string(DerivativeMethod m) {
  return m == DerivativeMethod::exact ? "exact" : "cauchy";
}

BoundReport make_report(CheckId id, nlohmann::json params, CVector point, double lhs, double rhs,
                        double tol) {
  if (!std::isfinite(lhs) || !std::isfinite(rhs) || lhs < 0.0 || rhs < 0.0) {
    throw NumericError("bound report needs finite nonnegative sides (" +
                       std::string(to_string(id)) + ")");
  }
  BoundReport r{id, std::move(params), std::move(point), lhs, rhs, rhs - lhs, tol, false};
  r.pass = lhs <= rhs + tol;
  return r;
}

double rhs_polydisk(const MultiIndex& alpha, double z_inf) {
  require_unit_interval(z_inf, "||z||_inf");
  if (alpha.min_component() < 1) throw DomainError("rhs_polydisk: every alpha_j must be >= 1");
  const int n = static_cast<int>(alpha.size());
  const int order = alpha.degree();
  return static_cast<double>(alpha.factorial()) * kFourOverPi * pow_int(1.0 + z_inf, order - n) /
         pow_int(1.0 - z_inf * z_inf, order);
}

double rhs_colonna(double z_abs) {
  require_unit_interval(z_abs, "|z|");
  return kFourOverPi / (1.0 - z_abs * z_abs);
}

double rhs_ruscheweyh(int order, double z_abs, double f_abs) {
  if (order < 1) throw DomainError("rhs_ruscheweyh: order must be >= 1");
  require_unit_interval(z_abs, "|z|");
  require_unit_interval(f_abs, "|f(z)|");
  return factorial(order) * (1.0 - f_abs * f_abs) / (pow_int(1.0 - z_abs, order) * (1.0 + z_abs));
}

double rhs_szasz(int m, double z_abs) {
  if (m < 1) throw DomainError("rhs_szasz: m must be >= 1");
  require_unit_interval(z_abs, "|z|");
  double s = 0.0;
  for (int k = 0; k <= m; ++k) s += binomial(m, k) * binomial(m, k) * pow_int(z_abs, 2 * k);
  const int order = 2 * m + 1;
  return factorial(order) / pow_int(1.0 - z_abs * z_abs, order) * s;
}

double rhs_gradient(double z_inf) {
  require_unit_interval(z_inf, "||z||_inf");
  return kFourOverPi / (1.0 - z_inf * z_inf);
}

double rhs_growth(double z_inf) {
  require_unit_interval(z_inf, "||z||_inf");
  return kFourOverPi * std::atan(z_inf);
}

bool is_holomorphic(const PluriharmonicMap& map) {
  switch (map.kind()) {
    case PluriharmonicMap::Kind::series:
      for (const auto& [k, term] : map.terms()) {
        if (k.degree() == 0) continue;
        for (const auto& b : term.b) {
          if (b != Complex{}) return false;
        }
      }
      return true;
    case PluriharmonicMap::Kind::blaschke:
      return true;
    case PluriharmonicMap::Kind::colonna:
      return false;
    case PluriharmonicMap::Kind::composed:
      return is_holomorphic(map.outer());
  }
  return false;
}

void require_certified(const PluriharmonicMap& map, bool scalar) {
  const Certificate c = certify(map);
  if (c.sup_bound > 1.0) {
    throw HypothesisError(scalar ? "hypothesis: map not certified into the unit disk"
                                 : "hypothesis: map not certified into the unit ball");
  }
}

BoundReport verify_derivative_bound(const PluriharmonicMap& map, const PolydiskPoint& z,
                                    const MultiIndex& alpha, DerivativeMethod method, double tol,
                                    const QuadratureSpec& spec) {
  if (map.codim() != 1) throw DomainError("derivative bound is stated for scalar maps (N = 1)");
  if (alpha.size() != map.dim()) throw DomainError("derivative order length differs from n");
  if (alpha.min_component() < 1) throw DomainError("derivative bound needs every alpha_j >= 1");
  require_certified(map, true);

  nlohmann::json params{{"z", point_to_json(z.coords())},
                        {"alpha", alpha.components()},
                        {"method", to_string(method)}};
  const DerivativePair dp = derivative_by(map, z, alpha, method, spec, params);
  const double rhs = rhs_polydisk(alpha, z.inf_norm());
  CVector pt(z.coords().begin(), z.coords().end());
  return converged(make_report(CheckId::derivative_bound, std::move(params), std::move(pt), sum_abs(dp), rhs,
                     effective_tol(tol, method, rhs)));
}

std::vector<BoundReport> verify_coefficient_bound(const PluriharmonicMap& map, int max_degree,
                                                  const QuadratureSpec& spec, double tol) {
  if (map.codim() != 1) throw DomainError("coefficient bound is stated for scalar maps (N = 1)");
  require_certified(map, true);
  std::vector<BoundReport> out;
  for (const auto& est : extract_coefficients(map, max_degree, spec, 1)) {
    nlohmann::json params{{"k", est.k.components()},
                          {"a", complex_to_json(est.a[0])},
                          {"b", complex_to_json(est.b[0])},
                          {"nodes", est.meta.nodes},
                          {"radii", est.meta.radii},
                          {"est_error", est.meta.est_error}};
    if (est.meta.below_nyquist) params["warning"] = "node count at or below Nyquist for this series";
    out.push_back(make_report(CheckId::coefficient_bound, std::move(params), {},
                              std::abs(est.a[0]) + std::abs(est.b[0]), kFourOverPi, tol));
  }
  return out;
}

BoundReport verify_homogeneous_bound(const PluriharmonicMap& map, int m, const PolydiskPoint& z,
                                     double tol, int nodes) {
  if (m < 1) throw DomainError("homogeneous bound needs m >= 1");
  if (z.dim() != map.dim()) throw DomainError("dimension mismatch between map and point");
  require_certified(map, map.codim() == 1);
  const std::size_t N = map.codim();
  nlohmann::json params{{"z", point_to_json(z.coords())}, {"m", m}};
  CVector part(N);
  bool exact = map.kind() == PluriharmonicMap::Kind::series;
  if (exact) {
    for (const auto& [k, term] : map.terms()) {
      if (k.degree() != m) continue;
      Complex mono = 1.0;
      for (std::size_t j = 0; j < k.size(); ++j) mono *= std::pow(z[j], k[j]);
      for (std::size_t c = 0; c < N; ++c) part[c] += term.a[c] * mono + std::conj(term.b[c] * mono);
    }
    params["method"] = "series";
  } else {
    part = homogeneous_part_quadrature(map, m, z, nodes);
    params["method"] = "quadrature";
    params["nodes"] = nodes;
  }
  if (tol < 0.0) tol = exact ? kExactTol : kQuadratureTol;
  CVector pt(z.coords().begin(), z.coords().end());
  return make_report(CheckId::homogeneous_bound, std::move(params), std::move(pt),
                     euclid_norm(part), kFourOverPi, tol);
}

BoundReport verify_l2_bound(const PluriharmonicMap& map, double tol) {
  if (map.kind() != PluriharmonicMap::Kind::series) {
    throw DomainError("l2 coefficient bound needs an explicit coefficient table");
  }
  require_certified(map, map.codim() == 1);
  const std::size_t N = map.codim();
  CVector f0(N);
  double s = 0.0;
  for (const auto& [k, term] : map.terms()) {
    if (k.degree() == 0) {
      for (std::size_t c = 0; c < N; ++c) f0[c] = term.a[c] + std::conj(term.b[c]);
    } else {
      s += std::pow(euclid_norm(term.a), 2) + std::pow(euclid_norm(term.b), 2);
    }
  }
  s += std::pow(euclid_norm(f0), 2);
  return make_report(CheckId::l2_bound, nlohmann::json{{"terms", map.terms().size()}}, {}, s, 1.0,
                     tol);
}

BoundReport verify_gradient_bound(const PluriharmonicMap& map, const PolydiskPoint& z,
                                  int direction_samples, double tol) {
  if (z.dim() != map.dim()) throw DomainError("dimension mismatch between map and point");
  require_certified(map, map.codim() == 1);
  const JacobianPair jp = jacobian_pair(map, z);
  const DirectionMax best = direction_max(jp, direction_samples);
  nlohmann::json params{{"z", point_to_json(z.coords())},
                        {"theta", point_to_json(best.theta)},
                        {"samples", direction_samples},
                        {"note", "lhs is a lower estimate: maximum over sampled and refined directions"}};
  CVector pt(z.coords().begin(), z.coords().end());
  return make_report(CheckId::gradient_bound, std::move(params), std::move(pt), best.value,
                     rhs_gradient(z.inf_norm()), tol);
}

BoundReport verify_growth_bound(const PluriharmonicMap& map, const PolydiskPoint& z, double tol) {
  if (z.dim() != map.dim()) throw DomainError("dimension mismatch between map and point");
  require_certified(map, map.codim() == 1);
  const CVector f0 = evaluate(map, PolydiskPoint(CVector(map.dim())));
  if (euclid_norm(f0) > 1e-12) throw HypothesisError("hypothesis: f(0) != 0");
  CVector pt(z.coords().begin(), z.coords().end());
  return make_report(CheckId::growth_bound, nlohmann::json{{"z", point_to_json(z.coords())}},
                     std::move(pt), euclid_norm(evaluate(map, z)), rhs_growth(z.inf_norm()), tol);
}

BoundReport verify_szasz_bound(const PluriharmonicMap& map, const PolydiskPoint& z, int m,
                               DerivativeMethod method, const QuadratureSpec& spec, double tol) {
  if (m < 1) throw DomainError("Szasz bound needs m >= 1");
  require_holomorphic_disk_map(map);
  const int order = 2 * m + 1;
  nlohmann::json params{{"z", point_to_json(z.coords())}, {"order", order}, {"method", to_string(method)}};
  const DerivativePair dp = derivative_by(map, z, MultiIndex{order}, method, spec, params);
  const double rhs = rhs_szasz(m, std::abs(z[0]));
  CVector pt(z.coords().begin(), z.coords().end());
  return converged(make_report(CheckId::szasz_bound, std::move(params), std::move(pt), std::abs(dp.holo[0]),
                     rhs, effective_tol(tol, method, rhs)));
}

BoundReport verify_ruscheweyh_bound(const PluriharmonicMap& map, const PolydiskPoint& z, int order,
                                    DerivativeMethod method, const QuadratureSpec& spec,
                                    double tol) {
  if (order < 1) throw DomainError("Ruscheweyh bound needs order >= 1");
  require_holomorphic_disk_map(map);
  const double f_abs = std::abs(evaluate(map, z)[0]);
  if (!(f_abs < 1.0)) throw HypothesisError("hypothesis: |f(z)| < 1 fails");
  nlohmann::json params{{"z", point_to_json(z.coords())},
                        {"order", order},
                        {"f_abs", f_abs},
                        {"method", to_string(method)}};
  const DerivativePair dp = derivative_by(map, z, MultiIndex{order}, method, spec, params);
  const double rhs = rhs_ruscheweyh(order, std::abs(z[0]), f_abs);
  CVector pt(z.coords().begin(), z.coords().end());
  return converged(make_report(CheckId::ruscheweyh_bound, std::move(params), std::move(pt),
                     std::abs(dp.holo[0]), rhs, effective_tol(tol, method, rhs)));
}

nlohmann::json complex_to_json(Complex c) { return nlohmann::json::array({c.real(), c.imag()}); }

nlohmann::json point_to_json(std::span<const Complex> z) {
  auto arr = nlohmann::json::array();
  for (const auto& c : z) arr.push_back(complex_to_json(c));
  return arr;
}

nlohmann::ordered_json to_json(const BoundReport& r) {
  nlohmann::ordered_json j;
  j["check_id"] = to_string(r.check_id);
  j["params"] = r.params;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["margin"] = r.margin;
  j["tol"] = r.tol;
  j["pass"] = r.pass;
  return j;
}

}  // namespace polydisk
