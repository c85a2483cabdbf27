#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "polydisk/mapping.hpp"
#include "polydisk/quadrature.hpp"

namespace polydisk {

enum class CheckId {
  derivative_bound,
  coefficient_bound,
  homogeneous_bound,
  l2_bound,
  gradient_bound,
  growth_bound,
  szasz_bound,
  ruscheweyh_bound,
};

std::string_view to_string(CheckId id);
CheckId check_id_from_string(std::string_view name);

/// One instance of an inequality lhs <= rhs. pass <=> lhs <= rhs + tol.
/// Values are never clamped, so equality cases show up as margin ~ 0.
struct BoundReport {
  CheckId check_id;
  nlohmann::json params;
  /// The evaluation point, empty for point-free checks (coefficients, l2).
  CVector point;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double tol = 0.0;
  bool pass = false;
};

/// Builds a report, filling margin and pass. lhs and rhs must be finite and >= 0.
BoundReport make_report(CheckId id, nlohmann::json params, CVector point, double lhs, double rhs,
                        double tol);

inline constexpr double kExactTol = 1e-9;
inline constexpr double kQuadratureTol = 1e-7;

// Right-hand sides.

/// alpha! (4/pi) (1 + t)^(|alpha| - n) / (1 - t^2)^|alpha|, every alpha_j >= 1.
double rhs_polydisk(const MultiIndex& alpha, double z_inf);
/// (4/pi) / (1 - |z|^2)
double rhs_colonna(double z_abs);
/// order! (1 - |f|^2) / ((1 - |z|)^order (1 + |z|))
double rhs_ruscheweyh(int order, double z_abs, double f_abs);
/// (2m+1)! / (1 - |z|^2)^(2m+1) * sum_k C(m,k)^2 |z|^(2k), a bound on the order 2m+1 derivative.
double rhs_szasz(int m, double z_abs);
/// 4 / (pi (1 - t^2))
double rhs_gradient(double z_inf);
/// (4/pi) arctan t
double rhs_growth(double z_inf);

enum class DerivativeMethod { exact, cauchy };

std::string_view to_string(DerivativeMethod m);

/// Throws HypothesisError unless the map is certified into the unit disk
/// (scalar) or unit ball (vector).
void require_certified(const PluriharmonicMap& map, bool scalar);

/// |d^alpha f| + |dbar^alpha f| against rhs_polydisk(alpha, ||z||_inf). Scalar maps only.
/// A negative tol selects the method's default; quadrature tolerances are
/// relative to max(1, rhs).
BoundReport verify_derivative_bound(const PluriharmonicMap& map, const PolydiskPoint& z,
                                    const MultiIndex& alpha, DerivativeMethod method,
                                    double tol = -1.0, const QuadratureSpec& spec = {});

/// |a_k| + |b_k| <= 4/pi for 1 <= |k| <= max_degree, coefficients by quadrature.
std::vector<BoundReport> verify_coefficient_bound(const PluriharmonicMap& map, int max_degree,
                                                  const QuadratureSpec& spec = {},
                                                  double tol = kQuadratureTol);

/// ||P_m(z) + conj(Q_m(z))|| <= 4/pi where P_m, Q_m are the degree-m parts of h and g.
/// Series maps use their coefficients; other maps use circle quadrature.
BoundReport verify_homogeneous_bound(const PluriharmonicMap& map, int m, const PolydiskPoint& z,
                                     double tol = -1.0, int nodes = 256);

/// ||f(0)||^2 + sum_{|k| >= 1} (||a_k||^2 + ||b_k||^2) <= 1, series maps only.
BoundReport verify_l2_bound(const PluriharmonicMap& map, double tol = kExactTol);

/// max over sampled unimodular theta of ||Df theta + Dbar f conj(theta)|| against
/// rhs_gradient. The lhs is a lower estimate of the true maximum.
BoundReport verify_gradient_bound(const PluriharmonicMap& map, const PolydiskPoint& z,
                                  int direction_samples = 256, double tol = kQuadratureTol);

/// ||f(z)|| <= (4/pi) arctan ||z||_inf for maps with f(0) = 0.
BoundReport verify_growth_bound(const PluriharmonicMap& map, const PolydiskPoint& z,
                                double tol = kExactTol);

/// One-variable holomorphic self-maps of the disk: |f^(2m+1)(z)| against rhs_szasz.
BoundReport verify_szasz_bound(const PluriharmonicMap& map, const PolydiskPoint& z, int m,
                               DerivativeMethod method, const QuadratureSpec& spec = {},
                               double tol = -1.0);
/// One-variable holomorphic self-maps of the disk: |f^(order)(z)| against rhs_ruscheweyh.
BoundReport verify_ruscheweyh_bound(const PluriharmonicMap& map, const PolydiskPoint& z, int order,
                                    DerivativeMethod method, const QuadratureSpec& spec = {},
                                    double tol = -1.0);

/// True when the anti-holomorphic part vanishes identically.
bool is_holomorphic(const PluriharmonicMap& map);

nlohmann::json complex_to_json(Complex c);
nlohmann::json point_to_json(std::span<const Complex> z);
nlohmann::ordered_json to_json(const BoundReport& r);

}  // namespace polydisk
