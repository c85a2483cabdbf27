#pragma once

#include <functional>
#include <span>
#include <vector>

#include "polydisk/mapping.hpp"
#include "polydisk/quadrature_spec.hpp"

namespace polydisk {

/// Metadata attached to every quadrature result. `est_error` is the largest
/// difference between the estimate and the same sum on the sub-grid of
/// every other node.
struct QuadratureMeta {
  int nodes = 0;
  std::vector<double> radii;
  double est_error = 0.0;
  bool below_nyquist = false;
};

using TorusIntegrand = std::function<Complex(std::span<const double> theta)>;

/// Mean of the integrand over the grid theta_j = 2 pi i_j / M, i.e. the
/// trapezoid rule with the 1/(2 pi)^n normalization already applied.
Complex torus_trapezoid(const TorusIntegrand& integrand, std::size_t n, int nodes_per_dim);

/// Trapezoid value of the integral of |cos(m theta + gamma)| over [0, 2 pi]; tends to 4.
/// `nodes` is the resolution per period of the integrand, so m * nodes equally
/// spaced points are used. With a fixed total count the kinks resonate with the
/// grid whenever m divides it, and the error grows like m^2.
double abs_cos_integral(int m, double gamma, int nodes = 4096);

struct CoefficientEstimate {
  MultiIndex k;
  CVector a;
  CVector b;
  /// k = 0: the grid mean is f(0) = a_0 + conj(b_0); it is reported in `a`, `b` is zero.
  bool merged_constant = false;
  QuadratureMeta meta;
};

/// Extraction radius used when spec.radii is empty.
inline constexpr double kDefaultExtractionRadius = 0.5;

/// a_k and b_k from torus integrals of f against exp(-+ i k.theta) at radii r,
/// divided by r^k.
CoefficientEstimate extract_coefficient(const PluriharmonicMap& map, const MultiIndex& k,
                                        const QuadratureSpec& spec = {});

/// All coefficients with min_degree <= |k| <= max_degree from one grid
/// evaluation (separable partial DFT). Graded lexicographic order.
std::vector<CoefficientEstimate> extract_coefficients(const PluriharmonicMap& map, int max_degree,
                                                      const QuadratureSpec& spec = {},
                                                      int min_degree = 1);

/// Per-coordinate contour radii for Cauchy integrals at z: spec.radii if
/// given, otherwise (1 + |z_j|)/2 capped at 0.95 (the cap is lifted when
/// |z_j| is too close to it).
std::vector<double> cauchy_radii(const PolydiskPoint& z, const QuadratureSpec& spec);

/// Cauchy-integral derivatives on the torus of the given radii:
///   d^alpha h(z) = alpha! mean_theta[ h(eta) prod_j eta_j / (eta_j - z_j)^(alpha_j + 1) ],
/// and the same for g, conjugated.
DerivativePair cauchy_derivative(const PluriharmonicMap& map, const PolydiskPoint& z,
                                 const MultiIndex& alpha, const QuadratureSpec& spec = {},
                                 QuadratureMeta* meta = nullptr);

/// Several orders from one pass over the contour grid.
std::vector<DerivativePair> cauchy_derivatives(const PluriharmonicMap& map,
                                               const PolydiskPoint& z,
                                               std::span<const MultiIndex> alphas,
                                               const QuadratureSpec& spec = {},
                                               QuadratureMeta* meta = nullptr);

/// sum_k ||a_k|| + sum_k ||b_k||, an upper bound for sup ||f|| on the closed polydisk.
double sup_bound_l1(const PluriharmonicMap& map);

/// (1/2 pi) int f(e^{i theta} z) (e^{-i m theta} + e^{i m theta}) d theta: the degree-m
/// holomorphic part plus the degree-m anti-holomorphic part at z.
CVector homogeneous_part_quadrature(const PluriharmonicMap& map, int m, const PolydiskPoint& z,
                                    int nodes = 256);

/// Torus mean of ||f||^2 on the torus of radii xi.
double torus_mean_square(const PluriharmonicMap& map, std::span<const double> xi, int nodes);

}  // namespace polydisk
