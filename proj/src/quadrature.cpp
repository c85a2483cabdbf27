#include "polydisk/quadrature.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "parallel.hpp"
#include "polydisk/errors.hpp"
#include "torus_sum.hpp"

namespace polydisk {

namespace {

std::vector<double> node_angles(int nodes) {
  std::vector<double> t(static_cast<std::size_t>(nodes));
  for (int i = 0; i < nodes; ++i) t[i] = 2.0 * kPi * i / nodes;
  return t;
}

std::vector<double> extraction_radii(std::size_t n, const QuadratureSpec& spec) {
  if (spec.radii.empty()) return std::vector<double>(n, kDefaultExtractionRadius);
  if (spec.radii.size() == 1) return std::vector<double>(n, spec.radii[0]);
  if (spec.radii.size() != n) throw DomainError("quadrature: need one radius per coordinate");
  return spec.radii;
}

// Values of f on the torus grid of radii r, row-major (dimension 0 slowest), N per node.
CVector grid_values(const PluriharmonicMap& map, std::span<const double> r, int nodes) {
  const std::size_t n = map.dim();
  const std::size_t N = map.codim();
  const std::size_t M = static_cast<std::size_t>(nodes);
  std::size_t total = 1;
  for (std::size_t j = 0; j < n; ++j) total *= M;
  std::vector<CVector> circle(n, CVector(M));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < M; ++i) circle[j][i] = std::polar(r[j], 2.0 * kPi * i / nodes);
  }
  CVector out(total * N);
  const std::size_t inner = total / M;
  detail::parallel_for(M, [&](std::size_t i0) {
    CVector z(n);
    for (std::size_t q = 0; q < inner; ++q) {
      std::size_t flat = i0 * inner + q;
      std::size_t rem = flat;
      for (std::size_t j = n; j-- > 0;) {
        z[j] = circle[j][rem % M];
        rem /= M;
      }
      const CVector v = map.value(z);
      for (std::size_t c = 0; c < N; ++c) {
        if (!std::isfinite(v[c].real()) || !std::isfinite(v[c].imag())) {
          throw NumericError("non-finite map value at a quadrature node");
        }
        out[flat * N + c] = v[c];
      }
    }
  });
  return out;
}

// Contract every grid axis against exp(-i f theta) for f in [-D, D]; result shape
// (2D+1)^n x N, indexed by (f_j + D). Grid values have `nodes` points per axis.
CVector partial_dft(CVector values, std::size_t n, std::size_t N, int nodes, int D) {
  const std::size_t M = static_cast<std::size_t>(nodes);
  const std::size_t F = static_cast<std::size_t>(2 * D + 1);
  std::vector<CVector> twiddle(F, CVector(M));
  for (std::size_t f = 0; f < F; ++f) {
    const int freq = static_cast<int>(f) - D;
    for (std::size_t i = 0; i < M; ++i) {
      twiddle[f][i] = std::polar(1.0 / nodes, -2.0 * kPi * ((static_cast<long>(freq) * static_cast<long>(i)) % nodes) / nodes);
    }
  }
  // Current layout: axes 0..d-1 already transformed (size F), axes d..n-1 raw (size M).
  std::vector<std::size_t> extent(n, M);
  for (std::size_t d = 0; d < n; ++d) {
    std::size_t outer = 1, inner = N;
    for (std::size_t j = 0; j < d; ++j) outer *= extent[j];
    for (std::size_t j = d + 1; j < n; ++j) inner *= extent[j];
    CVector next(outer * F * inner);
    for (std::size_t o = 0; o < outer; ++o) {
      for (std::size_t f = 0; f < F; ++f) {
        Complex* dst = next.data() + (o * F + f) * inner;
        for (std::size_t i = 0; i < M; ++i) {
          const Complex w = twiddle[f][i];
          const Complex* src = values.data() + (o * M + i) * inner;
          for (std::size_t q = 0; q < inner; ++q) dst[q] += w * src[q];
        }
      }
    }
    values = std::move(next);
    extent[d] = F;
  }
  return values;
}

CVector decimate(const CVector& values, std::size_t n, std::size_t N, int nodes) {
  const std::size_t M = static_cast<std::size_t>(nodes);
  const std::size_t H = M / 2;
  std::size_t total = 1;
  for (std::size_t j = 0; j < n; ++j) total *= H;
  CVector out(total * N);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat, src = 0, mul = 1;
    for (std::size_t j = n; j-- > 0;) {
      src += 2 * (rem % H) * mul;
      rem /= H;
      mul *= M;
    }
    for (std::size_t c = 0; c < N; ++c) out[flat * N + c] = values[src * N + c];
  }
  return out;
}

double radius_power(std::span<const double> r, const MultiIndex& k) {
  double p = 1.0;
  for (std::size_t j = 0; j < k.size(); ++j) p *= std::pow(r[j], k[j]);
  return p;
}

bool nyquist_warning(const PluriharmonicMap& map, int nodes, int max_k_degree) {
  const int d = map.series_degree();
  if (d >= 0) return nodes <= 2 * d;
  return nodes <= 2 * max_k_degree;
}

}  // namespace

void QuadratureSpec::validate() const {
  if (nodes_per_dim < 8 || !std::has_single_bit(static_cast<unsigned>(nodes_per_dim))) {
    throw DomainError("quadrature: nodes per dimension must be a power of two >= 8, got " +
                      std::to_string(nodes_per_dim));
  }
  for (double r : radii) {
    if (!(r > 0.0 && r < 1.0)) throw DomainError("quadrature: radii must lie in (0, 1)");
  }
}

Complex torus_trapezoid(const TorusIntegrand& integrand, std::size_t n, int nodes_per_dim) {
  if (n == 0) throw DomainError("torus dimension must be >= 1");
  if (nodes_per_dim < 2) throw DomainError("quadrature needs at least two nodes");
  const auto angles = node_angles(nodes_per_dim);
  auto fn = [&](std::span<const int> idx, std::span<Complex> out) {
    double theta[16];
    std::vector<double> big;
    double* t = theta;
    if (idx.size() > 16) {
      big.resize(idx.size());
      t = big.data();
    }
    for (std::size_t j = 0; j < idx.size(); ++j) t[j] = angles[idx[j]];
    out[0] = integrand(std::span<const double>(t, idx.size()));
  };
  if (nodes_per_dim % 2 != 0) {
    // The even sub-grid is only meaningful for even M; fall back to a plain sum.
    std::vector<int> idx(n, 0);
    Complex sum = 0.0;
    std::size_t total = 1;
    for (std::size_t j = 0; j < n; ++j) total *= static_cast<std::size_t>(nodes_per_dim);
    for (std::size_t flat = 0; flat < total; ++flat) {
      std::size_t rem = flat;
      for (std::size_t j = n; j-- > 0;) {
        idx[j] = static_cast<int>(rem % nodes_per_dim);
        rem /= nodes_per_dim;
      }
      Complex v;
      fn(idx, std::span<Complex>(&v, 1));
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw NumericError("non-finite integrand value at a quadrature node");
      }
      sum += v;
    }
    return sum / static_cast<double>(total);
  }
  return detail::torus_means(n, nodes_per_dim, 1, fn).full[0];
}

double abs_cos_integral(int m, double gamma, int nodes) {
  if (m <= 0) throw DomainError("abs_cos_integral: m must be a positive integer");
  if (nodes < 1) throw DomainError("abs_cos_integral: nodes must be positive");
  // `nodes` samples per period of the integrand, m * nodes on [0, 2 pi).
  const Complex mean = torus_trapezoid(
      [m, gamma](std::span<const double> t) { return Complex(std::abs(std::cos(m * t[0] + gamma))); },
      1, m * nodes);
  return 2.0 * kPi * mean.real();
}

CoefficientEstimate extract_coefficient(const PluriharmonicMap& map, const MultiIndex& k,
                                        const QuadratureSpec& spec) {
  spec.validate();
  const std::size_t n = map.dim();
  const std::size_t N = map.codim();
  if (k.size() != n) throw DomainError("coefficient index length differs from n");
  const auto r = extraction_radii(n, spec);
  const int M = spec.nodes_per_dim;

  std::vector<CVector> circle(n, CVector(static_cast<std::size_t>(M)));
  for (std::size_t j = 0; j < n; ++j) {
    for (int i = 0; i < M; ++i) circle[j][i] = std::polar(r[j], 2.0 * kPi * i / M);
  }
  // Columns: [f e^{-ik.theta}] (N values) then [f e^{+ik.theta}] (N values).
  auto fn = [&](std::span<const int> idx, std::span<Complex> out) {
    CVector z(n);
    long phase = 0;
    for (std::size_t j = 0; j < n; ++j) {
      z[j] = circle[j][idx[j]];
      phase += static_cast<long>(k[j]) * idx[j];
    }
    const Complex e = std::polar(1.0, 2.0 * kPi * (phase % M) / M);
    const CVector v = map.value(z);
    for (std::size_t c = 0; c < N; ++c) {
      out[c] = v[c] * std::conj(e);
      out[N + c] = v[c] * e;
    }
  };
  const auto means = detail::torus_means(n, M, 2 * N, fn);

  CoefficientEstimate est{k, CVector(N), CVector(N), k.degree() == 0, {}};
  const double rk = radius_power(r, k);
  double err = 0.0;
  for (std::size_t c = 0; c < N; ++c) {
    if (est.merged_constant) {
      est.a[c] = means.full[c];
      err = std::max(err, std::abs(means.full[c] - means.half[c]));
    } else {
      est.a[c] = means.full[c] / rk;
      est.b[c] = std::conj(means.full[N + c]) / rk;
      err = std::max(err, std::abs(means.full[c] - means.half[c]) / rk);
      err = std::max(err, std::abs(means.full[N + c] - means.half[N + c]) / rk);
    }
  }
  est.meta = QuadratureMeta{M, r, err, nyquist_warning(map, M, k.degree())};
  return est;
}

std::vector<CoefficientEstimate> extract_coefficients(const PluriharmonicMap& map, int max_degree,
                                                      const QuadratureSpec& spec, int min_degree) {
  spec.validate();
  if (max_degree < 0) throw DomainError("max_degree must be >= 0");
  const std::size_t n = map.dim();
  const std::size_t N = map.codim();
  const auto r = extraction_radii(n, spec);
  const int M = spec.nodes_per_dim;
  const int D = max_degree;

  CVector values = grid_values(map, r, M);
  CVector half = decimate(values, n, N, M);
  const CVector full_c = partial_dft(std::move(values), n, N, M, D);
  const CVector half_c = partial_dft(std::move(half), n, N, M / 2, D);

  const std::size_t F = static_cast<std::size_t>(2 * D + 1);
  auto slot = [&](const MultiIndex& k, int sign) {
    std::size_t off = 0;
    for (std::size_t j = 0; j < n; ++j) off = off * F + static_cast<std::size_t>(sign * k[j] + D);
    return off * N;
  };

  const bool warn = nyquist_warning(map, M, max_degree);
  std::vector<CoefficientEstimate> out;
  for (const auto& k : mi_enumerate(n, max_degree)) {
    if (k.degree() < min_degree) continue;
    CoefficientEstimate est{k, CVector(N), CVector(N), k.degree() == 0, {}};
    const double rk = radius_power(r, k);
    const std::size_t pos = slot(k, +1);
    const std::size_t neg = slot(k, -1);
    double err = 0.0;
    for (std::size_t c = 0; c < N; ++c) {
      if (est.merged_constant) {
        est.a[c] = full_c[pos + c];
        err = std::max(err, std::abs(full_c[pos + c] - half_c[pos + c]));
      } else {
        est.a[c] = full_c[pos + c] / rk;
        est.b[c] = std::conj(full_c[neg + c]) / rk;
        err = std::max(err, std::abs(full_c[pos + c] - half_c[pos + c]) / rk);
        err = std::max(err, std::abs(full_c[neg + c] - half_c[neg + c]) / rk);
      }
    }
    est.meta = QuadratureMeta{M, r, err, warn};
    out.push_back(std::move(est));
  }
  return out;
}

std::vector<double> cauchy_radii(const PolydiskPoint& z, const QuadratureSpec& spec) {
  const std::size_t n = z.dim();
  std::vector<double> r;
  if (spec.radii.empty()) {
    r.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      const double a = std::abs(z[j]);
      r[j] = std::min(0.95, 0.5 * (1.0 + a));
      if (r[j] < a + 0.01) r[j] = 0.5 * (1.0 + a);
    }
  } else if (spec.radii.size() == 1) {
    r.assign(n, spec.radii[0]);
  } else if (spec.radii.size() == n) {
    r = spec.radii;
  } else {
    throw DomainError("quadrature: need one radius per coordinate");
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!(r[j] > std::abs(z[j]))) {
      throw DomainError("contour radius " + std::to_string(r[j]) +
                        " does not enclose the point (|z_" + std::to_string(j + 1) +
                        "| = " + std::to_string(std::abs(z[j])) + ")");
    }
  }
  return r;
}

std::vector<DerivativePair> cauchy_derivatives(const PluriharmonicMap& map,
                                               const PolydiskPoint& z,
                                               std::span<const MultiIndex> alphas,
                                               const QuadratureSpec& spec, QuadratureMeta* meta) {
  spec.validate();
  const std::size_t n = map.dim();
  const std::size_t N = map.codim();
  if (z.dim() != n) throw DomainError("dimension mismatch between map and point");
  int top = 0;
  for (const auto& a : alphas) {
    if (a.size() != n) throw DomainError("derivative order length differs from n");
    for (std::size_t j = 0; j < n; ++j) top = std::max(top, a[j]);
  }
  const auto r = cauchy_radii(z, spec);
  const int M = spec.nodes_per_dim;
  const std::size_t A = alphas.size();

  // kernel[j][i][p] = eta / (eta - z_j)^(p + 1) at node i of circle j.
  std::vector<std::vector<CVector>> kernel(n, std::vector<CVector>(static_cast<std::size_t>(M)));
  std::vector<CVector> circle(n, CVector(static_cast<std::size_t>(M)));
  for (std::size_t j = 0; j < n; ++j) {
    for (int i = 0; i < M; ++i) {
      const Complex eta = std::polar(r[j], 2.0 * kPi * i / M);
      circle[j][i] = eta;
      const Complex inv = 1.0 / (eta - z[j]);
      CVector& kp = kernel[j][i];
      kp.resize(static_cast<std::size_t>(top) + 1);
      Complex acc = eta * inv;
      for (int p = 0; p <= top; ++p) {
        kp[p] = acc;
        acc *= inv;
      }
    }
  }

  auto fn = [&](std::span<const int> idx, std::span<Complex> out) {
    CVector eta(n);
    for (std::size_t j = 0; j < n; ++j) eta[j] = circle[j][idx[j]];
    const HoloParts hp = map.parts(eta);
    for (std::size_t a = 0; a < A; ++a) {
      Complex k = 1.0;
      for (std::size_t j = 0; j < n; ++j) k *= kernel[j][idx[j]][alphas[a][j]];
      for (std::size_t c = 0; c < N; ++c) {
        out[(a * 2) * N + c] = hp.h[c] * k;
        out[(a * 2 + 1) * N + c] = hp.g[c] * k;
      }
    }
  };
  const auto means = detail::torus_means(n, M, 2 * N * A, fn);

  std::vector<DerivativePair> out;
  out.reserve(A);
  double err = 0.0;
  for (std::size_t a = 0; a < A; ++a) {
    const double fact = static_cast<double>(alphas[a].factorial());
    DerivativePair dp{CVector(N), CVector(N)};
    for (std::size_t c = 0; c < N; ++c) {
      const std::size_t ih = (a * 2) * N + c;
      const std::size_t ig = (a * 2 + 1) * N + c;
      dp.holo[c] = fact * means.full[ih];
      dp.anti[c] = std::conj(fact * means.full[ig]);
      err = std::max(err, fact * std::abs(means.full[ih] - means.half[ih]));
      err = std::max(err, fact * std::abs(means.full[ig] - means.half[ig]));
    }
    out.push_back(std::move(dp));
  }
  if (meta) *meta = QuadratureMeta{M, r, err, false};
  return out;
}

DerivativePair cauchy_derivative(const PluriharmonicMap& map, const PolydiskPoint& z,
                                 const MultiIndex& alpha, const QuadratureSpec& spec,
                                 QuadratureMeta* meta) {
  const MultiIndex one[] = {alpha};
  return cauchy_derivatives(map, z, one, spec, meta).front();
}

double sup_bound_l1(const PluriharmonicMap& map) {
  if (map.kind() != PluriharmonicMap::Kind::series) {
    throw DomainError("sup_bound_l1 needs an explicit coefficient table");
  }
  double s = 0.0;
  for (const auto& [k, term] : map.terms()) s += euclid_norm(term.a) + euclid_norm(term.b);
  return s;
}

CVector homogeneous_part_quadrature(const PluriharmonicMap& map, int m, const PolydiskPoint& z,
                                    int nodes) {
  if (m < 1) throw DomainError("homogeneous part: m must be >= 1");
  const std::size_t n = map.dim();
  const std::size_t N = map.codim();
  if (z.dim() != n) throw DomainError("dimension mismatch between map and point");
  auto fn = [&](std::span<const int> idx, std::span<Complex> out) {
    const Complex e = std::polar(1.0, 2.0 * kPi * idx[0] / nodes);
    CVector w(n);
    for (std::size_t j = 0; j < n; ++j) w[j] = e * z[j];
    const CVector v = map.value(w);
    const double weight = 2.0 * std::cos(2.0 * kPi * ((static_cast<long>(m) * idx[0]) % nodes) / nodes);
    for (std::size_t c = 0; c < N; ++c) out[c] = v[c] * weight;
  };
  return detail::torus_means(1, nodes, N, fn).full;
}

double torus_mean_square(const PluriharmonicMap& map, std::span<const double> xi, int nodes) {
  const std::size_t n = map.dim();
  if (xi.size() != n) throw DomainError("need one radius per coordinate");
  for (double r : xi) {
    if (!(r >= 0.0 && r < 1.0)) throw DomainError("radii must lie in [0, 1)");
  }
  auto fn = [&](std::span<const int> idx, std::span<Complex> out) {
    CVector z(n);
    for (std::size_t j = 0; j < n; ++j) z[j] = std::polar(xi[j], 2.0 * kPi * idx[j] / nodes);
    const CVector v = map.value(z);
    double s = 0.0;
    for (const auto& c : v) s += std::norm(c);
    out[0] = s;
  };
  return detail::torus_means(n, nodes, 1, fn).full[0].real();
}

}  // namespace polydisk
