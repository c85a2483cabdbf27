#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "polydisk/automorphism.hpp"
#include "polydisk/multiindex.hpp"
#include "polydisk/quadrature_spec.hpp"
#include "polydisk/types.hpp"

namespace polydisk {

/// Coefficients of z^k (a) and of conj(z)^k (stored as b, the series term is conj(b) conj(z)^k).
struct SeriesTerm {
  CVector a;
  CVector b;
};

using TermTable = std::map<MultiIndex, SeriesTerm>;

/// f(z) = (2 gamma / pi) arg((1 + P(z)) / (1 - P(z))),  P(z) = prod_j psi_j(z_j),
/// psi_j(w) = lambda_j (w - a_j) / (1 - conj(a_j) w).
/// With one coordinate this is the classical extremal family for the harmonic
/// Schwarz-Pick lemma; for n > 1 it is only a candidate.
struct ColonnaParams {
  Complex gamma{1.0, 0.0};
  CVector a;
  CVector lambda;
};

/// Finite Blaschke product rotation * prod_j (z - zeros_j) / (1 - conj(zeros_j) z), one variable.
struct BlaschkeParams {
  Complex rotation{1.0, 0.0};
  CVector zeros;
};

/// Holomorphic and anti-holomorphic parts: f = h + conj(g).
struct HoloParts {
  CVector h;
  CVector g;
};

/// (d^alpha f / dz^alpha, d^alpha f / dzbar^alpha) = (d^alpha h, conj(d^alpha g)).
/// For alpha = 0 this is (h, conj(g)), whose sum is f.
struct DerivativePair {
  CVector holo;
  CVector anti;
};

/// Df and Dbar f, both N x n.
struct JacobianPair {
  CMatrix d;
  CMatrix dbar;
};

/// A pluriharmonic map f = h + conj(g) from the polydisk D^n into C^N.
///
/// Four representations share one value type:
///  - series:   finite coefficient tables a_k, b_k;
///  - composed: outer map evaluated at phi(zeta), lazily;
///  - colonna:  the closed-form arg family above (N = 1);
///  - blaschke: a finite Blaschke product (n = N = 1, holomorphic).
/// Maps are immutable; copies share state.
class PluriharmonicMap {
 public:
  enum class Kind { series, composed, colonna, blaschke };

  static PluriharmonicMap from_terms(std::size_t n, std::size_t N, TermTable terms);
  static PluriharmonicMap colonna(ColonnaParams params);
  static PluriharmonicMap blaschke(BlaschkeParams params);
  static PluriharmonicMap composed(PluriharmonicMap outer, PolydiskAutomorphism inner);

  Kind kind() const;
  std::size_t dim() const { return n_; }
  std::size_t codim() const { return N_; }

  /// Throws DomainError unless kind() == series.
  const TermTable& terms() const;
  const ColonnaParams& colonna_params() const;
  const BlaschkeParams& blaschke_params() const;
  const PluriharmonicMap& outer() const;
  const PolydiskAutomorphism& inner() const;

  /// Largest |k| among stored terms (series only, else -1).
  int series_degree() const;

  /// h and g at z. The caller guarantees z is inside the open polydisk; contour
  /// points of the quadrature routines use this unchecked path.
  HoloParts parts(std::span<const Complex> z) const;
  /// f at z; z is not range checked (see evaluate()).
  CVector value(std::span<const Complex> z) const;

 private:
  // Term table plus a flat copy laid out for evaluation.
  struct Series {
    TermTable table;
    std::vector<int> offsets;    // terms x n, j * (top + 1) + k_j into a power table
    CVector a, b;                // terms x N
    int top = 0;                 // largest single exponent
  };
  struct Composed {
    std::shared_ptr<const PluriharmonicMap> outer;
    PolydiskAutomorphism inner;
  };
  using Rep = std::variant<Series, Composed, ColonnaParams, BlaschkeParams>;

  PluriharmonicMap(std::size_t n, std::size_t N, std::shared_ptr<const Rep> rep)
      : n_(n), N_(N), rep_(std::move(rep)) {}

  std::size_t n_ = 0;
  std::size_t N_ = 0;
  std::shared_ptr<const Rep> rep_;
};

/// f(z). Throws DomainError on dimension mismatch.
CVector evaluate(const PluriharmonicMap& map, const PolydiskPoint& z);

/// Exact derivatives: term-by-term for series, Taylor arithmetic for the
/// closed forms. Composed maps throw DomainError (use cauchy_derivative).
DerivativePair derivative_exact(const PluriharmonicMap& map, const PolydiskPoint& z,
                                const MultiIndex& alpha);

/// Df and Dbar f at z. Exact where derivative_exact applies, otherwise
/// Cauchy quadrature with `spec`.
JacobianPair jacobian_pair(const PluriharmonicMap& map, const PolydiskPoint& z,
                           const QuadratureSpec& spec = {});

PluriharmonicMap make_extremal_colonna(Complex gamma, Complex a, Complex lambda);
/// The n-variable arg map built from prod_j psi_j; not claimed extremal for n > 1.
PluriharmonicMap make_colonna_product(Complex gamma, CVector a, CVector lambda);
PluriharmonicMap make_blaschke(Complex rotation, CVector zeros);

/// Taylor expansion at 0 of a closed-form map, truncated to total degree `degree`.
PluriharmonicMap series_expansion(const PluriharmonicMap& map, int degree);

PluriharmonicMap compose_with_automorphism(const PluriharmonicMap& map,
                                           const PolydiskAutomorphism& phi);

struct RandomMapOptions {
  bool zero_constant = false;
};

/// Random finite series normalized so that sum ||a_k|| + sum ||b_k|| = 1 - margin.
/// Deterministic in (n, N, degree, seed, margin, options).
PluriharmonicMap random_bounded_map(std::size_t n, std::size_t N, int degree, std::uint64_t seed,
                                    double margin, RandomMapOptions options = {});

/// Rigorous knowledge that sup ||f|| <= sup_bound on the polydisk.
struct Certificate {
  double sup_bound = 0.0;
  std::string basis;
};

/// Coefficient l1 norm for series, closed-form range for the arg family and
/// Blaschke products, the outer certificate for compositions.
Certificate certify(const PluriharmonicMap& map);

}  // namespace polydisk
