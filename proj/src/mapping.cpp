#include "polydisk/mapping.hpp"

#include <cmath>
#include <string>

#include "local_series.hpp"
#include "polydisk/errors.hpp"
#include "polydisk/quadrature.hpp"
#include "polydisk/rng.hpp"

namespace polydisk {

namespace {

constexpr double kUnimodularTol = 1e-12;

void require_unimodular(Complex c, const char* what) {
  if (std::abs(std::abs(c) - 1.0) > kUnimodularTol) {
    throw DomainError(std::string(what) + " must have modulus 1");
  }
}

void require_in_disk(Complex c, const char* what) {
  if (!(std::abs(c) < 1.0)) throw DomainError(std::string(what) + " must lie in the open unit disk");
}

int max_exponent(const TermTable& terms, std::size_t n) {
  int top = 0;
  for (const auto& [k, term] : terms) {
    for (std::size_t j = 0; j < n; ++j) top = std::max(top, k[j]);
  }
  return top;
}

// powers[j][e] = w_j^e
std::vector<CVector> power_table(std::span<const Complex> w, int top) {
  std::vector<CVector> p(w.size(), CVector(static_cast<std::size_t>(top) + 1));
  for (std::size_t j = 0; j < w.size(); ++j) {
    p[j][0] = 1.0;
    for (int e = 1; e <= top; ++e) p[j][e] = p[j][e - 1] * w[j];
  }
  return p;
}

Complex monomial(const std::vector<CVector>& powers, const MultiIndex& k) {
  Complex m = 1.0;
  for (std::size_t j = 0; j < k.size(); ++j) m *= powers[j][k[j]];
  return m;
}

Complex colonna_product(const ColonnaParams& p, std::span<const Complex> z) {
  Complex prod = 1.0;
  for (std::size_t j = 0; j < z.size(); ++j) {
    prod *= p.lambda[j] * (z[j] - p.a[j]) / (1.0 - std::conj(p.a[j]) * z[j]);
  }
  return prod;
}

Complex blaschke_value(const BlaschkeParams& p, Complex z) {
  Complex v = p.rotation;
  for (const auto& a : p.zeros) v *= (z - a) / (1.0 - std::conj(a) * z);
  return v;
}

void check_dims(const PluriharmonicMap& map, std::size_t n) {
  if (n != map.dim()) {
    throw DomainError("dimension mismatch: map has n = " + std::to_string(map.dim()) +
                      ", got " + std::to_string(n));
  }
}

// Taylor series at z0 of the closed forms, truncated to the box `bound`.
detail::BoxSeries colonna_log_series(const ColonnaParams& p, std::span<const Complex> z0,
                                     const std::vector<int>& bound) {
  auto prod = detail::BoxSeries::constant(bound, 1.0);
  for (std::size_t j = 0; j < z0.size(); ++j) {
    const auto c = detail::mobius_taylor(p.lambda[j], p.a[j], z0[j], bound[j]);
    prod = prod * detail::BoxSeries::univariate(bound, j, c);
  }
  return detail::log_ratio_of(prod);
}

detail::BoxSeries blaschke_series(const BlaschkeParams& p, Complex z0, int order) {
  const std::vector<int> bound{order};
  auto prod = detail::BoxSeries::constant(bound, p.rotation);
  for (const auto& a : p.zeros) {
    const auto c = detail::mobius_taylor(1.0, a, z0, order);
    prod = prod * detail::BoxSeries::univariate(bound, 0, c);
  }
  return prod;
}

// h = -(i gamma / pi) l,  g = -(i conj(gamma) / pi) l.
Complex colonna_h_factor(const ColonnaParams& p) { return Complex(0.0, -1.0) * p.gamma / kPi; }
Complex colonna_g_factor(const ColonnaParams& p) {
  return Complex(0.0, -1.0) * std::conj(p.gamma) / kPi;
}

}  // namespace

PluriharmonicMap PluriharmonicMap::from_terms(std::size_t n, std::size_t N, TermTable terms) {
  if (n == 0 || N == 0) throw DomainError("map dimensions must be >= 1");
  for (auto& [k, term] : terms) {
    if (k.size() != n) throw DomainError("term index length differs from n");
    if (term.a.empty()) term.a.assign(N, Complex{});
    if (term.b.empty()) term.b.assign(N, Complex{});
    if (term.a.size() != N || term.b.size() != N) {
      throw DomainError("coefficient vector length differs from N");
    }
  }
  Series s;
  for (const auto& [k, term] : terms) {
    for (std::size_t j = 0; j < n; ++j) s.top = std::max(s.top, k[j]);
  }
  for (const auto& [k, term] : terms) {
    for (std::size_t j = 0; j < n; ++j) s.offsets.push_back(static_cast<int>(j) * (s.top + 1) + k[j]);
    s.a.insert(s.a.end(), term.a.begin(), term.a.end());
    s.b.insert(s.b.end(), term.b.begin(), term.b.end());
  }
  s.table = std::move(terms);
  return PluriharmonicMap(n, N, std::make_shared<const Rep>(std::move(s)));
}

PluriharmonicMap PluriharmonicMap::colonna(ColonnaParams params) {
  if (params.a.empty() || params.a.size() != params.lambda.size()) {
    throw DomainError("arg family: need one (a, lambda) pair per coordinate");
  }
  require_unimodular(params.gamma, "gamma");
  for (const auto& l : params.lambda) require_unimodular(l, "lambda");
  for (const auto& a : params.a) require_in_disk(a, "a");
  const std::size_t n = params.a.size();
  return PluriharmonicMap(n, 1, std::make_shared<const Rep>(std::move(params)));
}

PluriharmonicMap PluriharmonicMap::blaschke(BlaschkeParams params) {
  require_unimodular(params.rotation, "rotation");
  for (const auto& a : params.zeros) require_in_disk(a, "Blaschke zero");
  return PluriharmonicMap(1, 1, std::make_shared<const Rep>(std::move(params)));
}

PluriharmonicMap PluriharmonicMap::composed(PluriharmonicMap outer, PolydiskAutomorphism inner) {
  if (inner.dim() != outer.dim()) throw DomainError("composition: dimension mismatch");
  const std::size_t n = outer.dim();
  const std::size_t N = outer.codim();
  auto rep = std::make_shared<const Rep>(
      Composed{std::make_shared<const PluriharmonicMap>(std::move(outer)), std::move(inner)});
  return PluriharmonicMap(n, N, std::move(rep));
}

PluriharmonicMap::Kind PluriharmonicMap::kind() const {
  return static_cast<Kind>(rep_->index());
}

const TermTable& PluriharmonicMap::terms() const {
  if (const auto* s = std::get_if<Series>(rep_.get())) return s->table;
  throw DomainError("map has no explicit coefficient table");
}

const ColonnaParams& PluriharmonicMap::colonna_params() const {
  if (const auto* p = std::get_if<ColonnaParams>(rep_.get())) return *p;
  throw DomainError("map is not of arg-family form");
}

const BlaschkeParams& PluriharmonicMap::blaschke_params() const {
  if (const auto* p = std::get_if<BlaschkeParams>(rep_.get())) return *p;
  throw DomainError("map is not a Blaschke product");
}

const PluriharmonicMap& PluriharmonicMap::outer() const {
  if (const auto* c = std::get_if<Composed>(rep_.get())) return *c->outer;
  throw DomainError("map is not a composition");
}

const PolydiskAutomorphism& PluriharmonicMap::inner() const {
  if (const auto* c = std::get_if<Composed>(rep_.get())) return c->inner;
  throw DomainError("map is not a composition");
}

int PluriharmonicMap::series_degree() const {
  const auto* s = std::get_if<Series>(rep_.get());
  if (!s) return -1;
  int d = 0;
  for (const auto& [k, term] : s->table) d = std::max(d, k.degree());
  return d;
}

HoloParts PluriharmonicMap::parts(std::span<const Complex> z) const {
  check_dims(*this, z.size());
  HoloParts out{CVector(N_), CVector(N_)};
  if (const auto* s = std::get_if<Series>(rep_.get())) {
    const std::size_t stride = static_cast<std::size_t>(s->top) + 1;
    CVector powers(n_ * stride);
    for (std::size_t j = 0; j < n_; ++j) {
      powers[j * stride] = 1.0;
      for (std::size_t e = 1; e < stride; ++e) powers[j * stride + e] = powers[j * stride + e - 1] * z[j];
    }
    const std::size_t count = s->a.size() / N_;
    const int* off = s->offsets.data();
    for (std::size_t t = 0; t < count; ++t, off += n_) {
      Complex m = powers[off[0]];
      for (std::size_t j = 1; j < n_; ++j) m *= powers[off[j]];
      if (N_ == 1) {
        out.h[0] += s->a[t] * m;
        out.g[0] += s->b[t] * m;
        continue;
      }
      for (std::size_t i = 0; i < N_; ++i) {
        out.h[i] += s->a[t * N_ + i] * m;
        out.g[i] += s->b[t * N_ + i] * m;
      }
    }
  } else if (const auto* c = std::get_if<Composed>(rep_.get())) {
    return c->outer->parts(c->inner.apply(z));
  } else if (const auto* p = std::get_if<ColonnaParams>(rep_.get())) {
    const Complex prod = colonna_product(*p, z);
    const Complex l = std::log((1.0 + prod) / (1.0 - prod));
    out.h[0] = colonna_h_factor(*p) * l;
    out.g[0] = colonna_g_factor(*p) * l;
  } else {
    out.h[0] = blaschke_value(std::get<BlaschkeParams>(*rep_), z[0]);
  }
  return out;
}

CVector PluriharmonicMap::value(std::span<const Complex> z) const {
  if (const auto* p = std::get_if<ColonnaParams>(rep_.get())) {
    check_dims(*this, z.size());
    const Complex prod = colonna_product(*p, z);
    return {2.0 * p->gamma / kPi * std::arg((1.0 + prod) / (1.0 - prod))};
  }
  auto hp = parts(z);
  for (std::size_t i = 0; i < N_; ++i) hp.h[i] += std::conj(hp.g[i]);
  return hp.h;
}

CVector evaluate(const PluriharmonicMap& map, const PolydiskPoint& z) {
  return map.value(z.coords());
}

DerivativePair derivative_exact(const PluriharmonicMap& map, const PolydiskPoint& z,
                                const MultiIndex& alpha) {
  const std::size_t n = map.dim();
  const std::size_t N = map.codim();
  check_dims(map, z.dim());
  if (alpha.size() != n) throw DomainError("derivative order length differs from n");
  DerivativePair out{CVector(N), CVector(N)};

  switch (map.kind()) {
    case PluriharmonicMap::Kind::series: {
      const auto& terms = map.terms();
      const auto zc = z.coords();
      CVector zbar(zc.begin(), zc.end());
      for (auto& v : zbar) v = std::conj(v);
      const int top = max_exponent(terms, n);
      const auto pz = power_table(zc, top);
      const auto pzbar = power_table(zbar, top);
      for (const auto& [k, term] : terms) {
        if (!k.dominates(alpha)) continue;
        const MultiIndex rest = k - alpha;
        const double ff = falling_factorial(k, alpha);
        const Complex mz = ff * monomial(pz, rest);
        const Complex mzbar = ff * monomial(pzbar, rest);
        for (std::size_t i = 0; i < N; ++i) {
          out.holo[i] += term.a[i] * mz;
          out.anti[i] += std::conj(term.b[i]) * mzbar;
        }
      }
      return out;
    }
    case PluriharmonicMap::Kind::colonna: {
      const auto& p = map.colonna_params();
      const std::vector<int> bound(alpha.components().begin(), alpha.components().end());
      const auto l = colonna_log_series(p, z.coords(), bound);
      const Complex c = l.coeff(alpha) * static_cast<double>(alpha.factorial());
      out.holo[0] = colonna_h_factor(p) * c;
      out.anti[0] = std::conj(colonna_g_factor(p) * c);
      return out;
    }
    case PluriharmonicMap::Kind::blaschke: {
      const auto s = blaschke_series(map.blaschke_params(), z[0], alpha[0]);
      out.holo[0] = s.coeff(alpha) * static_cast<double>(alpha.factorial());
      return out;
    }
    case PluriharmonicMap::Kind::composed:
      break;
  }
  throw DomainError("composed map has no exact derivative path; use cauchy_derivative");
}

JacobianPair jacobian_pair(const PluriharmonicMap& map, const PolydiskPoint& z,
                           const QuadratureSpec& spec) {
  const std::size_t n = map.dim();
  const std::size_t N = map.codim();
  check_dims(map, z.dim());
  JacobianPair jp{CMatrix(N, n), CMatrix(N, n)};
  const bool exact = map.kind() != PluriharmonicMap::Kind::composed;
  for (std::size_t m = 0; m < n; ++m) {
    const auto unit = MultiIndex::unit(n, m);
    const DerivativePair dp =
        exact ? derivative_exact(map, z, unit) : cauchy_derivative(map, z, unit, spec);
    for (std::size_t i = 0; i < N; ++i) {
      jp.d(i, m) = dp.holo[i];
      jp.dbar(i, m) = dp.anti[i];
    }
  }
  return jp;
}

PluriharmonicMap make_extremal_colonna(Complex gamma, Complex a, Complex lambda) {
  return PluriharmonicMap::colonna(ColonnaParams{gamma, {a}, {lambda}});
}

PluriharmonicMap make_colonna_product(Complex gamma, CVector a, CVector lambda) {
  return PluriharmonicMap::colonna(ColonnaParams{gamma, std::move(a), std::move(lambda)});
}

PluriharmonicMap make_blaschke(Complex rotation, CVector zeros) {
  return PluriharmonicMap::blaschke(BlaschkeParams{rotation, std::move(zeros)});
}

PluriharmonicMap series_expansion(const PluriharmonicMap& map, int degree) {
  if (degree < 0) throw DomainError("expansion degree must be >= 0");
  const std::size_t n = map.dim();
  TermTable terms;
  switch (map.kind()) {
    case PluriharmonicMap::Kind::series:
      for (const auto& [k, term] : map.terms()) {
        if (k.degree() <= degree) terms.emplace(k, term);
      }
      break;
    case PluriharmonicMap::Kind::colonna: {
      const auto& p = map.colonna_params();
      const std::vector<int> bound(n, degree);
      const CVector origin(n);
      const auto l = colonna_log_series(p, origin, bound);
      const Complex hf = colonna_h_factor(p);
      const Complex gf = colonna_g_factor(p);
      for (const auto& k : mi_enumerate(n, degree)) {
        const Complex c = l.coeff(k);
        terms.emplace(k, SeriesTerm{{hf * c}, {gf * c}});
      }
      break;
    }
    case PluriharmonicMap::Kind::blaschke: {
      const auto s = blaschke_series(map.blaschke_params(), 0.0, degree);
      for (int m = 0; m <= degree; ++m) {
        terms.emplace(MultiIndex{m}, SeriesTerm{{s.coeff(MultiIndex{m})}, {Complex{}}});
      }
      break;
    }
    case PluriharmonicMap::Kind::composed:
      throw DomainError("composed maps have no explicit expansion; extract coefficients by quadrature");
  }
  return PluriharmonicMap::from_terms(n, map.codim(), std::move(terms));
}

PluriharmonicMap compose_with_automorphism(const PluriharmonicMap& map,
                                           const PolydiskAutomorphism& phi) {
  return PluriharmonicMap::composed(map, phi);
}

PluriharmonicMap random_bounded_map(std::size_t n, std::size_t N, int degree, std::uint64_t seed,
                                    double margin, RandomMapOptions options) {
  if (n == 0 || N == 0) throw DomainError("map dimensions must be >= 1");
  if (degree < 0) throw DomainError("degree must be >= 0");
  if (!(margin > 0.0 && margin < 1.0)) throw DomainError("margin must be in (0, 1)");

  TermTable terms;
  double l1 = 0.0;
  std::uint64_t stream = 0;
  for (const auto& k : mi_enumerate(n, degree)) {
    RandomStream rs(seed, stream++);
    SeriesTerm term{CVector(N), CVector(N)};
    const bool constant = k.degree() == 0;
    if (!(constant && options.zero_constant)) {
      for (auto& c : term.a) c = rs.in_disk(1.0);
    }
    // The constant term lives in a_0 only.
    if (!constant) {
      for (auto& c : term.b) c = rs.in_disk(1.0);
    }
    l1 += euclid_norm(term.a) + euclid_norm(term.b);
    terms.emplace(k, std::move(term));
  }
  if (l1 > 0.0) {
    const double scale = (1.0 - margin) / l1;
    for (auto& [k, term] : terms) {
      for (auto& c : term.a) c *= scale;
      for (auto& c : term.b) c *= scale;
    }
  }
  return PluriharmonicMap::from_terms(n, N, std::move(terms));
}

Certificate certify(const PluriharmonicMap& map) {
  switch (map.kind()) {
    case PluriharmonicMap::Kind::series:
      return {sup_bound_l1(map), "coefficient l1 norm"};
    case PluriharmonicMap::Kind::colonna:
      return {1.0, "closed form: |arg| < pi/2 on the right half plane"};
    case PluriharmonicMap::Kind::blaschke:
      return {1.0, "closed form: Blaschke product maps the disk into itself"};
    case PluriharmonicMap::Kind::composed: {
      auto c = certify(map.outer());
      c.basis += " (composed with an automorphism)";
      return c;
    }
  }
  return {};
}

}  // namespace polydisk
