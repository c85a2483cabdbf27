#include "polydisk/search.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "parallel.hpp"
#include "polydisk/bounds.hpp"
#include "polydisk/errors.hpp"
#include "polydisk/quadrature.hpp"
#include "polydisk/rng.hpp"

namespace polydisk {

namespace {

constexpr double kGolden = 0.6180339887498949;
constexpr double kTwoPi = 2.0 * kPi;

CVector phases_to_theta(std::span<const double> phi) {
  CVector t(phi.size());
  for (std::size_t j = 0; j < phi.size(); ++j) t[j] = std::polar(1.0, phi[j]);
  return t;
}

double phase_objective(const JacobianPair& jp, std::span<const double> phi) {
  return direction_objective(jp, phases_to_theta(phi));
}

// Coordinatewise ascent on the phases: a coarse scan of each circle, then a
// golden-section polish inside the best scan cell.
double refine_phases(const JacobianPair& jp, std::vector<double>& phi, double value, int sweeps) {
  constexpr int kScan = 32;
  constexpr int kPolish = 40;
  for (int s = 0; s < sweeps; ++s) {
    const double before = value;
    for (std::size_t j = 0; j < phi.size(); ++j) {
      std::vector<double> trial = phi;
      double best_phi = phi[j];
      double best = value;
      for (int i = 0; i < kScan; ++i) {
        trial[j] = kTwoPi * i / kScan;
        const double v = phase_objective(jp, trial);
        if (v > best) {
          best = v;
          best_phi = trial[j];
        }
      }
      double lo = best_phi - kTwoPi / kScan;
      double hi = best_phi + kTwoPi / kScan;
      auto at = [&](double x) {
        trial[j] = x;
        return phase_objective(jp, trial);
      };
      double c = hi - kGolden * (hi - lo);
      double d = lo + kGolden * (hi - lo);
      double fc = at(c), fd = at(d);
      for (int it = 0; it < kPolish; ++it) {
        if (fc > fd) {
          hi = d;
          d = c;
          fd = fc;
          c = hi - kGolden * (hi - lo);
          fc = at(c);
        } else {
          lo = c;
          c = d;
          fc = fd;
          d = lo + kGolden * (hi - lo);
          fd = at(d);
        }
      }
      if (fc > best) {
        best = fc;
        best_phi = c;
      }
      if (fd > best) {
        best = fd;
        best_phi = d;
      }
      phi[j] = std::remainder(best_phi, kTwoPi);
      value = best;
    }
    if (value - before <= 1e-15 * std::max(1.0, value)) break;
  }
  return value;
}

struct Box {
  std::vector<double> lo, hi;
  std::vector<bool> periodic;
};

Box parameter_box(std::size_t n, SearchFamily family) {
  Box b;
  auto add = [&](double lo, double hi, bool periodic) {
    b.lo.push_back(lo);
    b.hi.push_back(hi);
    b.periodic.push_back(periodic);
  };
  if (family == SearchFamily::colonna_tensor) {
    add(0.0, kTwoPi, true);  // gamma phase
    for (std::size_t j = 0; j < n; ++j) {
      add(0.0, 0.95, false);     // |a_j|
      add(0.0, kTwoPi, true);    // arg a_j
      add(0.0, kTwoPi, true);    // arg lambda_j
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    add(0.0, 0.9, false);     // |z_j|
    add(0.0, kTwoPi, true);   // arg z_j
  }
  return b;
}

std::size_t family_param_count(std::size_t n, SearchFamily family) {
  return family == SearchFamily::colonna_tensor ? 1 + 3 * n : 0;
}

CVector z_from_params(std::span<const double> x, std::size_t offset, std::size_t n) {
  CVector z(n);
  for (std::size_t j = 0; j < n; ++j) z[j] = std::polar(x[offset + 2 * j], x[offset + 2 * j + 1]);
  return z;
}

PluriharmonicMap colonna_member(std::span<const double> p, std::size_t n) {
  CVector a(n), lambda(n);
  for (std::size_t j = 0; j < n; ++j) {
    a[j] = std::polar(p[1 + 3 * j], p[2 + 3 * j]);
    lambda[j] = std::polar(1.0, p[3 + 3 * j]);
  }
  return make_colonna_product(std::polar(1.0, p[0]), std::move(a), std::move(lambda));
}

constexpr long kEvalsPerStart = 250;
constexpr int kGoldenSteps = 6;

struct StartOutcome {
  std::vector<double> x;
  double ratio = -1.0;
  long evaluations = 0;
  std::uint64_t map_seed = 0;
};

}  // namespace

double direction_objective(const JacobianPair& jp, std::span<const Complex> theta) {
  const std::size_t N = jp.d.rows();
  const std::size_t n = jp.d.cols();
  if (theta.size() != n) throw DomainError("direction length differs from n");
  double s = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    Complex v = 0.0;
    for (std::size_t m = 0; m < n; ++m) v += jp.d(i, m) * theta[m] + jp.dbar(i, m) * std::conj(theta[m]);
    s += std::norm(v);
  }
  return std::sqrt(s);
}

DirectionMax direction_max(const JacobianPair& jp, int samples, int refine_steps) {
  const std::size_t n = jp.d.cols();
  if (jp.dbar.cols() != n || jp.dbar.rows() != jp.d.rows()) {
    throw DomainError("Jacobian pair dimensions differ");
  }
  std::vector<std::pair<double, std::vector<double>>> cands;
  // Quarter-turn lattice (capped), then seeded uniform phases.
  std::size_t lattice = 1;
  for (std::size_t j = 0; j < n && lattice < 4096; ++j) lattice *= 4;
  for (std::size_t q = 0; q < lattice; ++q) {
    std::vector<double> phi(n, 0.0);
    std::size_t rem = q;
    for (std::size_t j = 0; j < n && rem; ++j) {
      phi[j] = 0.5 * kPi * static_cast<double>(rem % 4);
      rem /= 4;
    }
    cands.emplace_back(phase_objective(jp, phi), std::move(phi));
  }
  RandomStream rs(0x5eedd1ec7ULL, n);
  for (int s = 0; s < samples; ++s) {
    std::vector<double> phi(n);
    for (auto& p : phi) p = rs.uniform(0.0, kTwoPi);
    cands.emplace_back(phase_objective(jp, phi), std::move(phi));
  }
  std::stable_sort(cands.begin(), cands.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  const std::size_t keep = std::min<std::size_t>(4, cands.size());
  DirectionMax best{phases_to_theta(cands[0].second), cands[0].first};
  for (std::size_t c = 0; c < keep; ++c) {
    std::vector<double> phi = cands[c].second;
    const double v = refine_phases(jp, phi, cands[c].first, refine_steps);
    if (v > best.value) best = DirectionMax{phases_to_theta(phi), v};
  }
  // Report the objective at the stored theta so the value is reproducible.
  best.value = direction_objective(jp, best.theta);
  return best;
}

double sharpness_ratio(const PluriharmonicMap& map, const PolydiskPoint& z, const MultiIndex& alpha) {
  const auto method = map.kind() == PluriharmonicMap::Kind::composed ? DerivativeMethod::cauchy
                                                                      : DerivativeMethod::exact;
  const BoundReport r = verify_derivative_bound(map, z, alpha, method);
  return r.lhs / r.rhs;
}

std::string_view to_string(SearchFamily f) {
  return f == SearchFamily::colonna_tensor ? "colonna_tensor" : "random_series";
}

SearchFamily search_family_from_string(std::string_view name) {
  if (name == "colonna_tensor") return SearchFamily::colonna_tensor;
  if (name == "random_series") return SearchFamily::random_series;
  throw DomainError("unknown search family: " + std::string(name));
}

PluriharmonicMap family_member(const SharpnessResult& result) {
  const std::size_t n = result.alpha.size();
  if (result.family == SearchFamily::colonna_tensor) {
    if (result.family_params.size() != family_param_count(n, result.family)) {
      throw DomainError("sharpness result: wrong parameter count");
    }
    return colonna_member(result.family_params, n);
  }
  return random_bounded_map(n, 1, result.map_degree, result.map_seed, result.map_margin);
}

double recompute_ratio(const SharpnessResult& result) {
  return sharpness_ratio(family_member(result), PolydiskPoint(result.z), result.alpha);
}

SharpnessResult sharpness_search(std::size_t n, const MultiIndex& alpha, SearchFamily family,
                                 long budget, std::uint64_t seed) {
  if (n == 0 || alpha.size() != n) throw DomainError("search: alpha length must equal n");
  if (alpha.min_component() < 1) throw DomainError("search: every alpha_j must be >= 1");
  if (budget < 1) throw DomainError("search: budget must be >= 1");

  const Box box = parameter_box(n, family);
  const std::size_t nf = family_param_count(n, family);
  const std::size_t dims = box.lo.size();
  const int map_degree = alpha.degree() + 2;
  const double map_margin = 1e-9;

  const long starts = (budget + kEvalsPerStart - 1) / kEvalsPerStart;
  std::vector<StartOutcome> outcomes(static_cast<std::size_t>(starts));

  detail::parallel_for(outcomes.size(), [&](std::size_t s) {
    const long cap = std::min(kEvalsPerStart, budget - static_cast<long>(s) * kEvalsPerStart);
    RandomStream rs(seed, s);
    StartOutcome& out = outcomes[s];
    out.map_seed = splitmix64(seed ^ (0xa5a5a5a5ULL + s));
    std::optional<PluriharmonicMap> fixed_map;
    if (family == SearchFamily::random_series) {
      fixed_map = random_bounded_map(n, 1, map_degree, out.map_seed, map_margin);
    }

    auto objective = [&](const std::vector<double>& x) -> double {
      ++out.evaluations;
      try {
        const PolydiskPoint z(z_from_params(x, nf, n));
        const PluriharmonicMap map =
            fixed_map ? *fixed_map : colonna_member(std::span<const double>(x).first(nf), n);
        return sharpness_ratio(map, z, alpha);
      } catch (const std::exception&) {
        return 0.0;
      }
    };

    std::vector<double> x(dims);
    for (std::size_t i = 0; i < dims; ++i) x[i] = rs.uniform(box.lo[i], box.hi[i]);
    double fx = objective(x);
    out.x = x;
    out.ratio = fx;

    std::vector<double> width(dims);
    for (std::size_t i = 0; i < dims; ++i) width[i] = box.periodic[i] ? 0.5 * kPi : 0.25 * (box.hi[i] - box.lo[i]);

    while (out.evaluations < cap) {
      for (std::size_t i = 0; i < dims && out.evaluations < cap; ++i) {
        double lo = x[i] - width[i];
        double hi = x[i] + width[i];
        if (!box.periodic[i]) {
          lo = std::max(lo, box.lo[i]);
          hi = std::min(hi, box.hi[i]);
        }
        auto at = [&](double v) {
          std::vector<double> y = x;
          y[i] = v;
          const double r = objective(y);
          if (r > out.ratio) {
            out.ratio = r;
            out.x = y;
          }
          return r;
        };
        double c = hi - kGolden * (hi - lo);
        double d = lo + kGolden * (hi - lo);
        double fc = at(c);
        if (out.evaluations >= cap) break;
        double fd = at(d);
        for (int it = 0; it < kGoldenSteps && out.evaluations < cap; ++it) {
          if (fc > fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - kGolden * (hi - lo);
            fc = at(c);
          } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + kGolden * (hi - lo);
            fd = at(d);
          }
        }
        x = out.x;
      }
      for (auto& w : width) w *= 0.5;
    }
  });

  std::size_t best = 0;
  long total = 0;
  for (std::size_t s = 0; s < outcomes.size(); ++s) {
    total += outcomes[s].evaluations;
    if (outcomes[s].ratio > outcomes[best].ratio) best = s;
  }
  const StartOutcome& w = outcomes[best];
  SharpnessResult r;
  r.family = family;
  r.family_params.assign(w.x.begin(), w.x.begin() + static_cast<long>(nf));
  if (family == SearchFamily::random_series) {
    r.map_seed = w.map_seed;
    r.map_degree = map_degree;
    r.map_margin = map_margin;
  }
  r.z = z_from_params(w.x, nf, n);
  r.alpha = alpha;
  r.ratio = w.ratio;
  r.evaluations = total;
  r.seed = seed;
  // Store exactly what the stored parameters reproduce.
  r.ratio = recompute_ratio(r);
  return r;
}

nlohmann::ordered_json to_json(const SharpnessResult& r) {
  nlohmann::ordered_json j;
  j["family"] = to_string(r.family);
  j["n"] = r.alpha.size();
  j["alpha"] = r.alpha.components();
  j["ratio"] = r.ratio;
  j["evaluations"] = r.evaluations;
  j["seed"] = r.seed;
  j["family_params"] = r.family_params;
  j["map_seed"] = r.map_seed;
  j["map_degree"] = r.map_degree;
  j["map_margin"] = r.map_margin;
  auto z = nlohmann::ordered_json::array();
  for (const auto& c : r.z) z.push_back({c.real(), c.imag()});
  j["z"] = z;
  j["extremal"] = r.family == SearchFamily::colonna_tensor && r.alpha.size() == 1
                      ? "member of the one-variable extremal family"
                      : "heuristic candidate, not claimed extremal";
  return j;
}

SharpnessResult sharpness_result_from_json(const nlohmann::json& j) {
  SharpnessResult r;
  r.family = search_family_from_string(j.at("family").get<std::string>());
  r.alpha = MultiIndex(j.at("alpha").get<std::vector<int>>());
  r.ratio = j.at("ratio").get<double>();
  r.evaluations = j.at("evaluations").get<long>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.family_params = j.at("family_params").get<std::vector<double>>();
  r.map_seed = j.at("map_seed").get<std::uint64_t>();
  r.map_degree = j.at("map_degree").get<int>();
  r.map_margin = j.at("map_margin").get<double>();
  for (const auto& c : j.at("z")) r.z.emplace_back(c.at(0).get<double>(), c.at(1).get<double>());
  return r;
}

}  // namespace polydisk
