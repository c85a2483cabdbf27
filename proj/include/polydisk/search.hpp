#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "polydisk/mapping.hpp"

namespace polydisk {

struct DirectionMax {
  CVector theta;  ///< unimodular in every coordinate
  double value = 0.0;
};

/// ||Df theta + Dbar f conj(theta)||
double direction_objective(const JacobianPair& jp, std::span<const Complex> theta);

/// Maximizes direction_objective over the torus |theta_j| = 1 (where the
/// convex objective attains its max over ||theta||_inf <= 1): structured and
/// seeded samples, then coordinatewise phase refinement of the best few.
/// The value is attained at theta, so it is a lower bound of the true maximum.
DirectionMax direction_max(const JacobianPair& jp, int samples = 256, int refine_steps = 40);

/// (|d^alpha f| + |dbar^alpha f|) / rhs_polydisk(alpha, ||z||_inf) for a certified scalar map.
double sharpness_ratio(const PluriharmonicMap& map, const PolydiskPoint& z, const MultiIndex& alpha);

enum class SearchFamily { colonna_tensor, random_series };

std::string_view to_string(SearchFamily f);
SearchFamily search_family_from_string(std::string_view name);

/// Best ratio found by sharpness_search plus everything needed to rebuild it.
///
/// colonna_tensor params: [gamma phase, then per coordinate (|a_j|, arg a_j, arg lambda_j)];
/// random_series params are empty and the map comes from (map_seed, map_degree, map_margin).
/// z is stored directly.
struct SharpnessResult {
  SearchFamily family = SearchFamily::colonna_tensor;
  std::vector<double> family_params;
  std::uint64_t map_seed = 0;
  int map_degree = 0;
  double map_margin = 0.0;
  CVector z;
  MultiIndex alpha{1};
  double ratio = 0.0;
  long evaluations = 0;
  std::uint64_t seed = 0;
};

/// The map a result refers to.
PluriharmonicMap family_member(const SharpnessResult& result);
/// Recomputes the ratio from the stored parameters.
double recompute_ratio(const SharpnessResult& result);

/// Seeded multistart over family parameters and z (||z||_inf <= 0.9), each
/// start refined by coordinatewise golden-section steps. Every start has a
/// fixed evaluation sequence, so a larger budget only appends evaluations.
/// Heuristic: no optimality claim.
SharpnessResult sharpness_search(std::size_t n, const MultiIndex& alpha, SearchFamily family,
                                 long budget, std::uint64_t seed);

nlohmann::ordered_json to_json(const SharpnessResult& r);
SharpnessResult sharpness_result_from_json(const nlohmann::json& j);

}  // namespace polydisk
