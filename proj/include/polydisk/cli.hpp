#pragma once

#include <cstdint>
#include <complex>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "polydisk/quadrature_spec.hpp"

namespace polydisk::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Everything a run depends on besides its input files.
struct RunConfig {
  std::string command;
  std::vector<std::string> map_paths;
  QuadratureSpec quadrature;
  int grid_points = 3;
  double radius_cap = 0.9;
  std::uint64_t seed = 0;
  std::string out;
  std::optional<double> tol;
  bool json = false;

  std::vector<std::vector<int>> alphas;
  std::string method = "exact";
  int max_degree = 3;
  int samples = 256;
  // lemma
  int m = 1;
  double phase = 0.0;
  // extremal
  std::vector<double> gamma{1.0, 0.0};
  std::vector<double> a{0.0, 0.0};
  std::vector<double> lambda{1.0, 0.0};
  int degree = 32;
  // random
  int n = 1;
  int N = 1;
  double margin = 0.05;
  bool zero_constant = false;
  // sharpness
  std::string family = "colonna_tensor";
  long budget = 2000;
};

nlohmann::ordered_json to_json(const RunConfig& c);
RunConfig run_config_from_json(const nlohmann::json& j);

/// Executes one configured command. Exit 0 when every check passed, 1 when
/// any report failed, 2 on usage errors or unmet hypotheses.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv into a RunConfig and runs it.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// The z grid used by the sweep commands: per coordinate, `points` values
/// cap * i/(points-1) * exp(2 pi i i/points), combined as a tensor grid in
/// row-major order.
std::vector<std::vector<std::complex<double>>> sweep_grid(std::size_t n, int points, double cap);

/// "1,2,1" -> {1,2,1}. Throws std::invalid_argument on a zero or malformed entry.
std::vector<int> parse_alpha(const std::string& text);

}  // namespace polydisk::cli
