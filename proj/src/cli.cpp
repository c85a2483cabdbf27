#include "polydisk/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "polydisk/bounds.hpp"
#include "polydisk/errors.hpp"
#include "polydisk/map_io.hpp"
#include "polydisk/quadrature.hpp"
#include "polydisk/report_io.hpp"
#include "polydisk/search.hpp"
#include "parallel.hpp"

namespace polydisk::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Complex as_complex(const std::vector<double>& v, const char* what) {
  if (v.empty() || v.size() > 2) throw UsageError(std::string("--") + what + " expects re or re,im");
  return {v[0], v.size() == 2 ? v[1] : 0.0};
}

std::vector<double> parse_reals(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad number: " + item);
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

// Destination for streamed output: a file when --out is given, else `fallback`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw UsageError("cannot write " + path);
      stream_ = file_.get();
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

LoadedMap load_single_map(const RunConfig& c) {
  if (c.map_paths.size() != 1) throw UsageError("this command needs exactly one --map");
  return load_map_file(c.map_paths.front());
}

std::vector<MultiIndex> resolve_alphas(const RunConfig& c, std::size_t n) {
  std::vector<MultiIndex> out;
  if (c.alphas.empty()) {
    for (const auto& a : mi_enumerate(n, static_cast<int>(2 * n), 1)) {
      bool small = true;
      for (std::size_t j = 0; j < n; ++j) small = small && a[j] <= 2;
      if (small) out.push_back(a);
    }
    return out;
  }
  for (const auto& a : c.alphas) {
    if (a.size() != n) {
      throw UsageError("--alpha has " + std::to_string(a.size()) + " entries but the map has n = " +
                       std::to_string(n));
    }
    out.emplace_back(a);
  }
  return out;
}

DerivativeMethod parse_method(const std::string& m) {
  if (m == "exact") return DerivativeMethod::exact;
  if (m == "cauchy") return DerivativeMethod::cauchy;
  throw UsageError("--method must be exact or cauchy");
}

// Evaluates `per_point` over the grid in parallel blocks and writes the
// reports in grid order, so memory stays bounded for large sweeps.
template <class Fn>
void sweep(const RunConfig& c, std::size_t n, ReportWriter& w, Fn&& per_point) {
  const auto grid = sweep_grid(n, c.grid_points, c.radius_cap);
  constexpr std::size_t kBlock = 256;
  for (std::size_t lo = 0; lo < grid.size(); lo += kBlock) {
    const std::size_t hi = std::min(grid.size(), lo + kBlock);
    std::vector<std::vector<BoundReport>> block(hi - lo);
    detail::parallel_for(hi - lo, [&](std::size_t i) { block[i] = per_point(PolydiskPoint(grid[lo + i])); });
    for (const auto& reports : block) {
      for (const auto& r : reports) w.write(r);
    }
  }
}

int finish(const ReportWriter& w, std::ostream& err) {
  if (w.failed() > 0) {
    err << w.failed() << " of " << w.written() << " checks failed\n";
    return kExitCheckFailed;
  }
  return kExitPass;
}

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const LoadedMap loaded = load_single_map(c);
  const auto& map = loaded.for_checks();
  const auto method = parse_method(c.method);
  const auto alphas = resolve_alphas(c, map.dim());
  require_certified(map, true);
  Sink sink(c.out, out);
  ReportWriter w(sink.get(), format_for_path(c.out), map.dim());
  const double tol = c.tol.value_or(-1.0);
  sweep(c, map.dim(), w, [&](const PolydiskPoint& p) {
    std::vector<BoundReport> out;
    for (const auto& a : alphas) out.push_back(verify_derivative_bound(map, p, a, method, tol, c.quadrature));
    return out;
  });
  return finish(w, err);
}

int cmd_gradient(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const LoadedMap loaded = load_single_map(c);
  const auto& map = loaded.for_checks();
  require_certified(map, map.codim() == 1);
  Sink sink(c.out, out);
  ReportWriter w(sink.get(), format_for_path(c.out), map.dim());
  sweep(c, map.dim(), w, [&](const PolydiskPoint& p) {
    return std::vector<BoundReport>{verify_gradient_bound(map, p, c.samples, c.tol.value_or(kQuadratureTol))};
  });
  return finish(w, err);
}

int cmd_growth(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const LoadedMap loaded = load_single_map(c);
  const auto& map = loaded.for_checks();
  require_certified(map, map.codim() == 1);
  Sink sink(c.out, out);
  ReportWriter w(sink.get(), format_for_path(c.out), map.dim());
  sweep(c, map.dim(), w, [&](const PolydiskPoint& p) {
    return std::vector<BoundReport>{verify_growth_bound(map, p, c.tol.value_or(kExactTol))};
  });
  return finish(w, err);
}

int cmd_coeffs(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const LoadedMap loaded = load_single_map(c);
  const auto& map = loaded.for_checks();
  if (c.max_degree < 1) throw UsageError("--max-degree must be >= 1");
  require_certified(map, map.codim() == 1);
  Sink sink(c.out, out);
  ReportWriter w(sink.get(), format_for_path(c.out), map.dim());
  if (map.codim() == 1) {
    for (const auto& r : verify_coefficient_bound(map, c.max_degree, c.quadrature,
                                                  c.tol.value_or(kQuadratureTol))) {
      w.write(r);
    }
  } else {
    err << "note: coefficient bound is scalar; skipped for N = " << map.codim() << '\n';
  }
  if (map.kind() == PluriharmonicMap::Kind::series) {
    w.write(verify_l2_bound(map, c.tol.value_or(kExactTol)));
  } else {
    err << "note: l2 coefficient bound needs a certified coefficient table; skipped\n";
  }
  sweep(c, map.dim(), w, [&](const PolydiskPoint& p) {
    std::vector<BoundReport> out;
    for (int m = 1; m <= c.max_degree; ++m) out.push_back(verify_homogeneous_bound(map, m, p, c.tol.value_or(-1.0)));
    return out;
  });
  return finish(w, err);
}

int cmd_lemma(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const double value = abs_cos_integral(c.m, c.phase, c.quadrature.nodes_per_dim);
  const double tol = c.tol.value_or(1e-5);
  const bool pass = std::abs(value - 4.0) <= tol;
  if (c.json) {
    nlohmann::ordered_json j;
    j["m"] = c.m;
    j["gamma"] = c.phase;
    j["nodes"] = c.quadrature.nodes_per_dim;
    j["value"] = value;
    j["error"] = value - 4.0;
    j["tol"] = tol;
    j["pass"] = pass;
    out << j.dump() << '\n';
  } else {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15f", value);
    out << buf << '\n';
  }
  if (!pass) err << "integral differs from 4 by more than " << tol << '\n';
  return pass ? kExitPass : kExitCheckFailed;
}

int cmd_extremal(const RunConfig& c, std::ostream& out, std::ostream&) {
  const auto map = make_extremal_colonna(as_complex(c.gamma, "gamma"), as_complex(c.a, "a"),
                                         as_complex(c.lambda, "lambda"));
  const auto j = colonna_to_json(map, c.degree);
  if (c.out.empty()) {
    out << j.dump(2) << '\n';
  } else {
    save_json_file(c.out, j);
  }
  return kExitPass;
}

int cmd_random(const RunConfig& c, std::ostream& out, std::ostream&) {
  if (c.n < 1 || c.N < 1) throw UsageError("--n and --N must be >= 1");
  const auto map = random_bounded_map(static_cast<std::size_t>(c.n), static_cast<std::size_t>(c.N),
                                      c.degree, c.seed, c.margin,
                                      RandomMapOptions{c.zero_constant});
  const auto j = map_to_json(map);
  if (c.out.empty()) {
    out << j.dump(2) << '\n';
  } else {
    save_json_file(c.out, j);
  }
  return kExitPass;
}

int cmd_sharpness(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.alphas.size() != 1) throw UsageError("sharpness needs exactly one --alpha");
  const MultiIndex alpha(c.alphas.front());
  const std::size_t n = c.n > 0 ? static_cast<std::size_t>(c.n) : alpha.size();
  if (alpha.size() != n) throw UsageError("--alpha length must equal --n");
  const auto result = sharpness_search(n, alpha, search_family_from_string(c.family), c.budget, c.seed);
  const auto j = to_json(result);
  char buf[160];
  std::snprintf(buf, sizeof buf, "ratio=%.12f evaluations=%ld family=%s", result.ratio,
                result.evaluations, std::string(to_string(result.family)).c_str());
  out << buf;
  if (!c.out.empty()) {
    save_json_file(c.out, j);
    out << " -> " << c.out;
  }
  out << '\n';
  if (c.json) out << j.dump() << '\n';
  const double tol = c.tol.value_or(kExactTol);
  if (result.ratio > 1.0 + tol) {
    err << "ratio exceeds 1: the derivative bound failed for the stored parameters\n";
    return kExitCheckFailed;
  }
  return kExitPass;
}

}  // namespace

std::vector<int> parse_alpha(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    const int v = std::stoi(item, &used);
    if (used != item.size()) throw std::invalid_argument("malformed alpha entry: " + item);
    if (v <= 0) throw std::invalid_argument("alpha entries must be positive integers, got " + item);
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty alpha");
  return out;
}

std::vector<std::vector<std::complex<double>>> sweep_grid(std::size_t n, int points, double cap) {
  if (points < 1) throw DomainError("grid needs at least one point per axis");
  if (!(cap >= 0.0 && cap < 1.0)) throw DomainError("grid radius cap must lie in [0, 1)");
  CVector axis(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double r = points == 1 ? 0.0 : cap * i / (points - 1);
    axis[i] = std::polar(r, 2.0 * kPi * i / points);
  }
  std::size_t total = 1;
  for (std::size_t j = 0; j < n; ++j) total *= axis.size();
  std::vector<CVector> grid;
  grid.reserve(total);
  for (std::size_t flat = 0; flat < total; ++flat) {
    CVector z(n);
    std::size_t rem = flat;
    for (std::size_t j = n; j-- > 0;) {
      z[j] = axis[rem % axis.size()];
      rem /= axis.size();
    }
    grid.push_back(std::move(z));
  }
  return grid;
}

nlohmann::ordered_json to_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["command"] = c.command;
  j["map_paths"] = c.map_paths;
  j["nodes"] = c.quadrature.nodes_per_dim;
  j["radii"] = c.quadrature.radii;
  j["grid_points"] = c.grid_points;
  j["radius_cap"] = c.radius_cap;
  j["seed"] = c.seed;
  j["out"] = c.out;
  j["tol"] = c.tol ? nlohmann::ordered_json(*c.tol) : nlohmann::ordered_json(nullptr);
  j["json"] = c.json;
  j["alphas"] = c.alphas;
  j["method"] = c.method;
  j["max_degree"] = c.max_degree;
  j["samples"] = c.samples;
  j["m"] = c.m;
  j["phase"] = c.phase;
  j["gamma"] = c.gamma;
  j["a"] = c.a;
  j["lambda"] = c.lambda;
  j["degree"] = c.degree;
  j["n"] = c.n;
  j["N"] = c.N;
  j["margin"] = c.margin;
  j["zero_constant"] = c.zero_constant;
  j["family"] = c.family;
  j["budget"] = c.budget;
  return j;
}

RunConfig run_config_from_json(const nlohmann::json& j) {
  RunConfig c;
  c.command = j.at("command").get<std::string>();
  c.map_paths = j.value("map_paths", c.map_paths);
  c.quadrature.nodes_per_dim = j.value("nodes", c.quadrature.nodes_per_dim);
  c.quadrature.radii = j.value("radii", c.quadrature.radii);
  c.grid_points = j.value("grid_points", c.grid_points);
  c.radius_cap = j.value("radius_cap", c.radius_cap);
  c.seed = j.value("seed", c.seed);
  c.out = j.value("out", c.out);
  if (j.contains("tol") && !j["tol"].is_null()) c.tol = j["tol"].get<double>();
  c.json = j.value("json", c.json);
  c.alphas = j.value("alphas", c.alphas);
  c.method = j.value("method", c.method);
  c.max_degree = j.value("max_degree", c.max_degree);
  c.samples = j.value("samples", c.samples);
  c.m = j.value("m", c.m);
  c.phase = j.value("phase", c.phase);
  c.gamma = j.value("gamma", c.gamma);
  c.a = j.value("a", c.a);
  c.lambda = j.value("lambda", c.lambda);
  c.degree = j.value("degree", c.degree);
  c.n = j.value("n", c.n);
  c.N = j.value("N", c.N);
  c.margin = j.value("margin", c.margin);
  c.zero_constant = j.value("zero_constant", c.zero_constant);
  c.family = j.value("family", c.family);
  c.budget = j.value("budget", c.budget);
  return c;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    c.quadrature.validate();
    if (c.command == "verify") return cmd_verify(c, out, err);
    if (c.command == "gradient") return cmd_gradient(c, out, err);
    if (c.command == "growth") return cmd_growth(c, out, err);
    if (c.command == "coeffs") return cmd_coeffs(c, out, err);
    if (c.command == "lemma") return cmd_lemma(c, out, err);
    if (c.command == "extremal") return cmd_extremal(c, out, err);
    if (c.command == "random") return cmd_random(c, out, err);
    if (c.command == "sharpness") return cmd_sharpness(c, out, err);
    err << "error: unknown command '" << c.command << "'\n";
    return kExitUsage;
  } catch (const HypothesisError& e) {
    err << e.what() << '\n';
  } catch (const MapFormatError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitUsage;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Schwarz-Pick estimates for pluriharmonic maps on the polydisk", "pluri"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig c;
  std::string radius_text;
  std::string config_path;
  std::string save_config;
  std::vector<std::string> alpha_texts;
  std::string gamma_text, a_text, lambda_text;

  app.add_option("--seed", c.seed, "random seed");
  app.add_option("--tol", c.tol, "tolerance override");
  app.add_option("--nodes", c.quadrature.nodes_per_dim, "quadrature nodes per dimension");
  app.add_option("--radius", radius_text, "contour or extraction radius (r or r1,r2,...)");
  app.add_option("--out", c.out, "output path (.jsonl or .csv for reports)");
  app.add_flag("--json", c.json, "print JSON to stdout");
  app.add_option("--save-config", save_config, "write the resolved run configuration as JSON");

  auto add_map = [&](CLI::App* s) { s->add_option("--map", c.map_paths, "map file")->required(); };
  auto add_grid = [&](CLI::App* s) {
    s->add_option("--grid", c.grid_points, "grid points per axis");
    s->add_option("--radius-cap", c.radius_cap, "largest |z_j| on the grid");
  };

  auto* verify = app.add_subcommand("verify", "derivative bound on a z grid");
  add_map(verify);
  add_grid(verify);
  verify->add_option("--alpha", alpha_texts, "derivative order, comma separated (repeatable)");
  verify->add_option("--method", c.method, "exact or cauchy");

  auto* gradient = app.add_subcommand("gradient", "directional derivative bound on a z grid");
  add_map(gradient);
  add_grid(gradient);
  gradient->add_option("--samples", c.samples, "direction samples");

  auto* growth = app.add_subcommand("growth", "arctan growth bound for maps with f(0) = 0");
  add_map(growth);
  add_grid(growth);

  auto* coeffs = app.add_subcommand("coeffs", "coefficient, homogeneous-part and l2 bounds");
  add_map(coeffs);
  add_grid(coeffs);
  coeffs->add_option("--max-degree", c.max_degree, "largest |k|");

  auto* lemma = app.add_subcommand("lemma", "integral of |cos(m t + gamma)| over a period");
  lemma->add_option("--m", c.m, "positive integer frequency")->required();
  lemma->add_option("--gamma", c.phase, "phase");

  auto* extremal = app.add_subcommand("extremal", "write the arg-family extremal map file");
  extremal->add_option("--gamma", gamma_text, "unimodular gamma (re or re,im)");
  extremal->add_option("--a", a_text, "automorphism zero a (re or re,im)");
  extremal->add_option("--lambda", lambda_text, "unimodular rotation (re or re,im)");
  extremal->add_option("--degree", c.degree, "expansion degree");

  auto* random = app.add_subcommand("random", "write a random certified map file");
  random->add_option("--n", c.n, "domain dimension");
  random->add_option("--N", c.N, "codomain dimension");
  random->add_option("--degree", c.degree, "series degree");
  random->add_option("--margin", c.margin, "l1 norm is 1 - margin");
  random->add_flag("--zero-constant", c.zero_constant, "force f(0) = 0");

  auto* sharp = app.add_subcommand("sharpness", "search for large derivative-bound ratios");
  sharp->add_option("--n", c.n, "dimension");
  sharp->add_option("--alpha", alpha_texts, "derivative order, comma separated")->required();
  sharp->add_option("--family", c.family, "colonna_tensor or random_series");
  sharp->add_option("--budget", c.budget, "objective evaluations");

  auto* replay = app.add_subcommand("replay", "run a saved configuration");
  replay->add_option("--config", config_path, "configuration JSON")->required();

  // Defaults that differ per command.
  bool n_given = false;
  try {
    app.parse(argc, argv);
    n_given = sharp->count("--n") > 0;
    if (lemma->parsed() && app.count("--nodes") == 0) c.quadrature.nodes_per_dim = 4096;
    if (random->parsed() && random->count("--degree") == 0) c.degree = 3;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitPass;
    }
    err << "error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  }

  try {
    if (replay->parsed()) {
      std::ifstream in(config_path);
      if (!in) throw UsageError("cannot open " + config_path);
      nlohmann::json j;
      in >> j;
      return run(run_config_from_json(j), out, err);
    }
    c.command = app.get_subcommands().front()->get_name();
    if (sharp->parsed() && !n_given) c.n = 0;
    if (!radius_text.empty()) c.quadrature.radii = parse_reals(radius_text);
    for (const auto& t : alpha_texts) c.alphas.push_back(parse_alpha(t));
    if (!gamma_text.empty()) c.gamma = parse_reals(gamma_text);
    if (!a_text.empty()) c.a = parse_reals(a_text);
    if (!lambda_text.empty()) c.lambda = parse_reals(lambda_text);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  if (!save_config.empty()) {
    try {
      save_json_file(save_config, to_json(c));
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return kExitUsage;
    }
  }
  return run(c, out, err);
}

}  // namespace polydisk::cli
