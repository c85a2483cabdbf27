#include "polydisk/map_io.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "polydisk/errors.hpp"

namespace polydisk {

namespace {

nlohmann::ordered_json cvec_json(const CVector& v) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : v) arr.push_back({c.real(), c.imag()});
  return arr;
}

Complex parse_complex(const nlohmann::json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw MapFormatError(where + ": expected [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

CVector parse_cvec(const nlohmann::json& j, std::size_t N, const std::string& where) {
  if (!j.is_array() || j.size() != N) {
    throw MapFormatError(where + ": expected " + std::to_string(N) + " complex entries");
  }
  CVector v(N);
  for (std::size_t i = 0; i < N; ++i) v[i] = parse_complex(j[i], where);
  return v;
}

}  // namespace

nlohmann::ordered_json map_to_json(const PluriharmonicMap& map) {
  if (map.kind() != PluriharmonicMap::Kind::series) {
    throw DomainError("only series maps are serializable; composed and closed-form maps are not");
  }
  nlohmann::ordered_json j;
  j["n"] = map.dim();
  j["N"] = map.codim();
  auto terms = nlohmann::ordered_json::array();
  for (const auto& [k, term] : map.terms()) {
    nlohmann::ordered_json t;
    t["k"] = k.components();
    t["a"] = cvec_json(term.a);
    t["b"] = cvec_json(term.b);
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

nlohmann::ordered_json colonna_to_json(const PluriharmonicMap& closed_form, int degree) {
  const auto& p = closed_form.colonna_params();
  auto j = map_to_json(series_expansion(closed_form, degree));
  nlohmann::ordered_json cert;
  cert["kind"] = "colonna_extremal";
  cert["gamma"] = {p.gamma.real(), p.gamma.imag()};
  cert["a"] = cvec_json(p.a);
  cert["lambda"] = cvec_json(p.lambda);
  j["certificate"] = std::move(cert);
  return j;
}

LoadedMap map_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw MapFormatError("map file: top level must be an object");
  for (const char* key : {"n", "N", "terms"}) {
    if (!j.contains(key)) throw MapFormatError(std::string("map file: missing \"") + key + "\"");
  }
  if (!j["n"].is_number_integer() || !j["N"].is_number_integer()) {
    throw MapFormatError("map file: \"n\" and \"N\" must be integers");
  }
  const long n = j["n"].get<long>();
  const long N = j["N"].get<long>();
  if (n < 1 || N < 1) throw MapFormatError("map file: \"n\" and \"N\" must be >= 1");
  if (!j["terms"].is_array()) throw MapFormatError("map file: \"terms\" must be an array");

  TermTable table;
  std::size_t index = 0;
  for (const auto& t : j["terms"]) {
    const std::string where = "term " + std::to_string(index);
    if (!t.is_object() || !t.contains("k")) throw MapFormatError(where + ": missing \"k\"");
    const auto& kj = t["k"];
    if (!kj.is_array() || kj.size() != static_cast<std::size_t>(n)) {
      throw MapFormatError(where + ": \"k\" must have " + std::to_string(n) + " entries");
    }
    std::vector<int> comps;
    for (const auto& c : kj) {
      if (!c.is_number_integer() || c.get<long>() < 0) {
        throw MapFormatError(where + ": \"k\" entries must be nonnegative integers");
      }
      comps.push_back(c.get<int>());
    }
    MultiIndex k(std::move(comps));
    SeriesTerm term{CVector(static_cast<std::size_t>(N)), CVector(static_cast<std::size_t>(N))};
    if (t.contains("a")) term.a = parse_cvec(t["a"], static_cast<std::size_t>(N), where + " \"a\"");
    if (t.contains("b")) term.b = parse_cvec(t["b"], static_cast<std::size_t>(N), where + " \"b\"");
    for (const auto& c : term.a) {
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw MapFormatError(where + ": non-finite coefficient");
    }
    for (const auto& c : term.b) {
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw MapFormatError(where + ": non-finite coefficient");
    }
    if (!table.emplace(std::move(k), std::move(term)).second) {
      throw MapFormatError(where + ": duplicate multi-index");
    }
    ++index;
  }
  LoadedMap out{PluriharmonicMap::from_terms(static_cast<std::size_t>(n), static_cast<std::size_t>(N),
                                             std::move(table)),
                std::nullopt};

  if (j.contains("certificate")) {
    const auto& c = j["certificate"];
    if (!c.is_object() || c.value("kind", "") != "colonna_extremal") {
      throw MapFormatError("map file: unsupported certificate");
    }
    try {
      ColonnaParams p;
      p.gamma = parse_complex(c.at("gamma"), "certificate gamma");
      for (const auto& v : c.at("a")) p.a.push_back(parse_complex(v, "certificate a"));
      for (const auto& v : c.at("lambda")) p.lambda.push_back(parse_complex(v, "certificate lambda"));
      auto closed = PluriharmonicMap::colonna(std::move(p));
      if (closed.dim() != out.series.dim() || out.series.codim() != 1) {
        throw MapFormatError("certificate dimensions differ from the map");
      }
      // The stored terms must be the expansion of the certified closed form.
      const auto expected = series_expansion(closed, out.series.series_degree());
      for (const auto& [k, term] : out.series.terms()) {
        const auto it = expected.terms().find(k);
        const Complex ea = it == expected.terms().end() ? Complex{} : it->second.a[0];
        const Complex eb = it == expected.terms().end() ? Complex{} : it->second.b[0];
        if (std::abs(term.a[0] - ea) > 1e-12 || std::abs(term.b[0] - eb) > 1e-12) {
          throw MapFormatError("certificate does not match the stored terms");
        }
      }
      out.closed_form = std::move(closed);
    } catch (const DomainError& e) {
      throw MapFormatError(std::string("certificate: ") + e.what());
    } catch (const nlohmann::json::exception& e) {
      throw MapFormatError(std::string("certificate: ") + e.what());
    }
  }
  return out;
}

LoadedMap load_map_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MapFormatError("cannot open map file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw MapFormatError("map file " + path + ": " + e.what());
  }
  return map_from_json(j);
}

void save_json_file(const std::string& path, const nlohmann::ordered_json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace polydisk
