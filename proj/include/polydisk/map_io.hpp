#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "polydisk/mapping.hpp"

namespace polydisk {

/// Malformed map file. The message names the offending term index when there is one.
class MapFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parsed map file. Files written for the closed-form arg family carry a
/// "certificate" block; `closed_form` then holds that exact map and the
/// stored terms are its truncated expansion.
struct LoadedMap {
  PluriharmonicMap series;
  std::optional<PluriharmonicMap> closed_form;

  /// The map checks should run against: the closed form when present.
  const PluriharmonicMap& for_checks() const { return closed_form ? *closed_form : series; }
};

/// {"n": int, "N": int, "terms": [{"k": [ints], "a": [[re,im] x N], "b": [[re,im] x N]}, ...]}
/// Absent "a" or "b" means zero. Only series maps are serializable; an
/// arg-family map is written as its expansion to `degree` plus its certificate.
nlohmann::ordered_json map_to_json(const PluriharmonicMap& map);
nlohmann::ordered_json colonna_to_json(const PluriharmonicMap& closed_form, int degree);

LoadedMap map_from_json(const nlohmann::json& j);
LoadedMap load_map_file(const std::string& path);
void save_json_file(const std::string& path, const nlohmann::ordered_json& j);

}  // namespace polydisk
