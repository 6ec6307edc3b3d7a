#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "angulab/states.hpp"

namespace angulab::cli {

inline constexpr int kSchemaVersion = 1;

enum class ScenarioFamily { Scr, Qtp, Sphere, Custom };

std::string_view to_string(ScenarioFamily f) noexcept;
std::optional<ScenarioFamily> parse_family(std::string_view name) noexcept;

/// Invalid user input: bad flag values, incomplete parameters, malformed files.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ScenarioConfig {
  ScenarioFamily family = ScenarioFamily::Scr;
  std::optional<int> m;
  std::optional<int> n;
  std::optional<int> l;
  double inertia = 1.0;
  double omega = 1.0;
  double hbar = 1.0;
  std::optional<int> truncation;
  /// A states document ({"family", "params", "coefficients"}); overrides m / n.
  std::optional<nlohmann::json> state_document;
  std::vector<std::string> relations;
  std::optional<int> resolution;
  bool oracle = false;
  std::string format = "json";
};

/// Relation list used when none is given: the whole registry.
std::vector<std::string> default_relations();

/// Splits "a,b,c" and checks every name against the registry.
std::vector<std::string> parse_relation_list(const std::string& list);

/// Problems with a config document, one human-readable line each; empty when
/// the document is complete for its family.
/// A relative "coeffs_file" is resolved against base_dir and its contents
/// are checked as well.
std::vector<std::string> check_config(const nlohmann::json& doc,
                                      const std::filesystem::path& base_dir = {});

/// Problems with a states document.
std::vector<std::string> check_state_document(const nlohmann::json& doc);

/// Throws ConfigError with the first problem check_config reports. Relative
/// "coeffs_file" paths are resolved against base_dir.
ScenarioConfig config_from_json(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});

/// Reads and checks a config file; diagnostics are empty for a valid file.
/// Throws ConfigError if the file cannot be read or parsed.
std::vector<std::string> validate_config(const std::filesystem::path& path);

nlohmann::json read_json_file(const std::filesystem::path& path);

/// Builds the state a config describes; throws ConfigError on bad parameters.
State build_state(const ScenarioConfig& config);

nlohmann::json state_to_json(const State& state);
/// Throws ConfigError on a malformed document.
State state_from_json(const nlohmann::json& doc);

}  // namespace angulab::cli
