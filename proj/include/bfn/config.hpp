#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bfn/estimator.hpp"

namespace bfn {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Everything a front-end run needs: the estimator config plus output location.
struct CliConfig {
  RunConfig run;
  std::string q_preset = "poly";
  std::filesystem::path output_dir = ".";
};

/// Keys accepted in config files and --set overrides.
const std::vector<std::string>& config_keys();

/// Applies one key=value setting; unknown keys and unparsable values throw ConfigError.
void apply_setting(CliConfig& cfg, std::string_view key, std::string_view value);

/// Parses "key=value" (whitespace around both sides ignored).
void apply_assignment(CliConfig& cfg, std::string_view assignment);

/// Loads a flat key=value file ('#' comments, blank lines allowed), then applies
/// overrides in order (later wins), then validates the result.
CliConfig load_config(const std::optional<std::filesystem::path>& file,
                      const std::vector<std::string>& overrides);

/// poly | mode:k | file:path. File sources are CSV with a `q` column, one row per node.
SourceSpec parse_source_spec(std::string_view text);

/// Canonical key=value dump (stable order) of the effective configuration.
std::string describe(const CliConfig& cfg);

}  // namespace bfn
