#include "bfn/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "bfn/csv.hpp"

namespace bfn {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view key, std::string_view value) {
  double v = 0.0;
  auto res = std::from_chars(value.data(), value.data() + value.size(), v);
  if (res.ec != std::errc() || res.ptr != value.data() + value.size()) {
    throw ConfigError("config key '" + std::string(key) + "': not a number: '" +
                      std::string(value) + "'");
  }
  return v;
}

long long parse_integer(std::string_view key, std::string_view value) {
  long long v = 0;
  auto res = std::from_chars(value.data(), value.data() + value.size(), v);
  if (res.ec != std::errc() || res.ptr != value.data() + value.size()) {
    throw ConfigError("config key '" + std::string(key) + "': not an integer: '" +
                      std::string(value) + "'");
  }
  return v;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{"omega",      "T",     "gamma1",     "gamma2",
                                             "n_cells",    "cfl",   "iterations", "noise_level",
                                             "seed",       "q_preset", "output_dir"};
  return keys;
}

SourceSpec parse_source_spec(std::string_view text) {
  SourceSpec spec;
  spec.label = std::string(text);
  if (text == "poly") {
    spec.kind = SourceSpec::Kind::Polynomial;
    return spec;
  }
  if (text.starts_with("mode:")) {
    spec.kind = SourceSpec::Kind::Mode;
    const auto k = parse_integer("q_preset", text.substr(5));
    if (k < 1) throw ConfigError("q_preset mode index must be >= 1");
    spec.mode = static_cast<int>(k);
    return spec;
  }
  if (text.starts_with("file:")) {
    spec.kind = SourceSpec::Kind::Samples;
    const std::filesystem::path path(std::string(text.substr(5)));
    csv::Table table;
    try {
      table = csv::read(path);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("q_preset file: ") + e.what());
    }
    std::size_t col = table.header.size();
    for (std::size_t c = 0; c < table.header.size(); ++c) {
      if (table.header[c] == "q") col = c;
    }
    if (col == table.header.size()) throw ConfigError("q_preset file needs a 'q' column");
    for (const auto& row : table.rows) spec.samples.push_back(row[col]);
    return spec;
  }
  throw ConfigError("q_preset must be poly, mode:k or file:path, got '" + std::string(text) + "'");
}

void apply_setting(CliConfig& cfg, std::string_view key, std::string_view value) {
  RunConfig& run = cfg.run;
  if (key == "omega") {
    run.omega = parse_double(key, value);
  } else if (key == "T") {
    run.horizon = parse_double(key, value);
  } else if (key == "gamma1") {
    run.gains.gamma1 = parse_double(key, value);
  } else if (key == "gamma2") {
    run.gains.gamma2 = parse_double(key, value);
  } else if (key == "n_cells") {
    run.n_cells = static_cast<int>(parse_integer(key, value));
  } else if (key == "cfl") {
    run.cfl = parse_double(key, value);
  } else if (key == "iterations") {
    run.n_iterations = static_cast<int>(parse_integer(key, value));
  } else if (key == "noise_level") {
    run.noise.level = parse_double(key, value);
  } else if (key == "seed") {
    const auto s = parse_integer(key, value);
    if (s < 0) throw ConfigError("seed must be non-negative");
    run.noise.seed = static_cast<std::uint64_t>(s);
  } else if (key == "q_preset") {
    run.source = parse_source_spec(value);
    cfg.q_preset = std::string(value);
  } else if (key == "output_dir") {
    cfg.output_dir = std::filesystem::path(std::string(value));
  } else {
    throw ConfigError("unknown config key '" + std::string(key) + "'");
  }
}

void apply_assignment(CliConfig& cfg, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError("expected key=value, got '" + std::string(assignment) + "'");
  }
  apply_setting(cfg, trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

CliConfig load_config(const std::optional<std::filesystem::path>& file,
                      const std::vector<std::string>& overrides) {
  CliConfig cfg;
  if (file) {
    std::ifstream is(*file);
    if (!is) throw ConfigError("cannot read config file " + file->string());
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
      ++lineno;
      const auto body = trim(line);
      if (body.empty() || body.front() == '#') continue;
      try {
        apply_assignment(cfg, body);
      } catch (const ConfigError& e) {
        throw ConfigError(file->string() + ":" + std::to_string(lineno) + ": " + e.what());
      }
    }
  }
  for (const auto& o : overrides) apply_assignment(cfg, o);
  try {
    cfg.run.validate();
    (void)cfg.run.source.build(cfg.run.grids().space);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

std::string describe(const CliConfig& cfg) {
  const RunConfig& r = cfg.run;
  std::ostringstream os;
  os << "omega=" << csv::format(r.omega) << "\n"
     << "T=" << csv::format(r.horizon) << "\n"
     << "gamma1=" << csv::format(r.gains.gamma1) << "\n"
     << "gamma2=" << csv::format(r.gains.gamma2) << "\n"
     << "n_cells=" << r.n_cells << "\n"
     << "cfl=" << csv::format(r.cfl) << "\n"
     << "iterations=" << r.n_iterations << "\n"
     << "noise_level=" << csv::format(r.noise.level) << "\n"
     << "seed=" << r.noise.seed << "\n"
     << "q_preset=" << cfg.q_preset << "\n";
  return os.str();
}

}  // namespace bfn
