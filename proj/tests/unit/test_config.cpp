#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "bfn/config.hpp"
#include "bfn/csv.hpp"

using namespace bfn;

TEST_CASE("defaults match the reproduction run") {
  const auto cfg = load_config(std::nullopt, {});
  CHECK(cfg.run.omega == 1.0);
  CHECK(cfg.run.horizon == 3.0);
  CHECK(cfg.run.gains.gamma1 == 1.0);
  CHECK(cfg.run.gains.gamma2 == 0.5);
  CHECK(cfg.run.n_cells == 20);
  CHECK(cfg.run.cfl == 0.005);
  CHECK(cfg.run.n_iterations == 50);
  CHECK(cfg.run.noise.level == 0.0);
  CHECK(config_keys().size() == 11);
}

TEST_CASE("file settings with overrides, later wins") {
  const auto path = std::filesystem::temp_directory_path() / "bfn_unit.cfg";
  {
    std::ofstream f(path);
    f << "# reproduction\nT = 2.5\n\nnoise_level=0.1\nseed=9\nq_preset=mode:2\n";
  }
  const auto cfg = load_config(path, {"T=4", "iterations=7", "T=5"});
  CHECK(cfg.run.horizon == 5.0);
  CHECK(cfg.run.n_iterations == 7);
  CHECK(cfg.run.noise.level == 0.1);
  CHECK(cfg.run.noise.seed == 9);
  CHECK(cfg.run.source.kind == SourceSpec::Kind::Mode);
  CHECK(cfg.run.source.mode == 2);
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(load_config(std::nullopt, {"nope=1"}), ConfigError);
  CHECK_THROWS_AS(load_config(std::nullopt, {"T"}), ConfigError);
  CHECK_THROWS_AS(load_config(std::nullopt, {"T=abc"}), ConfigError);
  CHECK_THROWS_AS(load_config(std::nullopt, {"n_cells=2.5"}), ConfigError);
  CHECK_THROWS_AS(load_config(std::nullopt, {"seed=-1"}), ConfigError);
  CHECK_THROWS_AS(load_config(std::nullopt, {"q_preset=mode:0"}), ConfigError);
  CHECK_THROWS_AS(load_config(std::nullopt, {"q_preset=gauss"}), ConfigError);
  CHECK_THROWS_AS(load_config(std::filesystem::path("/nonexistent.cfg"), {}), ConfigError);
  CHECK_THROWS_AS(load_config(std::nullopt, {"cfl=1.5"}), std::invalid_argument);
  CHECK_THROWS_AS(load_config(std::nullopt, {"n_cells=3"}), std::invalid_argument);
}

TEST_CASE("source from file") {
  const auto path = std::filesystem::temp_directory_path() / "bfn_unit_q.csv";
  std::string text = "x,q\n";
  for (int j = 0; j <= 4; ++j) {
    const double x = j / 4.0;
    text += csv::format(x) + "," + csv::format(x * (1 - x)) + "\n";
  }
  csv::write_text(path, text);
  const auto spec = parse_source_spec("file:" + path.string());
  const auto q = spec.build(Grid1D(4));
  CHECK(q[2] == 0.25);
  CHECK_THROWS_AS(spec.build(Grid1D(8)), GridMismatchError);
}

TEST_CASE("describe is a stable key=value dump") {
  const auto a = describe(load_config(std::nullopt, {"T=2"}));
  const auto b = describe(load_config(std::nullopt, {"T=2"}));
  CHECK(a == b);
  CHECK(a.find("T=2\n") != std::string::npos);
}

TEST_CASE("csv number format") {
  CHECK(csv::format(0.1) == "0.1");
  CHECK(csv::format(2.5e-4) == "0.00025");
  CHECK(csv::format(std::nan("")) == "");
  CHECK(std::stod(csv::format(1.0 / 3.0)) == 1.0 / 3.0);
}
