#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "fluxtwin/config.hpp"
#include "fluxtwin/io.hpp"

using namespace fluxtwin;
using nlohmann::json;

TEST_CASE("g17 formatting round trips") {
  for (double v : {0.1, 1.0 / 3.0, 2.0 * std::numbers::pi, 1e-17, -4.625e12}) {
    CHECK(std::stod(io::format_g17(v)) == v);
  }
}

TEST_CASE("trajectory csv round trip") {
  coords::Trajectory traj;
  traj.t = {0.0, 0.5, 1.0};
  traj.x = {coords::Configuration{{0.1, -0.2, 0.3}}, coords::Configuration{{0.4, 0.5, -0.6}},
            coords::Configuration{{0.1, -0.2, 0.3}}};
  std::stringstream buffer;
  io::write_trajectory_csv(buffer, traj);
  const coords::Trajectory back = io::read_trajectory_csv(buffer);
  REQUIRE(back.size() == 3);
  for (std::size_t s = 0; s < 3; ++s) {
    CHECK(back.t[s] == traj.t[s]);
    CHECK(back.x[s].x == traj.x[s].x);
  }
}

TEST_CASE("flux json round trip") {
  gauge::FluxSet flux = gauge::FluxSet::zero(4);
  flux.set({0, 1, 2}, 0.2);
  flux.set({1, 2, 3}, -1.75);
  const json j = io::flux_to_json(flux);
  CHECK(j.at("[1,2,3]") == 0.2);
  CHECK(j.at("[2,3,4]") == -1.75);
  const gauge::FluxSet back = io::flux_from_json(j, 4);
  CHECK(back.at({0, 1, 2}) == 0.2);
  CHECK(back.at({1, 2, 3}) == -1.75);
  CHECK(back.at({0, 1, 3}) == 0.0);

  CHECK_THROWS_AS(io::triple_from_key("[2,1,3]"), ConfigError);
  CHECK_THROWS_AS(io::triple_from_key("nonsense"), ConfigError);
  CHECK_THROWS_AS(io::flux_from_json(json{{"[1,2,9]", 0.1}}, 4), ConfigError);
}

TEST_CASE("table exports carry a metadata header") {
  kernel::KernelSpec spec;
  spec.time = 0.5;
  const kernel::KernelTable table =
      kernel::build_kernel_table(spec, kernel::KernelKind::mode, 4, 4);
  std::stringstream csv;
  io::write_kernel_table_csv(csv, table);
  std::string first;
  std::getline(csv, first);
  CHECK(first.rfind("# {", 0) == 0);
  std::string header;
  std::getline(csv, header);
  CHECK(header == "theta,theta_prime,re,im");

  const spectral::SpectrumTable levels = spectral::ring_levels_analytic(1.0, 1.0, 0.25, 3);
  std::stringstream scsv;
  io::write_spectrum_csv(scsv, levels);
  std::getline(scsv, first);
  CHECK(first.rfind("# {", 0) == 0);
  std::getline(scsv, header);
  CHECK(header == "index,energy,residual");

  const json sj = io::spectrum_to_json(levels);
  CHECK(sj.at("energy").size() == 7);
}

TEST_CASE("run config schema is strict") {
  const cli::RunConfig defaults;
  CHECK(defaults.masses.size() == 3);
  CHECK(defaults.format == "csv");

  const cli::RunConfig parsed = cli::RunConfig::from_json(json{
      {"masses", {1.0, 2.0, 3.0}}, {"alpha", 0.25}, {"grid_n", 48}, {"format", "json"}});
  CHECK(parsed.masses[1] == 2.0);
  CHECK(parsed.alpha == 0.25);
  CHECK(parsed.grid_n == 48);

  CHECK_THROWS_AS(cli::RunConfig::from_json(json{{"bogus", 1}}), ConfigError);
  CHECK_THROWS_AS(cli::RunConfig::from_json(json{{"masses", "nope"}}), ConfigError);
  CHECK_THROWS_AS(cli::RunConfig::from_json(json{{"masses", {1.0, -1.0, 1.0}}}), ConfigError);
  CHECK_THROWS_AS(cli::RunConfig::from_json(json{{"format", "xml"}}), ConfigError);
  CHECK_THROWS_AS(cli::RunConfig::from_json(json::array()), ConfigError);
}

TEST_CASE("resolve flux") {
  cli::RunConfig config;
  config.alpha = 0.4;
  const gauge::FluxSet uniform = cli::resolve_flux(config);
  CHECK(uniform.at({0, 1, 2}) == 0.4);

  config.masses = {1.0, 1.0, 1.0, 1.0};
  config.flux = json{{"[1,2,4]", 0.9}};
  const gauge::FluxSet mapped = cli::resolve_flux(config);
  CHECK(mapped.at({0, 1, 3}) == 0.9);
  CHECK(mapped.at({0, 1, 2}) == 0.0);
}

TEST_CASE("sweep rows are deterministic and flag degeneracy") {
  cli::RunConfig config;
  config.sweep_alpha = {0.0, 0.5};
  config.sweep_grid = {16};
  const auto rows = cli::run_sweep(config);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].ok);
  CHECK(rows[1].ok);
  CHECK_FALSE(rows[0].fully_degenerate);  // alpha = 0 has a simple ground level
  CHECK(rows[1].fully_degenerate);        // alpha = 1/2 pairs every level

  const std::string once = cli::sweep_to_csv(config, rows);
  const std::string twice = cli::sweep_to_csv(config, cli::run_sweep(config));
  CHECK(once == twice);

  cli::RunConfig empty;
  CHECK_THROWS_AS(cli::run_sweep(empty), ConfigError);
}
