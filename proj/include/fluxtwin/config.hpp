#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fluxtwin/gauge.hpp"

namespace fluxtwin::cli {

// Run configuration: defaults, overridden by a JSON file, overridden by
// flags. Unknown keys in the file are hard errors.
struct RunConfig {
  std::vector<double> masses = {1.0, 1.0, 1.0};
  double mu0 = 1.0;
  double hbar = 1.0;
  double epsilon = 1e-9;
  double alpha = 0.0;        // n = 3 shorthand; "flux" overrides per triple
  nlohmann::json flux;       // optional {"[i,j,k]": alpha}
  int n_wind = 64;
  int n_modes = 64;
  int grid_n = 64;           // ring sites / kernel grid edge
  int radial_m = 128;
  double mu = 1.0;           // effective mass of the reduced problems
  double radius = 1.0;       // ring hyperradius
  double outer_radius = 1.0; // radial wall
  double nu = 0.5;
  double time = 0.5;
  std::string time_mode = "imaginary";
  std::vector<double> sweep_alpha;
  std::vector<int> sweep_grid;
  std::string format = "csv";
  std::string out;

  static RunConfig from_json(const nlohmann::json& j);
  static RunConfig load_file(const std::string& path);
  void validate() const;
};

// Flux set for the configured particle count: explicit map if given, else
// every triple gets the scalar alpha.
gauge::FluxSet resolve_flux(const RunConfig& config);

struct SweepRow {
  double alpha = 0.0;
  int grid_n = 0;
  std::vector<double> energy;
  bool fully_degenerate = false;
  bool ok = false;
  std::string error;
};

// Cartesian product of sweep_alpha x sweep_grid over the twisted ring; row
// order is fixed by task index regardless of how tasks are scheduled.
// FLUXTWIN_THREADS caps worker threads (default 1).
std::vector<SweepRow> run_sweep(const RunConfig& config, int levels = 8);

std::string sweep_to_csv(const RunConfig& config, const std::vector<SweepRow>& rows);
nlohmann::json sweep_to_json(const RunConfig& config, const std::vector<SweepRow>& rows);

}  // namespace fluxtwin::cli
