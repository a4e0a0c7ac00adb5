#include "fluxtwin/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "fluxtwin/io.hpp"
#include "fluxtwin/spectral.hpp"

namespace fluxtwin::cli {

namespace {

using nlohmann::json;

template <typename T>
void read_field(const json& j, const std::string& key, T& into) {
  if (!j.contains(key)) return;
  try {
    into = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config key '" + key + "' has the wrong type");
  }
}

}  // namespace

RunConfig RunConfig::from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::vector<std::string> known = {
      "masses",  "mu0",      "hbar",     "epsilon",     "alpha",       "flux",
      "n_wind",  "n_modes",  "grid_n",   "radial_m",    "mu",          "radius",
      "outer_radius", "nu",  "time",     "time_mode",   "sweep_alpha", "sweep_grid",
      "format",  "out"};
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ConfigError("unknown config key '" + key + "'");
  }

  RunConfig c;
  read_field(j, "masses", c.masses);
  read_field(j, "mu0", c.mu0);
  read_field(j, "hbar", c.hbar);
  read_field(j, "epsilon", c.epsilon);
  read_field(j, "alpha", c.alpha);
  if (j.contains("flux")) c.flux = j.at("flux");
  read_field(j, "n_wind", c.n_wind);
  read_field(j, "n_modes", c.n_modes);
  read_field(j, "grid_n", c.grid_n);
  read_field(j, "radial_m", c.radial_m);
  read_field(j, "mu", c.mu);
  read_field(j, "radius", c.radius);
  read_field(j, "outer_radius", c.outer_radius);
  read_field(j, "nu", c.nu);
  read_field(j, "time", c.time);
  read_field(j, "time_mode", c.time_mode);
  read_field(j, "sweep_alpha", c.sweep_alpha);
  read_field(j, "sweep_grid", c.sweep_grid);
  read_field(j, "format", c.format);
  read_field(j, "out", c.out);
  c.validate();
  return c;
}

RunConfig RunConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return from_json(j);
}

void RunConfig::validate() const {
  if (masses.size() < 3) throw ConfigError("need at least 3 masses");
  for (double m : masses)
    if (!(m > 0.0) || !std::isfinite(m)) throw ConfigError("masses must be positive");
  if (!(mu0 > 0.0) || !(hbar > 0.0)) throw ConfigError("mu0 and hbar must be positive");
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  if (n_wind < 1 || n_modes < 1) throw ConfigError("truncations must be at least 1");
  if (grid_n < 1 || radial_m < 4) throw ConfigError("grid sizes out of range");
  if (!(mu > 0.0) || !(radius > 0.0) || !(outer_radius > 0.0))
    throw ConfigError("mu, radius and outer_radius must be positive");
  if (!(nu >= 0.0)) throw ConfigError("nu must be nonnegative");
  if (time_mode != "imaginary" && time_mode != "real")
    throw ConfigError("time_mode must be 'imaginary' or 'real'");
  if (format != "csv" && format != "json") throw ConfigError("format must be 'csv' or 'json'");
  if (!flux.is_null() && !flux.is_object()) throw ConfigError("flux must be a JSON object");
}

gauge::FluxSet resolve_flux(const RunConfig& config) {
  const int n = static_cast<int>(config.masses.size());
  if (!config.flux.is_null() && !config.flux.empty())
    return io::flux_from_json(config.flux, n);
  return gauge::FluxSet::uniform(n, config.alpha);
}

namespace {

int worker_count(std::size_t tasks) {
  int workers = 1;
  if (const char* env = std::getenv("FLUXTWIN_THREADS")) {
    try {
      workers = std::max(1, std::stoi(env));
    } catch (...) {
      workers = 1;
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  if (hw > 0) workers = std::min<int>(workers, static_cast<int>(hw));
  return std::min<int>(workers, static_cast<int>(std::max<std::size_t>(tasks, 1)));
}

SweepRow sweep_task(const RunConfig& config, double alpha, int grid_n, int levels) {
  SweepRow row;
  row.alpha = alpha;
  row.grid_n = grid_n;
  try {
    spectral::RingGrid g;
    g.N = grid_n;
    g.r = config.radius;
    g.mu = config.mu;
    g.alpha = alpha;
    g.hbar = config.hbar;
    const int count = std::min(levels, grid_n);
    const spectral::SpectrumTable s = spectral::spectrum(spectral::build_ring_hamiltonian(g), count);
    row.energy = s.energy;
    row.fully_degenerate = count >= 2;
    for (int q = 0; q + 1 < count; q += 2) {
      const double rel =
          std::abs(s.energy[q] - s.energy[q + 1]) / std::max(std::abs(s.energy[q + 1]), 1e-300);
      if (rel > 1e-9) row.fully_degenerate = false;
    }
    row.ok = true;
  } catch (const std::exception& e) {
    row.ok = false;
    row.error = e.what();
  }
  return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(const RunConfig& config, int levels) {
  if (config.sweep_alpha.empty() || config.sweep_grid.empty())
    throw ConfigError("sweep needs nonempty sweep_alpha and sweep_grid");

  struct Task {
    double alpha;
    int grid_n;
  };
  std::vector<Task> tasks;
  for (double a : config.sweep_alpha)
    for (int g : config.sweep_grid) tasks.push_back({a, g});

  std::vector<SweepRow> rows(tasks.size());
  const int workers = worker_count(tasks.size());
  if (workers <= 1) {
    for (std::size_t q = 0; q < tasks.size(); ++q)
      rows[q] = sweep_task(config, tasks[q].alpha, tasks[q].grid_n, levels);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w]() {
        for (std::size_t q = w; q < tasks.size(); q += workers)
          rows[q] = sweep_task(config, tasks[q].alpha, tasks[q].grid_n, levels);
      });
    }
    for (std::thread& th : pool) th.join();
  }
  return rows;
}

std::string sweep_to_csv(const RunConfig& config, const std::vector<SweepRow>& rows) {
  std::size_t level_count = 0;
  for (const SweepRow& row : rows) level_count = std::max(level_count, row.energy.size());
  std::ostringstream os;
  os << "# " << json{{"mu", config.mu},
                     {"radius", config.radius},
                     {"hbar", config.hbar},
                     {"levels", level_count}}
                  .dump()
     << "\n";
  os << "alpha,grid_n";
  for (std::size_t q = 0; q < level_count; ++q) os << ",e" << q;
  os << ",fully_degenerate,status\n";
  for (const SweepRow& row : rows) {
    os << io::format_g17(row.alpha) << "," << row.grid_n;
    for (std::size_t q = 0; q < level_count; ++q)
      os << "," << (q < row.energy.size() ? io::format_g17(row.energy[q]) : "");
    os << "," << (row.fully_degenerate ? 1 : 0) << "," << (row.ok ? "ok" : "failed") << "\n";
  }
  return os.str();
}

nlohmann::json sweep_to_json(const RunConfig& config, const std::vector<SweepRow>& rows) {
  json out;
  out["meta"] = {{"mu", config.mu}, {"radius", config.radius}, {"hbar", config.hbar}};
  out["rows"] = json::array();
  for (const SweepRow& row : rows) {
    json r = {{"alpha", row.alpha},
              {"grid_n", row.grid_n},
              {"energy", row.energy},
              {"fully_degenerate", row.fully_degenerate},
              {"status", row.ok ? "ok" : "failed"}};
    if (!row.ok) r["error"] = row.error;
    out["rows"].push_back(r);
  }
  return out;
}

}  // namespace fluxtwin::cli
