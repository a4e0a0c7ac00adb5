#include <CLI11.hpp>

#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "fluxtwin/config.hpp"
#include "fluxtwin/coords.hpp"
#include "fluxtwin/errors.hpp"
#include "fluxtwin/gauge.hpp"
#include "fluxtwin/io.hpp"
#include "fluxtwin/kernel.hpp"
#include "fluxtwin/spectral.hpp"
#include "fluxtwin/twin.hpp"
#include "fluxtwin/verify.hpp"

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

using fluxtwin::ConfigError;
using fluxtwin::cli::RunConfig;
using nlohmann::json;
namespace coords = fluxtwin::coords;
namespace twin = fluxtwin::twin;
namespace gauge = fluxtwin::gauge;
namespace kernel = fluxtwin::kernel;
namespace spectral = fluxtwin::spectral;
namespace io = fluxtwin::io;

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    if (cell.empty()) continue;
    out.push_back(std::stoi(cell));
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    if (cell.empty()) continue;
    out.push_back(std::stod(cell));
  }
  return out;
}

std::string bracketed(const std::vector<int>& values) {
  std::ostringstream os;
  os << "[";
  for (std::size_t q = 0; q < values.size(); ++q) os << (q ? "," : "") << values[q];
  os << "]";
  return os.str();
}

void emit(const RunConfig& config, const std::string& text) {
  if (config.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(config.out);
    if (!f) throw ConfigError("cannot open output file '" + config.out + "'");
    f << text;
  }
}

twin::TwinWord make_word(const std::string& word_text, int n_flag) {
  const std::vector<int> letters = parse_int_list(word_text);
  int n = n_flag;
  if (n == 0) {
    n = 2;
    for (int l : letters) n = std::max(n, l + 1);
  }
  twin::TwinWord w{n, letters};
  try {
    w.validate();
  } catch (const fluxtwin::InvalidWordError& e) {
    throw ConfigError(e.what());
  }
  return w;
}

coords::Trajectory circle_loop(const RunConfig& config, int winding, int samples) {
  const coords::MassSystem ms(config.masses, config.mu0);
  if (ms.n() != 3) throw ConfigError("the built-in circle loop needs exactly 3 masses");
  if (winding == 0) throw ConfigError("circle loop needs a nonzero winding");
  coords::Trajectory traj;
  const int total = samples * std::abs(winding);
  for (int s = 0; s <= total; ++s) {
    const double u = static_cast<double>(s) / total;
    coords::HyperPolarPoint p;
    p.r = config.radius;
    p.theta = kTwoPi * winding * u;
    p.xi3 = 0.0;
    traj.t.push_back(u);
    traj.x.push_back(coords::from_jacobi(ms, coords::from_hyperpolar(ms, p)));
  }
  traj.x.back() = traj.x.front();
  return traj;
}

coords::Trajectory load_loop(const RunConfig& config, const std::string& loop_kind,
                             const std::string& path, int winding, int samples) {
  if (!path.empty()) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open trajectory file '" + path + "'");
    return io::read_trajectory_csv(f);
  }
  if (loop_kind == "circle") return circle_loop(config, winding, samples);
  throw ConfigError("unknown loop kind '" + loop_kind + "' (use circle or --path)");
}

json windings_json(const std::map<coords::Triple, int>& w) {
  json out = json::object();
  for (const auto& [t, wt] : w) out[io::triple_key(t)] = wt;
  return out;
}

int cmd_winding(const RunConfig& config, const twin::TwinWord& word) {
  std::vector<double> masses = config.masses;
  if (static_cast<int>(masses.size()) != word.n) masses.assign(word.n, 1.0);
  const coords::MassSystem ms(masses, config.mu0);
  const auto w = twin::winding_numbers(twin::word_to_trajectory(word), ms, config.epsilon);
  if (config.format == "json") {
    emit(config, json{{"windings", windings_json(w)}}.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "# " << json{{"word", word.letters}, {"n", word.n}}.dump() << "\n";
    os << "i,j,k,winding\n";
    for (const auto& [t, wt] : w)
      os << t.i + 1 << "," << t.j + 1 << "," << t.k + 1 << "," << wt << "\n";
    emit(config, os.str());
  }
  return 0;
}

int cmd_potential(const RunConfig& config, const std::vector<double>& x) {
  const coords::MassSystem ms(config.masses, config.mu0);
  const gauge::FluxSet flux = fluxtwin::cli::resolve_flux(config);
  const gauge::GaugeVector A =
      gauge::gauge_potential(ms, flux, coords::Configuration{x}, config.hbar, config.epsilon);
  if (config.format == "json") {
    emit(config, json{{"A", A.A}}.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "# " << json{{"masses", config.masses}, {"hbar", config.hbar}}.dump() << "\n";
    os << "i,A\n";
    for (std::size_t q = 0; q < A.A.size(); ++q)
      os << q + 1 << "," << io::format_g17(A.A[q]) << "\n";
    emit(config, os.str());
  }
  return 0;
}

int cmd_wilson(const RunConfig& config, const coords::Trajectory& traj, bool as_line) {
  const coords::MassSystem ms(config.masses, config.mu0);
  const gauge::FluxSet flux = fluxtwin::cli::resolve_flux(config);
  const std::complex<double> value = as_line
                                         ? gauge::wilson_line(ms, flux, traj, config.epsilon)
                                         : gauge::wilson_loop(ms, flux, traj, config.epsilon);
  const double phase = std::arg(value);
  double turns = phase / kTwoPi;
  if (turns < 0.0) turns += 1.0;
  if (config.format == "json") {
    emit(config, json{{"re", value.real()},
                      {"im", value.imag()},
                      {"abs", std::abs(value)},
                      {"phase_rad", phase},
                      {"phase_turns", turns}}
                         .dump(2) +
                     "\n");
  } else {
    std::ostringstream os;
    os << "re,im,abs,phase_rad,phase_turns\n";
    os << io::format_g17(value.real()) << "," << io::format_g17(value.imag()) << ","
       << io::format_g17(std::abs(value)) << "," << io::format_g17(phase) << ","
       << io::format_g17(turns) << "\n";
    emit(config, os.str());
  }
  return 0;
}

int cmd_flux(const RunConfig& config, const coords::Trajectory& traj) {
  const coords::MassSystem ms(config.masses, config.mu0);
  const gauge::FluxSet flux = fluxtwin::cli::resolve_flux(config);
  const double circulation = gauge::loop_flux(ms, flux, traj, config.hbar, config.epsilon);
  const auto w = gauge::loop_windings(ms, traj, config.epsilon);
  if (config.format == "json") {
    emit(config, json{{"circulation", circulation},
                      {"turns", circulation / (kTwoPi * config.hbar)},
                      {"windings", windings_json(w)}}
                         .dump(2) +
                     "\n");
  } else {
    std::ostringstream os;
    os << "# " << json{{"windings", windings_json(w)}}.dump() << "\n";
    os << "circulation,turns\n";
    os << io::format_g17(circulation) << ","
       << io::format_g17(circulation / (kTwoPi * config.hbar)) << "\n";
    emit(config, os.str());
  }
  return 0;
}

int cmd_kernel(const RunConfig& config, const std::string& kind_name) {
  kernel::KernelSpec spec;
  spec.mu = config.mu;
  spec.radius = config.radius;
  spec.time = config.time;
  spec.mode = config.time_mode == "real" ? kernel::TimeMode::real : kernel::TimeMode::imaginary;
  spec.alpha = config.alpha;
  spec.n_wind = config.n_wind;
  spec.n_modes = config.n_modes;
  spec.hbar = config.hbar;

  kernel::KernelKind kind;
  if (kind_name == "covering")
    kind = kernel::KernelKind::covering;
  else if (kind_name == "mode")
    kind = kernel::KernelKind::mode;
  else if (kind_name == "gauge")
    kind = kernel::KernelKind::gauge;
  else
    throw ConfigError("kernel kind must be covering, mode or gauge");

  const kernel::KernelTable table = kernel::build_kernel_table(spec, kind, config.grid_n,
                                                               config.grid_n);
  if (config.format == "json") {
    emit(config, io::kernel_table_to_json(table).dump(2) + "\n");
  } else {
    std::ostringstream os;
    io::write_kernel_table_csv(os, table);
    emit(config, os.str());
    if (!config.out.empty()) {
      std::ofstream sidecar(config.out + ".json");
      if (!sidecar) throw ConfigError("cannot open sidecar '" + config.out + ".json'");
      sidecar << io::kernel_table_meta(table).dump(2) << "\n";
    }
  }
  return 0;
}

int cmd_spectrum(const RunConfig& config, const std::string& problem, const std::string& bc,
                 int levels, bool analytic) {
  spectral::SpectrumTable table;
  if (problem == "ring") {
    if (analytic) {
      table = spectral::ring_levels_analytic(config.mu, config.radius, config.alpha,
                                             std::max(levels, config.grid_n / 2), config.hbar);
      table.energy.resize(std::min<std::size_t>(table.energy.size(), levels));
      table.residual.resize(table.energy.size());
    } else {
      spectral::RingGrid g;
      g.N = config.grid_n;
      g.r = config.radius;
      g.mu = config.mu;
      g.alpha = config.alpha;
      g.hbar = config.hbar;
      g.bc_kind = bc == "gauge" ? spectral::RingBc::gauge : spectral::RingBc::twisted;
      table = spectral::spectrum(spectral::build_ring_hamiltonian(g),
                                 std::min(levels, config.grid_n));
      table.meta["alpha"] = io::format_g17(config.alpha);
      table.meta["bc"] = bc;
      table.meta["grid_n"] = std::to_string(config.grid_n);
    }
  } else if (problem == "radial") {
    if (analytic) {
      table = spectral::disk_levels_analytic(config.mu, config.outer_radius, config.nu, levels,
                                             config.hbar);
    } else {
      spectral::RadialGrid g;
      g.M = config.radial_m;
      g.R = config.outer_radius;
      g.nu = config.nu;
      g.mu = config.mu;
      g.hbar = config.hbar;
      table = spectral::spectrum(spectral::build_radial_hamiltonian(g),
                                 std::min(levels, config.radial_m));
      table.meta["nu"] = io::format_g17(config.nu);
      table.meta["radial_m"] = std::to_string(config.radial_m);
    }
  } else {
    throw ConfigError("spectrum problem must be ring or radial");
  }

  if (config.format == "json") {
    emit(config, io::spectrum_to_json(table).dump(2) + "\n");
  } else {
    std::ostringstream os;
    io::write_spectrum_csv(os, table);
    emit(config, os.str());
  }
  return 0;
}

int cmd_verify(const std::string& suite) {
  const std::vector<fluxtwin::verify::CheckResult> results = fluxtwin::verify::run_suite(suite);
  json failures = json::array();
  for (const auto& r : results) {
    std::ostringstream line;
    line.precision(2);
    line << std::fixed;
    line << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << " (" << r.seconds << " s)";
    if (!r.detail.empty()) line << ": " << r.detail;
    std::cout << line.str() << "\n";
    if (!r.pass) failures.push_back({{"name", r.name}, {"detail", r.detail}});
  }
  if (!failures.empty()) {
    std::cerr << json{{"failures", failures}}.dump() << "\n";
    return 1;
  }
  return 0;
}

int cmd_sweep(const RunConfig& config) {
  const std::vector<fluxtwin::cli::SweepRow> rows = fluxtwin::cli::run_sweep(config);
  if (config.format == "json")
    emit(config, fluxtwin::cli::sweep_to_json(config, rows).dump(2) + "\n");
  else
    emit(config, fluxtwin::cli::sweep_to_csv(config, rows));
  json failures = json::array();
  for (const auto& row : rows)
    if (!row.ok)
      failures.push_back({{"alpha", row.alpha}, {"grid_n", row.grid_n}, {"error", row.error}});
  if (!failures.empty()) {
    std::cerr << json{{"failures", failures}}.dump() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fluxtwin: three-body flux interactions on the line — twisted boundary\n"
               "conditions, background gauge fields, and their equivalence checks"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, masses_text, format, out;
  double alpha = 0.0;
  int grid_n = 0;
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--masses", masses_text, "comma-separated particle masses");
  app.add_option("--alpha", alpha, "flux parameter (every triple)");
  app.add_option("--grid-n", grid_n, "grid size (ring sites / kernel grid edge)");
  app.add_option("--format", format, "output format: csv or json");
  app.add_option("--out", out, "output path (default stdout)");

  // reduce / perm / winding
  std::string word_text;
  int n_flag = 0;
  CLI::App* reduce = app.add_subcommand("reduce", "reduce a twin word to normal form");
  reduce->add_option("--word", word_text, "comma-separated generator indices")->required();
  reduce->add_option("--n", n_flag, "strand count (default: inferred)");
  CLI::App* perm = app.add_subcommand("perm", "induced permutation of a twin word");
  perm->add_option("--word", word_text, "comma-separated generator indices")->required();
  perm->add_option("--n", n_flag, "strand count (default: inferred)");
  CLI::App* winding = app.add_subcommand("winding", "triple windings of a braid word");
  winding->add_option("--word", word_text, "comma-separated generator indices")->required();
  winding->add_option("--n", n_flag, "strand count (default: inferred)");

  // potential
  std::string x_text;
  CLI::App* potential = app.add_subcommand("potential", "gauge potential at a configuration");
  potential->add_option("--x", x_text, "comma-separated particle positions")->required();

  // wilson / flux
  std::string loop_kind = "circle", path_file;
  int loop_winding = 1, loop_samples = 720;
  bool as_line = false;
  CLI::App* wilson = app.add_subcommand("wilson", "Wilson line/loop value");
  wilson->add_option("--loop", loop_kind, "built-in loop kind (circle)");
  wilson->add_option("--path", path_file, "trajectory CSV (time,x1..xn)");
  wilson->add_option("--winding", loop_winding, "circle winding count");
  wilson->add_option("--samples", loop_samples, "samples per turn");
  wilson->add_flag("--line", as_line, "treat the trajectory as an open line");
  CLI::App* flux_cmd = app.add_subcommand("flux", "circulation of A around a loop");
  flux_cmd->add_option("--loop", loop_kind, "built-in loop kind (circle)");
  flux_cmd->add_option("--path", path_file, "trajectory CSV (time,x1..xn)");
  flux_cmd->add_option("--winding", loop_winding, "circle winding count");
  flux_cmd->add_option("--samples", loop_samples, "samples per turn");

  // kernel
  std::string kernel_kind = "covering";
  CLI::App* kernel_cmd = app.add_subcommand("kernel", "emit a ring kernel table");
  kernel_cmd->add_option("--kind", kernel_kind, "covering | mode | gauge");

  // spectrum
  std::string problem = "ring", bc = "twisted";
  int levels = 8;
  bool analytic = false;
  CLI::App* spectrum_cmd = app.add_subcommand("spectrum", "ring or radial spectra");
  spectrum_cmd->add_option("--problem", problem, "ring | radial");
  spectrum_cmd->add_option("--bc", bc, "ring boundary kind: twisted | gauge");
  spectrum_cmd->add_option("--levels", levels, "number of levels to report");
  spectrum_cmd->add_flag("--analytic", analytic, "emit the analytic oracle levels");

  // verify / sweep
  std::string suite = "all";
  CLI::App* verify_cmd = app.add_subcommand("verify", "run the invariant suite");
  verify_cmd->add_option("--suite", suite, "all | acceptance | coords | twin | gauge | kernel | spectral");
  std::string sweep_alphas_text, sweep_grids_text;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "alpha x grid spectrum sweep");
  sweep_cmd->add_option("--alphas", sweep_alphas_text, "comma-separated alpha values");
  sweep_cmd->add_option("--grids", sweep_grids_text, "comma-separated ring sizes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    RunConfig config;
    if (!config_path.empty()) config = RunConfig::load_file(config_path);
    if (app.count("--masses")) config.masses = parse_double_list(masses_text);
    if (app.count("--alpha")) {
      config.alpha = alpha;
      config.flux = nlohmann::json();  // scalar override wins over a file flux map
    }
    if (app.count("--grid-n")) config.grid_n = grid_n;
    if (app.count("--format")) config.format = format;
    if (app.count("--out")) config.out = out;
    config.validate();

    if (reduce->parsed()) {
      const twin::TwinWord w = fluxtwin::twin::reduce_word(make_word(word_text, n_flag));
      emit(config, bracketed(w.letters) + "\n");
      return 0;
    }
    if (perm->parsed()) {
      const twin::Permutation p = twin::induced_permutation(make_word(word_text, n_flag));
      std::vector<int> one_based(p.images.size());
      for (std::size_t q = 0; q < p.images.size(); ++q) one_based[q] = p.images[q] + 1;
      emit(config, bracketed(one_based) + "\n");
      return 0;
    }
    if (winding->parsed()) return cmd_winding(config, make_word(word_text, n_flag));
    if (potential->parsed()) return cmd_potential(config, parse_double_list(x_text));
    if (wilson->parsed())
      return cmd_wilson(config, load_loop(config, loop_kind, path_file, loop_winding, loop_samples),
                        as_line);
    if (flux_cmd->parsed())
      return cmd_flux(config, load_loop(config, loop_kind, path_file, loop_winding, loop_samples));
    if (kernel_cmd->parsed()) return cmd_kernel(config, kernel_kind);
    if (spectrum_cmd->parsed()) return cmd_spectrum(config, problem, bc, levels, analytic);
    if (verify_cmd->parsed()) return cmd_verify(suite);
    if (sweep_cmd->parsed()) {
      if (sweep_cmd->count("--alphas")) config.sweep_alpha = parse_double_list(sweep_alphas_text);
      if (sweep_cmd->count("--grids")) config.sweep_grid = parse_int_list(sweep_grids_text);
      return cmd_sweep(config);
    }
    throw ConfigError("no subcommand selected");
  } catch (const ConfigError& e) {
    std::cerr << json{{"error", e.what()}}.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", e.what()}}.dump() << "\n";
    return 1;
  }
}
