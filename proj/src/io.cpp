#include "fluxtwin/io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace fluxtwin::io {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_trajectory_csv(std::ostream& os, const coords::Trajectory& traj) {
  traj.validate();
  os << "time";
  for (int i = 1; i <= traj.n(); ++i) os << ",x" << i;
  os << "\n";
  for (std::size_t s = 0; s < traj.size(); ++s) {
    os << format_g17(traj.t[s]);
    for (double xi : traj.x[s].x) os << "," << format_g17(xi);
    os << "\n";
  }
}

coords::Trajectory read_trajectory_csv(std::istream& is) {
  coords::Trajectory traj;
  std::string line;
  bool header_seen = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      if (line.rfind("time", 0) == 0) continue;  // header row is optional
    }
    std::stringstream row(line);
    std::string cell;
    std::vector<double> values;
    while (std::getline(row, cell, ',')) values.push_back(std::stod(cell));
    if (values.size() < 3) throw Error("trajectory row needs time plus at least two positions");
    traj.t.push_back(values.front());
    traj.x.emplace_back(std::vector<double>(values.begin() + 1, values.end()));
  }
  traj.validate();
  return traj;
}

std::string triple_key(const coords::Triple& t) {
  std::ostringstream os;
  os << "[" << t.i + 1 << "," << t.j + 1 << "," << t.k + 1 << "]";
  return os.str();
}

coords::Triple triple_from_key(const std::string& key) {
  int i = 0, j = 0, k = 0;
  if (std::sscanf(key.c_str(), "[%d,%d,%d]", &i, &j, &k) != 3 || !(1 <= i && i < j && j < k))
    throw ConfigError("bad triple key '" + key + "', expected \"[i,j,k]\" with 1 <= i < j < k");
  return {i - 1, j - 1, k - 1};
}

nlohmann::json flux_to_json(const gauge::FluxSet& flux) {
  flux.validate();
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [t, a] : flux.alpha) out[triple_key(t)] = a;
  return out;
}

gauge::FluxSet flux_from_json(const nlohmann::json& j, int n) {
  if (!j.is_object()) throw ConfigError("flux map must be a JSON object");
  gauge::FluxSet flux = gauge::FluxSet::zero(n);
  for (const auto& [key, value] : j.items()) {
    const coords::Triple t = triple_from_key(key);
    if (t.k >= n) throw ConfigError("flux key " + key + " out of range for n=" + std::to_string(n));
    if (!value.is_number()) throw ConfigError("flux value for " + key + " must be a number");
    flux.set(t, value.get<double>());
  }
  flux.validate();
  return flux;
}

namespace {

const char* kind_name(kernel::KernelKind kind) {
  switch (kind) {
    case kernel::KernelKind::covering: return "covering";
    case kernel::KernelKind::mode: return "mode";
    case kernel::KernelKind::gauge: return "gauge";
  }
  return "unknown";
}

}  // namespace

nlohmann::json kernel_table_meta(const kernel::KernelTable& table) {
  return {{"kind", kind_name(table.kind)},
          {"mu", table.spec.mu},
          {"radius", table.spec.radius},
          {"time", table.spec.time},
          {"time_mode", table.spec.mode == kernel::TimeMode::imaginary ? "imaginary" : "real"},
          {"alpha", table.spec.alpha},
          {"n_wind", table.spec.n_wind},
          {"n_modes", table.spec.n_modes},
          {"hbar", table.spec.hbar},
          {"n_theta", table.theta.size()},
          {"n_theta_prime", table.theta_prime.size()},
          {"tail_estimate", table.tail_estimate}};
}

void write_kernel_table_csv(std::ostream& os, const kernel::KernelTable& table) {
  os << "# " << kernel_table_meta(table).dump() << "\n";
  os << "theta,theta_prime,re,im\n";
  for (std::size_t i = 0; i < table.theta.size(); ++i)
    for (std::size_t j = 0; j < table.theta_prime.size(); ++j)
      os << format_g17(table.theta[i]) << "," << format_g17(table.theta_prime[j]) << ","
         << format_g17(table.value[i][j].real()) << "," << format_g17(table.value[i][j].imag())
         << "\n";
}

nlohmann::json kernel_table_to_json(const kernel::KernelTable& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < table.theta.size(); ++i)
    for (std::size_t j = 0; j < table.theta_prime.size(); ++j)
      rows.push_back({{"theta", table.theta[i]},
                      {"theta_prime", table.theta_prime[j]},
                      {"re", table.value[i][j].real()},
                      {"im", table.value[i][j].imag()}});
  return {{"meta", kernel_table_meta(table)}, {"values", rows}};
}

nlohmann::json spectrum_meta(const spectral::SpectrumTable& table) {
  nlohmann::json meta = nlohmann::json::object();
  for (const auto& [key, value] : table.meta) meta[key] = value;
  meta["count"] = table.count();
  return meta;
}

void write_spectrum_csv(std::ostream& os, const spectral::SpectrumTable& table) {
  os << "# " << spectrum_meta(table).dump() << "\n";
  os << "index,energy,residual\n";
  for (int q = 0; q < table.count(); ++q)
    os << q << "," << format_g17(table.energy[q]) << "," << format_g17(table.residual[q])
       << "\n";
}

nlohmann::json spectrum_to_json(const spectral::SpectrumTable& table) {
  return {{"meta", spectrum_meta(table)},
          {"energy", table.energy},
          {"residual", table.residual}};
}

}  // namespace fluxtwin::io
