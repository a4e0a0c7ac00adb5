#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "fluxtwin/coords.hpp"
#include "fluxtwin/gauge.hpp"
#include "fluxtwin/kernel.hpp"
#include "fluxtwin/spectral.hpp"

namespace fluxtwin::io {

// 17 significant digits; round-trips doubles exactly.
std::string format_g17(double v);

// Trajectory CSV: header "time,x1,...,xn", one row per sample.
void write_trajectory_csv(std::ostream& os, const coords::Trajectory& traj);
coords::Trajectory read_trajectory_csv(std::istream& is);

// Flux sets serialize as {"[i,j,k]": alpha} with 1-based particle labels.
nlohmann::json flux_to_json(const gauge::FluxSet& flux);
gauge::FluxSet flux_from_json(const nlohmann::json& j, int n);

std::string triple_key(const coords::Triple& t);  // 1-based "[i,j,k]"
coords::Triple triple_from_key(const std::string& key);

nlohmann::json kernel_table_meta(const kernel::KernelTable& table);
void write_kernel_table_csv(std::ostream& os, const kernel::KernelTable& table);
nlohmann::json kernel_table_to_json(const kernel::KernelTable& table);

nlohmann::json spectrum_meta(const spectral::SpectrumTable& table);
void write_spectrum_csv(std::ostream& os, const spectral::SpectrumTable& table);
nlohmann::json spectrum_to_json(const spectral::SpectrumTable& table);

}  // namespace fluxtwin::io
