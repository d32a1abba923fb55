#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "qbatt/config.hpp"
#include "qbatt/protocol.hpp"
#include "qbatt/scan.hpp"

namespace qbatt {

inline constexpr std::string_view kArtifactVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

/// Column contract shared by every trajectory and scan emission.
/// Power columns stay empty at iteration 0; theta/phi stay empty when
/// qubit B is not scanned or prepared through a pure state.
inline constexpr std::string_view kCsvHeader =
    "case,n_qubits,root_n,theta,phi,iteration,energy,ergotropy,delta_w,ratio,fom,"
    "power_work,power_ergotropy";

/// Header of the compare-thermal table emission.
inline constexpr std::string_view kThermalCsvHeader =
    "case,n_qubits,b_init,metric,max_value,theta,phi,population,iteration";

/// Provenance sidecar referenced by every emitted data file.
struct RunManifest {
    std::string version{kArtifactVersion};
    int schema_version = kSchemaVersion;
    std::string generated_at;  // ISO-8601 UTC timestamp
    std::string mode;          // subcommand that produced the data
    FullConfig config;
    std::vector<GateSpec> gate_table;
    std::vector<std::string> outputs;
};

RunManifest make_manifest(const std::string& mode, const FullConfig& config);
std::string manifest_to_json(const RunManifest& manifest);
RunManifest manifest_from_json(const std::string& json_text);

// CSV emission. Values carry 12 significant digits; row order is
// (theta, phi, iteration) lexicographic.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj,
                          std::optional<double> theta, std::optional<double> phi);
void write_scan_csv(std::ostream& os, const ScanResult& result);
void write_pair_csv(std::ostream& os, const CnotComparison& comparison);
void write_convergence_csv(std::ostream& os, std::span<const Trajectory> trajectories,
                           std::optional<double> theta, std::optional<double> phi);
void write_thermal_csv(std::ostream& os, const ThermalComparison& comparison);

// JSON emission: the same rows as the CSV plus the embedded manifest.
std::string trajectory_json(const Trajectory& traj, std::optional<double> theta,
                            std::optional<double> phi, const RunManifest& manifest);
std::string scan_json(const ScanResult& result, const RunManifest& manifest);
std::string pair_json(const CnotComparison& comparison, const RunManifest& manifest);
std::string convergence_json(std::span<const Trajectory> trajectories,
                             std::optional<double> theta, std::optional<double> phi,
                             const RunManifest& manifest);
std::string thermal_json(const ThermalComparison& comparison, const RunManifest& manifest);

/// Terminal rendering of a 2D scan panel: the character ramp
/// " .:-=+*#%@" maps the panel minimum to ' ' and the maximum to '@'.
std::string ascii_heatmap(const ScanResult& result);

}  // namespace qbatt
