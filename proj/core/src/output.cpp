#include "qbatt/output.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qbatt {

namespace {

using nlohmann::json;

std::string sig12(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string optional_sig12(const std::optional<double>& v) {
    return v ? sig12(*v) : std::string{};
}

std::string iso8601_now() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &utc);
    return buf;
}

void write_record_row(std::ostream& os, int circuit_case, int n_qubits, int root,
                      std::optional<double> theta, std::optional<double> phi,
                      int iteration, const MetricsRecord& rec) {
    os << circuit_case << ',' << n_qubits << ',' << root << ','
       << optional_sig12(theta) << ',' << optional_sig12(phi) << ','
       << iteration << ',' << sig12(rec.energy) << ',' << sig12(rec.ergotropy) << ','
       << sig12(rec.ergotropy_variation) << ',' << sig12(rec.ergotropy_ratio) << ','
       << sig12(rec.figure_of_merit) << ',' << optional_sig12(rec.power_work) << ','
       << optional_sig12(rec.power_ergotropy) << '\n';
}

json record_row_json(int circuit_case, int n_qubits, int root, std::optional<double> theta,
                     std::optional<double> phi, int iteration, const MetricsRecord& rec) {
    const auto opt = [](const std::optional<double>& v) {
        return v ? json(*v) : json(nullptr);
    };
    return json::array({circuit_case, n_qubits, root, opt(theta), opt(phi), iteration,
                        rec.energy, rec.ergotropy, rec.ergotropy_variation,
                        rec.ergotropy_ratio, rec.figure_of_merit, opt(rec.power_work),
                        opt(rec.power_ergotropy)});
}

json columns_json() {
    json cols = json::array();
    std::istringstream header{std::string(kCsvHeader)};
    std::string col;
    while (std::getline(header, col, ',')) cols.push_back(col);
    return cols;
}

json gate_table_json(std::span<const GateSpec> gates) {
    json arr = json::array();
    for (const GateSpec& g : gates) {
        arr.push_back({{"control", g.control}, {"target", g.target}, {"root", g.root}});
    }
    return arr;
}

json manifest_body(const RunManifest& m) {
    return json{{"version", m.version},
                {"schema_version", m.schema_version},
                {"generated_at", m.generated_at},
                {"mode", m.mode},
                {"config_text", emit_config(m.config)},
                {"gate_table", gate_table_json(m.gate_table)},
                {"outputs", m.outputs}};
}

struct PanelInfo {
    int case_number;
    int n_qubits;
    int root;
};

PanelInfo panel_info(const ProtocolConfig& config) {
    return {circuit_case_to_int(config.circuit_case), config.system.n_qubits(), config.root};
}

std::optional<double> scan_cell_phi(const ScanResult& result, const ScanCell& cell) {
    // phi labels a pure-B preparation only; dephased sweeps have none.
    if (!result.metadata.scanned_b_is_pure) return std::nullopt;
    return cell.phi;
}

}  // namespace

RunManifest make_manifest(const std::string& mode, const FullConfig& config) {
    RunManifest m;
    m.generated_at = iso8601_now();
    m.mode = mode;
    m.config = config;
    const ProtocolConfig pc = protocol_config(config);
    m.gate_table = gate_sequence(pc.circuit_case, pc.system.n_qubits(), pc.root);
    return m;
}

std::string manifest_to_json(const RunManifest& m) {
    return manifest_body(m).dump(2) + "\n";
}

RunManifest manifest_from_json(const std::string& json_text) {
    const json j = json::parse(json_text);
    RunManifest m;
    m.version = j.at("version").get<std::string>();
    m.schema_version = j.at("schema_version").get<int>();
    m.generated_at = j.at("generated_at").get<std::string>();
    m.mode = j.at("mode").get<std::string>();
    m.config = parse_config_text(j.at("config_text").get<std::string>());
    for (const json& g : j.at("gate_table")) {
        m.gate_table.emplace_back(g.at("control").get<int>(), g.at("target").get<int>(),
                                  g.at("root").get<int>());
    }
    m.outputs = j.at("outputs").get<std::vector<std::string>>();
    return m;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj,
                          std::optional<double> theta, std::optional<double> phi) {
    const PanelInfo info = panel_info(traj.config);
    os << kCsvHeader << '\n';
    for (const MetricsRecord& rec : traj.records) {
        write_record_row(os, info.case_number, info.n_qubits, info.root, theta, phi,
                         rec.iteration, rec);
    }
}

void write_scan_csv(std::ostream& os, const ScanResult& result) {
    const PanelInfo info = panel_info(result.metadata.base_config);
    os << kCsvHeader << '\n';
    for (const ScanCell& cell : result.cells) {
        write_record_row(os, info.case_number, info.n_qubits, info.root, cell.theta,
                         scan_cell_phi(result, cell), cell.record.iteration, cell.record);
    }
}

void write_pair_csv(std::ostream& os, const CnotComparison& comparison) {
    const Trajectory& frac = comparison.pair.fractional;
    const Trajectory& cnot = comparison.pair.full_cnot;
    const PanelInfo info = panel_info(frac.config);
    const std::optional<double> theta = comparison.theta_star;
    const std::optional<double> phi =
        comparison.metadata.scanned_b_is_pure ? std::optional<double>(comparison.phi) : std::nullopt;
    os << kCsvHeader << '\n';
    for (const MetricsRecord& rec : frac.records) {
        write_record_row(os, info.case_number, info.n_qubits, info.root, theta, phi,
                         rec.iteration, rec);
    }
    // full-CNOT rows on the shared axis: one circuit application per cycle
    for (const MetricsRecord& rec : cnot.records) {
        write_record_row(os, info.case_number, info.n_qubits, 1, theta, phi,
                         rec.iteration * info.root, rec);
    }
}

void write_convergence_csv(std::ostream& os, std::span<const Trajectory> trajectories,
                           std::optional<double> theta, std::optional<double> phi) {
    os << kCsvHeader << '\n';
    for (const Trajectory& traj : trajectories) {
        const PanelInfo info = panel_info(traj.config);
        for (const MetricsRecord& rec : traj.records) {
            write_record_row(os, info.case_number, info.n_qubits, info.root, theta, phi,
                             rec.iteration, rec);
        }
    }
}

void write_thermal_csv(std::ostream& os, const ThermalComparison& comparison) {
    os << kThermalCsvHeader << '\n';
    for (int case_index = 0; case_index < 3; ++case_index) {
        for (const ThermalVariantResult& variant : comparison.table[case_index]) {
            for (std::size_t m = 0; m < kComparisonMetrics.size(); ++m) {
                const MaximumEntry& entry = variant.maxima[m];
                os << (case_index + 1) << ',' << variant.n_qubits << ','
                   << (variant.thermal_b ? "thermal" : "pure") << ','
                   << metric_name(kComparisonMetrics[m]) << ',' << sig12(entry.value) << ','
                   << optional_sig12(entry.theta) << ',' << optional_sig12(entry.phi) << ','
                   << optional_sig12(entry.population) << ',' << entry.iteration << '\n';
            }
        }
    }
}

namespace {

json rows_for_trajectory(const Trajectory& traj, std::optional<double> theta,
                         std::optional<double> phi, std::optional<int> root_override,
                         int iteration_scale) {
    const PanelInfo info = panel_info(traj.config);
    json rows = json::array();
    for (const MetricsRecord& rec : traj.records) {
        rows.push_back(record_row_json(info.case_number, info.n_qubits,
                                       root_override.value_or(info.root), theta, phi,
                                       rec.iteration * iteration_scale, rec));
    }
    return rows;
}

std::string wrap_rows(const std::string& mode, const json& rows, const RunManifest& manifest) {
    return json{{"schema_version", kSchemaVersion},
                {"mode", mode},
                {"manifest", manifest_body(manifest)},
                {"columns", columns_json()},
                {"rows", rows}}
               .dump(2) +
           "\n";
}

}  // namespace

std::string trajectory_json(const Trajectory& traj, std::optional<double> theta,
                            std::optional<double> phi, const RunManifest& manifest) {
    return wrap_rows("run", rows_for_trajectory(traj, theta, phi, std::nullopt, 1), manifest);
}

std::string scan_json(const ScanResult& result, const RunManifest& manifest) {
    const PanelInfo info = panel_info(result.metadata.base_config);
    json rows = json::array();
    for (const ScanCell& cell : result.cells) {
        rows.push_back(record_row_json(info.case_number, info.n_qubits, info.root, cell.theta,
                                       scan_cell_phi(result, cell), cell.record.iteration,
                                       cell.record));
    }
    return wrap_rows(result.metadata.mode, rows, manifest);
}

std::string pair_json(const CnotComparison& comparison, const RunManifest& manifest) {
    const std::optional<double> phi =
        comparison.metadata.scanned_b_is_pure ? std::optional<double>(comparison.phi) : std::nullopt;
    json rows = rows_for_trajectory(comparison.pair.fractional, comparison.theta_star, phi,
                                    std::nullopt, 1);
    const json cnot_rows = rows_for_trajectory(comparison.pair.full_cnot, comparison.theta_star,
                                               phi, 1, comparison.pair.fractional.config.root);
    for (const json& row : cnot_rows) rows.push_back(row);
    json body{{"schema_version", kSchemaVersion},
              {"mode", "compare-cnot"},
              {"manifest", manifest_body(manifest)},
              {"theta_star", comparison.theta_star},
              {"columns", columns_json()},
              {"rows", rows}};
    return body.dump(2) + "\n";
}

std::string convergence_json(std::span<const Trajectory> trajectories,
                             std::optional<double> theta, std::optional<double> phi,
                             const RunManifest& manifest) {
    json rows = json::array();
    for (const Trajectory& traj : trajectories) {
        const json traj_rows = rows_for_trajectory(traj, theta, phi, std::nullopt, 1);
        for (const json& row : traj_rows) rows.push_back(row);
    }
    return wrap_rows("converge", rows, manifest);
}

std::string thermal_json(const ThermalComparison& comparison, const RunManifest& manifest) {
    const auto opt = [](const std::optional<double>& v) {
        return v ? json(*v) : json(nullptr);
    };
    json rows = json::array();
    for (int case_index = 0; case_index < 3; ++case_index) {
        for (const ThermalVariantResult& variant : comparison.table[case_index]) {
            for (std::size_t m = 0; m < kComparisonMetrics.size(); ++m) {
                const MaximumEntry& entry = variant.maxima[m];
                rows.push_back(json::array({case_index + 1, variant.n_qubits,
                                            variant.thermal_b ? "thermal" : "pure",
                                            std::string(metric_name(kComparisonMetrics[m])),
                                            entry.value, opt(entry.theta), opt(entry.phi),
                                            opt(entry.population), entry.iteration}));
            }
        }
    }
    json cols = json::array();
    std::istringstream header{std::string(kThermalCsvHeader)};
    std::string col;
    while (std::getline(header, col, ',')) cols.push_back(col);
    json body{{"schema_version", kSchemaVersion},
              {"mode", "compare-thermal"},
              {"manifest", manifest_body(manifest)},
              {"columns", cols},
              {"rows", rows}};
    return body.dump(2) + "\n";
}

std::string ascii_heatmap(const ScanResult& result) {
    static constexpr std::string_view ramp = " .:-=+*#%@";
    const int n_theta = result.n_theta();
    const int n_second = result.n_second();
    if (n_theta < 1 || n_second < 1) {
        throw std::invalid_argument("ascii_heatmap: result holds no cells");
    }

    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n_theta; ++i) {
        for (int j = 0; j < n_second; ++j) {
            const double v = result.value(i, j);
            if (std::isnan(v)) continue;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    if (!std::isfinite(lo)) {
        lo = 0.0;
        hi = 0.0;
    }

    const bool iteration_axis = result.mode == ScanResult::Mode::ThetaIterations;
    std::ostringstream out;
    out << result.metadata.mode << " heatmap: " << result.metadata.metric
        << "  (x: theta in [" << sig12(result.thetas.front()) << ", "
        << sig12(result.thetas.back()) << "], y: " << (iteration_axis ? "iteration" : "phi")
        << " in [" << sig12(result.seconds.front()) << ", " << sig12(result.seconds.back())
        << "], top row = y max)\n";
    for (int j = n_second - 1; j >= 0; --j) {
        out << '|';
        for (int i = 0; i < n_theta; ++i) {
            const double v = result.value(i, j);
            if (std::isnan(v)) {
                out << ' ';
                continue;
            }
            int idx = 0;
            if (hi > lo) {
                const double t = (v - lo) / (hi - lo);
                idx = static_cast<int>(std::floor(t * (static_cast<double>(ramp.size()) - 1.0)));
                idx = std::clamp(idx, 0, static_cast<int>(ramp.size()) - 1);
            }
            out << ramp[static_cast<std::size_t>(idx)];
        }
        out << "|\n";
    }
    out << "min = " << sig12(lo) << ", max = " << sig12(hi) << '\n';
    return out.str();
}

}  // namespace qbatt
