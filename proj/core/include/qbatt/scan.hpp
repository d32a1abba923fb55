#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qbatt/protocol.hpp"

namespace qbatt {

/// Metric selector for scans and serialized tables.
enum class Metric { Ergotropy, DeltaW, Ratio, FoM, PowerWork, PowerErgotropy };

std::string_view metric_name(Metric metric);
/// Throws std::invalid_argument listing the known names on a miss.
Metric metric_from_name(std::string_view name);
/// Value of the metric in a record; NaN for powers at iteration 0.
double metric_value(const MetricsRecord& record, Metric metric);

/// Grid resolutions. theta covers [0, pi] inclusive; phi covers
/// [0, 2*pi) half-open; the population axis covers [0, 1/2] inclusive.
struct ScanGrid {
    int theta_points = 101;
    int phi_points = 101;
    std::optional<double> phi_fixed;
    int p_points = 51;

    friend bool operator==(const ScanGrid&, const ScanGrid&) = default;
};

std::vector<double> theta_axis(const ScanGrid& grid);
std::vector<double> phi_axis(const ScanGrid& grid);
std::vector<double> population_axis(const ScanGrid& grid);

struct ScanCell {
    double theta = 0.0;
    double phi = 0.0;
    MetricsRecord record;
};

struct ScanMetadata {
    std::string mode;
    std::string metric;
    ProtocolConfig base_config;
    ScanGrid grid;
    std::vector<GateSpec> gate_table;
    bool scanned_b_is_pure = true;
};

/// 2D panel of metric values. Axis 0 is always theta; axis 1 is the
/// iteration index (theta-iteration scans) or phi (theta-phi max scans).
/// Cells are stored theta-major in (theta, phi, iteration) order and
/// carry the full metrics record behind the scanned value.
struct ScanResult {
    enum class Mode { ThetaIterations, ThetaPhiMax };

    Mode mode = Mode::ThetaIterations;
    Metric metric = Metric::Ergotropy;
    std::vector<double> thetas;
    std::vector<double> seconds;  // iteration indices or phi values
    std::vector<ScanCell> cells;
    ScanMetadata metadata;

    int n_theta() const { return static_cast<int>(thetas.size()); }
    int n_second() const { return static_cast<int>(seconds.size()); }
    const ScanCell& cell(int theta_index, int second_index) const {
        return cells[static_cast<std::size_t>(theta_index) * seconds.size() + second_index];
    }
    double value(int theta_index, int second_index) const {
        return metric_value(cell(theta_index, second_index).record, metric);
    }
    std::vector<double> values() const;
};

/// Metric over theta x iterations at a fixed phi (grid.phi_fixed, else
/// the configured phi of a pure qubit B, else pi). A non-pure B is
/// scanned through the dephased counterpart diag(cos^2, sin^2) of the
/// pure state, which carries no phi dependence.
ScanResult scan_theta_iterations(const ProtocolConfig& config, const ScanGrid& grid,
                                 Metric metric, int threads = 0);

/// Per-(theta, phi) maximum of the metric over iterations 0..M; each
/// cell keeps the record at the argmax iteration. Power metrics
/// maximize over iterations 1..M.
ScanResult scan_theta_phi_max(const ProtocolConfig& config, const ScanGrid& grid,
                              Metric metric, int threads = 0);

/// Fig.-3-style comparison: picks theta* maximizing the max-over-
/// iterations ergotropy of the fractional run at the configured phi
/// (ties toward smaller theta), then pairs it with the full-CNOT run.
struct CnotComparison {
    double theta_star = 0.0;
    double phi = 0.0;
    TrajectoryPair pair;
    ScanMetadata metadata;
};
CnotComparison cnot_comparison(const ProtocolConfig& config, const ScanGrid& grid, int threads = 0);

/// One maximum of the thermal-comparison table with its argmax
/// coordinates; theta/phi apply to pure-B variants, population to
/// thermal-B variants.
struct MaximumEntry {
    double value = 0.0;
    std::optional<double> theta;
    std::optional<double> phi;
    std::optional<double> population;
    int iteration = 0;
};

inline constexpr std::array<Metric, 4> kComparisonMetrics = {
    Metric::Ergotropy, Metric::DeltaW, Metric::Ratio, Metric::FoM};

struct ThermalVariantResult {
    int n_qubits = 3;
    bool thermal_b = false;
    std::array<MaximumEntry, 4> maxima;  // ordered as kComparisonMetrics
};

struct ThermalComparison {
    // rows: cases 1..3; columns: {3q pure, 2q pure, 3q thermal, 2q thermal}
    std::array<std::array<ThermalVariantResult, 4>, 3> table;
    ScanMetadata metadata;
};

/// Fig.-9 comparison. `base` must be a 3-qubit configuration with
/// thermal A and C; the 2-qubit variants drop qubit C. Pure-B variants
/// maximize over theta x phi x iterations, thermal-B variants over the
/// population axis x iterations.
ThermalComparison thermal_comparison(const ProtocolConfig& base, const ScanGrid& grid,
                                     int threads = 0);

/// One trajectory per root, each spanning exactly two cycles (M = 2N).
std::vector<Trajectory> convergence_study(const ProtocolConfig& config,
                                          std::span<const int> roots);

inline constexpr std::array<int, 7> kDefaultConvergenceRoots = {1, 2, 3, 5, 10, 15, 20};

}  // namespace qbatt
