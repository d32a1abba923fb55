#include "qbatt/scan.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace qbatt {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Deterministic parallel map: every index writes only its own slot, so
/// results do not depend on the worker count or scheduling.
void parallel_for(int count, int threads, const std::function<void(int)>& body) {
    if (threads <= 0) {
        threads = static_cast<int>(std::thread::hardware_concurrency());
    }
    threads = std::max(1, std::min(threads, count));
    if (threads == 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        while (true) {
            const int i = next.fetch_add(1);
            if (i >= count || failed.load()) return;
            try {
                body(i);
            } catch (...) {
                std::scoped_lock lock(error_mutex);
                if (!failed.exchange(true)) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    if (failed.load()) std::rethrow_exception(first_error);
}

const QubitInit& b_init(const ProtocolConfig& config) {
    return config.system.qubits.at(1).init;
}

bool b_is_pure(const ProtocolConfig& config) {
    return std::holds_alternative<PureInit>(b_init(config));
}

/// State of qubit B at a grid point: the pure state when B is
/// configured pure, otherwise its dephased counterpart (the same
/// populations with the off-diagonal set to zero; phi drops out).
ComplexMatrix scanned_b_state(bool pure_b, double theta, double phi) {
    if (pure_b) {
        return pure_state(theta, phi);
    }
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    return ComplexMatrix::diagonal(std::vector<double>{c * c, s * s});
}

ComplexMatrix initial_state_with_b(const ProtocolConfig& config, const ComplexMatrix& b_state) {
    ComplexMatrix rho = kron(qubit_state(config.system.qubits[0]), b_state);
    if (config.system.n_qubits() == 3) {
        rho = kron(rho, qubit_state(config.system.qubits[2]));
    }
    return rho;
}

double scan_fixed_phi(const ProtocolConfig& config, const ScanGrid& grid) {
    if (grid.phi_fixed) {
        return *grid.phi_fixed;
    }
    if (b_is_pure(config)) {
        return std::get<PureInit>(b_init(config)).phi;
    }
    return std::numbers::pi;
}

ScanMetadata make_metadata(std::string mode, Metric metric, const ProtocolConfig& config,
                           const ScanGrid& grid) {
    ScanMetadata meta;
    meta.mode = std::move(mode);
    meta.metric = std::string(metric_name(metric));
    meta.base_config = config;
    meta.grid = grid;
    meta.gate_table = gate_sequence(config.circuit_case, config.system.n_qubits(), config.root);
    meta.scanned_b_is_pure = b_is_pure(config);
    return meta;
}

void require_axis_points(int points, const char* axis, int minimum) {
    if (points < minimum) {
        std::ostringstream msg;
        msg << axis << " point count " << points << " below minimum " << minimum;
        throw std::invalid_argument(msg.str());
    }
}

/// Index of the iteration maximizing the metric; power metrics start
/// the search at iteration 1. Ties resolve to the earliest iteration.
int argmax_iteration(const Trajectory& traj, Metric metric) {
    const bool is_power = metric == Metric::PowerWork || metric == Metric::PowerErgotropy;
    const std::size_t first = is_power ? 1 : 0;
    std::size_t best = std::min(first, traj.records.size() - 1);
    double best_value = -std::numeric_limits<double>::infinity();
    for (std::size_t a = first; a < traj.records.size(); ++a) {
        const double v = metric_value(traj.records[a], metric);
        if (std::isnan(v)) continue;
        if (v > best_value) {
            best_value = v;
            best = a;
        }
    }
    return static_cast<int>(best);
}

}  // namespace

std::string_view metric_name(Metric metric) {
    switch (metric) {
        case Metric::Ergotropy: return "ergotropy";
        case Metric::DeltaW: return "delta_w";
        case Metric::Ratio: return "ratio";
        case Metric::FoM: return "fom";
        case Metric::PowerWork: return "power_work";
        case Metric::PowerErgotropy: return "power_ergotropy";
    }
    return "unknown";
}

Metric metric_from_name(std::string_view name) {
    for (const Metric m : {Metric::Ergotropy, Metric::DeltaW, Metric::Ratio, Metric::FoM,
                           Metric::PowerWork, Metric::PowerErgotropy}) {
        if (metric_name(m) == name) return m;
    }
    std::ostringstream msg;
    msg << "unknown metric '" << name
        << "' (expected one of: ergotropy, delta_w, ratio, fom, power_work, power_ergotropy)";
    throw std::invalid_argument(msg.str());
}

double metric_value(const MetricsRecord& record, Metric metric) {
    switch (metric) {
        case Metric::Ergotropy: return record.ergotropy;
        case Metric::DeltaW: return record.ergotropy_variation;
        case Metric::Ratio: return record.ergotropy_ratio;
        case Metric::FoM: return record.figure_of_merit;
        case Metric::PowerWork: return record.power_work.value_or(kNaN);
        case Metric::PowerErgotropy: return record.power_ergotropy.value_or(kNaN);
    }
    return kNaN;
}

std::vector<double> theta_axis(const ScanGrid& grid) {
    require_axis_points(grid.theta_points, "theta", 2);
    std::vector<double> axis(grid.theta_points);
    for (int i = 0; i < grid.theta_points; ++i) {
        axis[i] = std::numbers::pi * (static_cast<double>(i) / (grid.theta_points - 1));
    }
    return axis;
}

std::vector<double> phi_axis(const ScanGrid& grid) {
    require_axis_points(grid.phi_points, "phi", 1);
    std::vector<double> axis(grid.phi_points);
    for (int i = 0; i < grid.phi_points; ++i) {
        axis[i] = 2.0 * std::numbers::pi * (static_cast<double>(i) / grid.phi_points);
    }
    return axis;
}

std::vector<double> population_axis(const ScanGrid& grid) {
    require_axis_points(grid.p_points, "population", 2);
    std::vector<double> axis(grid.p_points);
    for (int i = 0; i < grid.p_points; ++i) {
        axis[i] = 0.5 * (static_cast<double>(i) / (grid.p_points - 1));
    }
    return axis;
}

std::vector<double> ScanResult::values() const {
    std::vector<double> out;
    out.reserve(cells.size());
    for (const ScanCell& c : cells) {
        out.push_back(metric_value(c.record, metric));
    }
    return out;
}

ScanResult scan_theta_iterations(const ProtocolConfig& config, const ScanGrid& grid,
                                 Metric metric, int threads) {
    const std::vector<double> thetas = theta_axis(grid);
    const double phi = scan_fixed_phi(config, grid);
    const bool pure_b = b_is_pure(config);
    const int n_records = config.iterations + 1;

    ScanResult result;
    result.mode = ScanResult::Mode::ThetaIterations;
    result.metric = metric;
    result.thetas = thetas;
    result.seconds.resize(n_records);
    for (int a = 0; a < n_records; ++a) result.seconds[a] = a;
    result.cells.resize(thetas.size() * static_cast<std::size_t>(n_records));
    result.metadata = make_metadata("scan", metric, config, grid);

    parallel_for(static_cast<int>(thetas.size()), threads, [&](int i) {
        const Trajectory traj =
            run_from_state(config, initial_state_with_b(config, scanned_b_state(pure_b, thetas[i], phi)));
        for (int a = 0; a < n_records; ++a) {
            ScanCell& cell = result.cells[static_cast<std::size_t>(i) * n_records + a];
            cell.theta = thetas[i];
            cell.phi = phi;
            cell.record = traj.records[a];
        }
    });
    return result;
}

ScanResult scan_theta_phi_max(const ProtocolConfig& config, const ScanGrid& grid,
                              Metric metric, int threads) {
    const std::vector<double> thetas = theta_axis(grid);
    const std::vector<double> phis = phi_axis(grid);
    const bool pure_b = b_is_pure(config);

    ScanResult result;
    result.mode = ScanResult::Mode::ThetaPhiMax;
    result.metric = metric;
    result.thetas = thetas;
    result.seconds = phis;
    result.cells.resize(thetas.size() * phis.size());
    result.metadata = make_metadata("scan2d", metric, config, grid);

    const int n_phi = static_cast<int>(phis.size());
    parallel_for(static_cast<int>(result.cells.size()), threads, [&](int flat) {
        const int i = flat / n_phi;
        const int j = flat % n_phi;
        const Trajectory traj = run_from_state(
            config, initial_state_with_b(config, scanned_b_state(pure_b, thetas[i], phis[j])));
        ScanCell& cell = result.cells[static_cast<std::size_t>(flat)];
        cell.theta = thetas[i];
        cell.phi = phis[j];
        cell.record = traj.records[static_cast<std::size_t>(argmax_iteration(traj, metric))];
    });
    return result;
}

CnotComparison cnot_comparison(const ProtocolConfig& config, const ScanGrid& grid, int threads) {
    if (config.root < 1 || config.iterations % config.root != 0) {
        throw std::invalid_argument(
            "cnot_comparison: iterations must be a multiple of the root");
    }
    const std::vector<double> thetas = theta_axis(grid);
    const double phi = scan_fixed_phi(config, grid);
    const bool pure_b = b_is_pure(config);

    std::vector<double> peak(thetas.size(), 0.0);
    parallel_for(static_cast<int>(thetas.size()), threads, [&](int i) {
        const Trajectory traj =
            run_from_state(config, initial_state_with_b(config, scanned_b_state(pure_b, thetas[i], phi)));
        double best = -std::numeric_limits<double>::infinity();
        for (const MetricsRecord& rec : traj.records) {
            best = std::max(best, rec.ergotropy);
        }
        peak[static_cast<std::size_t>(i)] = best;
    });

    std::size_t star = 0;
    for (std::size_t i = 1; i < peak.size(); ++i) {
        if (peak[i] > peak[star]) star = i;  // ties resolve toward smaller theta
    }

    CnotComparison out;
    out.theta_star = thetas[star];
    out.phi = phi;
    const ComplexMatrix rho0 =
        initial_state_with_b(config, scanned_b_state(pure_b, out.theta_star, phi));
    out.pair = run_pair_comparison(config, rho0);
    out.metadata = make_metadata("compare-cnot", Metric::Ergotropy, config, grid);
    return out;
}

ThermalComparison thermal_comparison(const ProtocolConfig& base, const ScanGrid& grid,
                                     int threads) {
    if (base.system.n_qubits() != 3) {
        throw std::invalid_argument("thermal_comparison: base configuration must hold 3 qubits");
    }
    for (const int idx : {0, 2}) {
        if (!std::holds_alternative<ThermalInit>(base.system.qubits[idx].init)) {
            throw std::invalid_argument(
                "thermal_comparison: qubits A and C must be thermally initialised");
        }
    }

    const std::vector<double> thetas = theta_axis(grid);
    const std::vector<double> phis = phi_axis(grid);
    const std::vector<double> populations = population_axis(grid);

    ThermalComparison out;
    out.metadata = make_metadata("compare-thermal", Metric::Ergotropy, base, grid);

    for (int case_index = 0; case_index < 3; ++case_index) {
        const CircuitCase circuit_case = circuit_case_from_int(case_index + 1);
        for (int variant = 0; variant < 4; ++variant) {
            const int n_qubits = (variant == 0 || variant == 2) ? 3 : 2;
            const bool thermal_b = variant >= 2;

            ProtocolConfig config = base;
            config.circuit_case = circuit_case;
            if (n_qubits == 2) {
                config.system.qubits.resize(2);
            }

            ThermalVariantResult& slot = out.table[case_index][variant];
            slot.n_qubits = n_qubits;
            slot.thermal_b = thermal_b;

            struct CellBest {
                std::array<double, 4> value;
                std::array<int, 4> iteration;
            };
            const std::size_t n_cells =
                thermal_b ? populations.size() : thetas.size() * phis.size();
            std::vector<CellBest> per_cell(n_cells);

            parallel_for(static_cast<int>(n_cells), threads, [&](int flat) {
                ComplexMatrix b_state;
                if (thermal_b) {
                    b_state = excited_population_state(populations[flat]);
                } else {
                    const int i = flat / static_cast<int>(phis.size());
                    const int j = flat % static_cast<int>(phis.size());
                    b_state = pure_state(thetas[i], phis[j]);
                }
                const Trajectory traj =
                    run_from_state(config, initial_state_with_b(config, b_state));
                CellBest best;
                best.value.fill(-std::numeric_limits<double>::infinity());
                best.iteration.fill(0);
                for (std::size_t m = 0; m < kComparisonMetrics.size(); ++m) {
                    for (std::size_t a = 0; a < traj.records.size(); ++a) {
                        const double v = metric_value(traj.records[a], kComparisonMetrics[m]);
                        if (v > best.value[m]) {
                            best.value[m] = v;
                            best.iteration[m] = static_cast<int>(a);
                        }
                    }
                }
                per_cell[static_cast<std::size_t>(flat)] = best;
            });

            for (std::size_t m = 0; m < kComparisonMetrics.size(); ++m) {
                MaximumEntry entry;
                entry.value = -std::numeric_limits<double>::infinity();
                for (std::size_t flat = 0; flat < n_cells; ++flat) {
                    if (per_cell[flat].value[m] > entry.value) {
                        entry.value = per_cell[flat].value[m];
                        entry.iteration = per_cell[flat].iteration[m];
                        if (thermal_b) {
                            entry.population = populations[flat];
                            entry.theta.reset();
                            entry.phi.reset();
                        } else {
                            entry.theta = thetas[flat / phis.size()];
                            entry.phi = phis[flat % phis.size()];
                            entry.population.reset();
                        }
                    }
                }
                slot.maxima[m] = entry;
            }
        }
    }
    return out;
}

std::vector<Trajectory> convergence_study(const ProtocolConfig& config,
                                          std::span<const int> roots) {
    if (roots.empty()) {
        throw std::invalid_argument("convergence_study: root list must not be empty");
    }
    std::vector<Trajectory> out;
    out.reserve(roots.size());
    for (const int n : roots) {
        if (n < 1) {
            throw std::invalid_argument("convergence_study: roots must be positive integers");
        }
        ProtocolConfig per_root = config;
        per_root.root = n;
        per_root.iterations = 2 * n;  // exactly two cycles
        out.push_back(run(per_root));
    }
    return out;
}

}  // namespace qbatt
