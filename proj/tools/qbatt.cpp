// Command-line front end: subcommand dispatch, config ingestion, and
// emission of trajectories, scans and comparison tables to CSV/JSON.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "qbatt/config.hpp"
#include "qbatt/output.hpp"

namespace {

struct CliOptions {
    std::string config_path;
    std::optional<int> circuit_case;
    std::optional<int> n_qubits;
    std::optional<int> root;
    std::optional<int> iterations;
    std::optional<double> theta;
    std::optional<double> phi;
    std::optional<std::string> metric;
    std::optional<std::string> format;
    std::optional<int> threads;
    std::string out_path;
    bool preview = false;
};

void add_common_options(CLI::App* sub, CliOptions& opts) {
    sub->add_option("--config", opts.config_path, "Path to a key = value configuration file");
    sub->add_option("--case", opts.circuit_case, "Circuit case {1,2,3}");
    sub->add_option("--qubits", opts.n_qubits, "Register size {2,3}");
    sub->add_option("--root", opts.root, "Gate root N (N=1 is the full CNOT)");
    sub->add_option("--iterations", opts.iterations, "Iteration count M");
    sub->add_option("--theta", opts.theta, "Qubit B polar angle in [0, pi]");
    sub->add_option("--phi", opts.phi, "Qubit B phase in [0, 2*pi)");
    sub->add_option("--metric", opts.metric,
                    "Metric: ergotropy, delta_w, ratio, fom, power_work, power_ergotropy");
    sub->add_option("--out", opts.out_path, "Output data file (default: stdout)");
    sub->add_option("--format", opts.format, "Output format {csv,json}");
    sub->add_flag("--preview", opts.preview, "Print an ASCII heatmap of a 2D scan to stdout");
    sub->add_option("--threads", opts.threads, "Worker threads (0 = available parallelism)");
}

qbatt::FullConfig assemble_config(const CliOptions& opts) {
    qbatt::FullConfig config;
    if (!opts.config_path.empty()) {
        config = qbatt::parse_config_file(opts.config_path);
    }
    if (opts.circuit_case) config.circuit_case = *opts.circuit_case;
    if (opts.n_qubits) config.n_qubits = *opts.n_qubits;
    if (opts.root) config.root = *opts.root;
    if (opts.iterations) config.iterations = *opts.iterations;
    if (opts.theta) config.theta = *opts.theta;
    if (opts.phi) config.phi = *opts.phi;
    if (opts.metric) config.metric = *opts.metric;
    if (opts.format) config.format = *opts.format;
    if (opts.threads) config.threads = *opts.threads;
    qbatt::validate_config(config);
    return config;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open output file '" + path + "'");
    }
    out << text;
    if (!out) {
        throw std::runtime_error("write failed for '" + path + "'");
    }
}

/// Ship the rendered data: to --out with a manifest sidecar, or to
/// stdout when no path was given.
void deliver(const std::string& mode, const qbatt::FullConfig& config,
             const CliOptions& opts, const std::string& csv_text,
             const std::string& json_text) {
    const bool json = config.format == "json";
    const std::string& payload = json ? json_text : csv_text;
    if (opts.out_path.empty()) {
        if (!opts.preview) std::cout << payload;
        return;
    }
    write_file(opts.out_path, payload);
    qbatt::RunManifest manifest = qbatt::make_manifest(mode, config);
    manifest.outputs.push_back(opts.out_path);
    write_file(opts.out_path + ".manifest.json", qbatt::manifest_to_json(manifest));
    std::cout << "wrote " << opts.out_path << " and " << opts.out_path << ".manifest.json\n";
}

std::optional<double> b_theta(const qbatt::FullConfig& config) {
    if (config.b_excited_population) return std::nullopt;
    return config.theta;
}

std::optional<double> b_phi(const qbatt::FullConfig& config) {
    if (config.b_excited_population) return std::nullopt;
    return config.phi;
}

void require_no_preview(const CliOptions& opts, const std::string& mode) {
    if (opts.preview) {
        throw std::invalid_argument("--preview needs a 2D scan result; '" + mode +
                                    "' does not produce one (use scan or scan2d)");
    }
}

int run_mode(const std::string& mode, const CliOptions& opts) {
    std::string stage = "config";
    try {
        const qbatt::FullConfig config = assemble_config(opts);
        const qbatt::RunManifest manifest = qbatt::make_manifest(mode, config);

        if (mode == "run") {
            require_no_preview(opts, mode);
            stage = "simulation";
            const qbatt::Trajectory traj = qbatt::run(qbatt::protocol_config(config));
            stage = "output";
            std::ostringstream csv;
            qbatt::write_trajectory_csv(csv, traj, b_theta(config), b_phi(config));
            deliver(mode, config, opts, csv.str(),
                    qbatt::trajectory_json(traj, b_theta(config), b_phi(config), manifest));
        } else if (mode == "scan" || mode == "scan2d") {
            stage = "simulation";
            const qbatt::Metric metric = qbatt::metric_from_name(config.metric);
            const qbatt::ProtocolConfig pc = qbatt::protocol_config(config);
            const qbatt::ScanResult result =
                mode == "scan"
                    ? qbatt::scan_theta_iterations(pc, config.grid, metric, config.threads)
                    : qbatt::scan_theta_phi_max(pc, config.grid, metric, config.threads);
            stage = "output";
            if (opts.preview) {
                std::cout << qbatt::ascii_heatmap(result);
            }
            std::ostringstream csv;
            qbatt::write_scan_csv(csv, result);
            deliver(mode, config, opts, csv.str(), qbatt::scan_json(result, manifest));
        } else if (mode == "compare-cnot") {
            require_no_preview(opts, mode);
            stage = "simulation";
            const qbatt::CnotComparison comparison =
                qbatt::cnot_comparison(qbatt::protocol_config(config), config.grid, config.threads);
            stage = "output";
            std::ostringstream csv;
            qbatt::write_pair_csv(csv, comparison);
            deliver(mode, config, opts, csv.str(), qbatt::pair_json(comparison, manifest));
        } else if (mode == "compare-thermal") {
            require_no_preview(opts, mode);
            stage = "simulation";
            // the table spans both register sizes; the base is always 3 qubits
            qbatt::FullConfig base = config;
            base.n_qubits = 3;
            base.b_excited_population.reset();
            const qbatt::ThermalComparison comparison = qbatt::thermal_comparison(
                qbatt::protocol_config(base), config.grid, config.threads);
            stage = "output";
            std::ostringstream csv;
            qbatt::write_thermal_csv(csv, comparison);
            deliver(mode, config, opts, csv.str(), qbatt::thermal_json(comparison, manifest));
        } else if (mode == "converge") {
            require_no_preview(opts, mode);
            stage = "simulation";
            const std::vector<qbatt::Trajectory> trajectories = qbatt::convergence_study(
                qbatt::protocol_config(config), config.convergence_roots);
            stage = "output";
            std::ostringstream csv;
            qbatt::write_convergence_csv(csv, trajectories, b_theta(config), b_phi(config));
            deliver(mode, config, opts, csv.str(),
                    qbatt::convergence_json(trajectories, b_theta(config), b_phi(config), manifest));
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "qbatt " << mode << ": " << stage << " stage failed: " << e.what() << '\n';
        return stage == "config" ? 2 : 3;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qbatt - fractional-CNOT quantum battery protocol simulator"};
    app.require_subcommand(1);

    CliOptions opts;
    const std::vector<std::string> modes = {"run",          "scan",           "scan2d",
                                            "compare-cnot", "compare-thermal", "converge"};
    const std::vector<std::string> descriptions = {
        "Single trajectory at the configured (theta, phi)",
        "Metric over theta x iterations at fixed phi",
        "Per-(theta, phi) maximum of the metric over iterations",
        "Fractional-gate trajectory against its full-CNOT counterpart at theta*",
        "Maxima table: pure-B versus thermal-B initialisation, both register sizes",
        "Ergotropy trajectories across gate roots, two cycles each"};
    for (std::size_t i = 0; i < modes.size(); ++i) {
        add_common_options(app.add_subcommand(modes[i], descriptions[i]), opts);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    return run_mode(app.get_subcommands().front()->get_name(), opts);
}
