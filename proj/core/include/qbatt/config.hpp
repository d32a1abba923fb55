#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qbatt/protocol.hpp"
#include "qbatt/scan.hpp"

namespace qbatt {

/// Full run configuration as ingested from a config file and flags.
/// Defaults are the paper's reference parameters: 3 qubits, case 1,
/// N = 15, M = 30, kT_A = 4, kT_C = 0.4, eps = (0, 1) per qubit,
/// phi = pi; theta defaults to pi/2 for single-trajectory commands.
struct FullConfig {
    int n_qubits = 3;
    int circuit_case = 1;
    int root = 15;
    int iterations = 30;
    double theta = 1.5707963267948966;
    double phi = 3.141592653589793;
    std::string metric = "ergotropy";
    std::string format = "csv";
    int threads = 0;  // 0 = available parallelism

    double kT_a = 4.0;
    double kT_c = 0.4;
    QubitHamiltonian ham_a;
    QubitHamiltonian ham_b;
    QubitHamiltonian ham_c;

    /// When set, qubit B starts in diag(1-p, p) instead of a pure state.
    std::optional<double> b_excited_population;

    ScanGrid grid;
    std::vector<int> convergence_roots{kDefaultConvergenceRoots.begin(),
                                       kDefaultConvergenceRoots.end()};

    friend bool operator==(const FullConfig&, const FullConfig&) = default;
};

/// Parse the flat key = value format (# comments, dotted sections).
/// Rejects unknown keys (listing them), malformed values, and range
/// violations, naming the offending field.
FullConfig parse_config_text(const std::string& text);
FullConfig parse_config_file(const std::string& path);

/// Canonical serialization; parse_config_text(emit_config(c)) == c and
/// emission of a parsed emission is byte-identical (fixed point).
std::string emit_config(const FullConfig& config);

/// Range-validate every field (also called by the parser).
void validate_config(const FullConfig& config);

/// Materialize the protocol configuration: qubit A thermal at kT_a,
/// qubit B pure at (theta, phi) or diag(1-p, p), qubit C thermal at
/// kT_c when the register holds three qubits.
ProtocolConfig protocol_config(const FullConfig& config);

}  // namespace qbatt
