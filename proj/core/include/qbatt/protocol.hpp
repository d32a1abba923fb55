#pragma once

#include <vector>

#include "qbatt/gates.hpp"
#include "qbatt/metrics.hpp"
#include "qbatt/states.hpp"

namespace qbatt {

/// The three interaction layouts of the charging circuit. Cases 1 and 2
/// keep one qubit out of the control role; case 3 runs every pair in
/// both directions within an iteration.
enum class CircuitCase { One = 1, Two = 2, Three = 3 };

CircuitCase circuit_case_from_int(int value);
int circuit_case_to_int(CircuitCase c);

struct ProtocolConfig {
    SystemSpec system;
    CircuitCase circuit_case = CircuitCase::One;
    int root = 15;        // N: gate fraction; a cycle is N iterations
    int iterations = 30;  // M: two cycles of the default N = 15
};

/// Per-iteration record sequence plus the final state. records[0]
/// describes the initial state; length is iterations + 1.
struct Trajectory {
    std::vector<MetricsRecord> records;
    ComplexMatrix final_state;
    ProtocolConfig config;

    int iterations() const { return static_cast<int>(records.size()) - 1; }
};

/// Per-iteration gate list of a circuit case:
///   2 qubits - case 1: [A->B]; case 2: [B->A]; case 3: [A->B, B->A]
///   3 qubits - case 1: [A->B, B->C]; case 2: [B->A, C->B];
///              case 3: [A->B, B->A, B->C, C->B]
/// All gates carry `root`. Gates act in list order.
std::vector<GateSpec> gate_sequence(CircuitCase circuit_case, int n_qubits, int root);

/// Evolve the system for config.iterations applications of the iteration
/// unitary, recording metrics against the non-interacting system
/// Hamiltonian at every step. State validity is re-checked at 1e-9 each
/// iteration; a violation aborts with the iteration index.
Trajectory run(const ProtocolConfig& config);

/// Same evolution from a caller-supplied initial state (used by scans
/// that sweep the state of qubit B across a grid).
Trajectory run_from_state(const ProtocolConfig& config, const ComplexMatrix& initial_state);

/// The fractional-gate trajectory next to its full-CNOT counterpart:
/// the root-1 circuit runs for iterations/root steps, one per cycle of
/// the fractional run. Rejects iteration counts that are not a multiple
/// of the root.
struct TrajectoryPair {
    Trajectory fractional;
    Trajectory full_cnot;
};
TrajectoryPair run_pair_comparison(const ProtocolConfig& config);
TrajectoryPair run_pair_comparison(const ProtocolConfig& config, const ComplexMatrix& initial_state);

/// Value of the full-CNOT step curve at a fractional-axis iteration:
/// the CNOT trajectory holds, within each cycle, the value it reaches at
/// that cycle's end (record ceil(alpha/root)).
const MetricsRecord& cnot_step_record(const Trajectory& full_cnot, int alpha, int root);

}  // namespace qbatt
