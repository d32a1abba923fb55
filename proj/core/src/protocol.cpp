#include "qbatt/protocol.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qbatt {

namespace {

constexpr double kStateValidityTol = 1e-9;

double diagonal_energy(const ComplexMatrix& rho, const ComplexMatrix& h) {
    double e = 0.0;
    for (int i = 0; i < h.dim(); ++i) {
        e += rho(i, i).real() * h(i, i).real();
    }
    return e;
}

// Validity check and ergotropy share one eigendecomposition per step.
struct StepMeasurement {
    double energy;
    double ergotropy;
};

StepMeasurement measure_state(const ComplexMatrix& rho, const ComplexMatrix& h, int iteration) {
    if (!rho.all_finite()) {
        std::ostringstream msg;
        msg << "run: non-finite state entry at iteration " << iteration;
        throw std::runtime_error(msg.str());
    }
    const double hermiticity = rho.hermiticity_defect();
    const double trace_error = std::abs(trace(rho) - Complex{1.0, 0.0});
    std::vector<double> spectrum;
    double min_eigenvalue = 0.0;
    if (hermiticity <= kStateValidityTol) {
        spectrum = hermitian_eigenvalues(rho, kStateValidityTol);
        min_eigenvalue = spectrum.front();
    }
    if (hermiticity > kStateValidityTol || trace_error > kStateValidityTol ||
        min_eigenvalue < -kStateValidityTol) {
        std::ostringstream msg;
        msg << "run: state validity violated at iteration " << iteration
            << " (hermiticity defect " << hermiticity << ", trace error " << trace_error
            << ", min eigenvalue " << min_eigenvalue << ")";
        throw std::runtime_error(msg.str());
    }

    const double energy = diagonal_energy(rho, h);
    double w = energy - passive_energy_of_spectrum(spectrum, h);
    if (w < 0.0 && w > -1e-10) {
        w = 0.0;
    }
    return {energy, w};
}

}  // namespace

CircuitCase circuit_case_from_int(int value) {
    switch (value) {
        case 1: return CircuitCase::One;
        case 2: return CircuitCase::Two;
        case 3: return CircuitCase::Three;
        default: break;
    }
    std::ostringstream msg;
    msg << "case = " << value << " outside {1, 2, 3}";
    throw std::invalid_argument(msg.str());
}

int circuit_case_to_int(CircuitCase c) {
    return static_cast<int>(c);
}

std::vector<GateSpec> gate_sequence(CircuitCase circuit_case, int n_qubits, int root) {
    if (n_qubits != 2 && n_qubits != 3) {
        throw std::invalid_argument("gate_sequence: register must hold 2 or 3 qubits");
    }
    const auto gate = [root](int control, int target) { return GateSpec{control, target, root}; };
    if (n_qubits == 2) {
        switch (circuit_case) {
            case CircuitCase::One: return {gate(0, 1)};
            case CircuitCase::Two: return {gate(1, 0)};
            case CircuitCase::Three: return {gate(0, 1), gate(1, 0)};
        }
    }
    switch (circuit_case) {
        case CircuitCase::One: return {gate(0, 1), gate(1, 2)};
        case CircuitCase::Two: return {gate(1, 0), gate(2, 1)};
        case CircuitCase::Three: return {gate(0, 1), gate(1, 0), gate(1, 2), gate(2, 1)};
    }
    throw std::invalid_argument("gate_sequence: unknown circuit case");
}

Trajectory run(const ProtocolConfig& config) {
    return run_from_state(config, system_state(config.system));
}

Trajectory run_from_state(const ProtocolConfig& config, const ComplexMatrix& initial_state) {
    if (config.root < 1) {
        throw std::invalid_argument("run: root must be a positive integer");
    }
    if (config.iterations < 0) {
        throw std::invalid_argument("run: iteration count must be non-negative");
    }

    const int n = config.system.n_qubits();
    const ComplexMatrix h = system_hamiltonian(config.system);
    if (initial_state.dim() != h.dim()) {
        throw std::invalid_argument("run: initial state dimension does not match the register");
    }
    const std::vector<GateSpec> gates = gate_sequence(config.circuit_case, n, config.root);
    const ComplexMatrix u = iteration_unitary(gates, n);
    const ComplexMatrix u_dagger = adjoint(u);

    Trajectory traj;
    traj.config = config;
    traj.records.reserve(config.iterations + 1);

    ComplexMatrix rho = initial_state;
    const StepMeasurement first = measure_state(rho, h, 0);
    traj.records.push_back(make_metrics_record(0, config.iterations, first.energy, first.ergotropy, nullptr));

    for (int alpha = 1; alpha <= config.iterations; ++alpha) {
        rho = matmul(matmul(u, rho), u_dagger);
        const StepMeasurement m = measure_state(rho, h, alpha);
        traj.records.push_back(
            make_metrics_record(alpha, config.iterations, m.energy, m.ergotropy, &traj.records.front()));
    }
    traj.final_state = std::move(rho);
    return traj;
}

TrajectoryPair run_pair_comparison(const ProtocolConfig& config) {
    return run_pair_comparison(config, system_state(config.system));
}

TrajectoryPair run_pair_comparison(const ProtocolConfig& config, const ComplexMatrix& initial_state) {
    if (config.root < 1 || config.iterations % config.root != 0) {
        std::ostringstream msg;
        msg << "run_pair_comparison: iterations (" << config.iterations
            << ") must be a multiple of the root (" << config.root << ")";
        throw std::invalid_argument(msg.str());
    }
    TrajectoryPair pair;
    pair.fractional = run_from_state(config, initial_state);

    ProtocolConfig cnot_config = config;
    cnot_config.root = 1;
    cnot_config.iterations = config.iterations / config.root;
    pair.full_cnot = run_from_state(cnot_config, initial_state);
    return pair;
}

const MetricsRecord& cnot_step_record(const Trajectory& full_cnot, int alpha, int root) {
    if (alpha < 0 || root < 1) {
        throw std::invalid_argument("cnot_step_record: invalid iteration or root");
    }
    const int applications = (alpha + root - 1) / root;  // ceil
    if (applications >= static_cast<int>(full_cnot.records.size())) {
        throw std::invalid_argument("cnot_step_record: iteration beyond the comparison window");
    }
    return full_cnot.records[static_cast<std::size_t>(applications)];
}

}  // namespace qbatt
