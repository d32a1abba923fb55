#pragma once

#include <variant>
#include <vector>

#include "qbatt/matrix.hpp"

namespace qbatt {

/// Two-level Hamiltonian diag(eps1, eps2), energies in units of the
/// excited level of qubit B. Default (0, 1).
struct QubitHamiltonian {
    double eps1 = 0.0;
    double eps2 = 1.0;

    QubitHamiltonian() = default;
    QubitHamiltonian(double ground, double excited);

    friend bool operator==(const QubitHamiltonian&, const QubitHamiltonian&) = default;
};

/// Thermal initialization at temperature kT >= 0 (kT = +infinity is the
/// maximally mixed flag value; kT = 0 is the ground state).
struct ThermalInit {
    double kT = 0.0;
    ThermalInit() = default;
    explicit ThermalInit(double temperature);
};

/// Pure-state initialization cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
struct PureInit {
    double theta = 0.0;
    double phi = 0.0;
    PureInit() = default;
    PureInit(double theta_angle, double phi_angle);
};

/// Diagonal state diag(1-p, p) labelled by its excited population,
/// p in [0, 1/2]; the coordinate of the thermal-B comparison sweep.
struct ExcitedPopulationInit {
    double p = 0.0;
    ExcitedPopulationInit() = default;
    explicit ExcitedPopulationInit(double population);
};

using QubitInit = std::variant<ThermalInit, PureInit, ExcitedPopulationInit>;

struct QubitSpec {
    QubitHamiltonian hamiltonian;
    QubitInit init;
};

/// Ordered register description: qubit 0 = A, 1 = B, 2 = C (when present).
/// Tensor-product ordering is big-endian, A is the most significant bit.
struct SystemSpec {
    std::vector<QubitSpec> qubits;

    SystemSpec() = default;
    explicit SystemSpec(std::vector<QubitSpec> qs);
    int n_qubits() const { return static_cast<int>(qubits.size()); }
};

/// Gibbs state diag(e^{-eps1/kT}, e^{-eps2/kT}) / Z.
ComplexMatrix gibbs_state(const QubitHamiltonian& h, double kT);

/// Rank-1 projector of the pure state at (theta, phi).
ComplexMatrix pure_state(double theta, double phi);

/// diag(1-p, p), no coherences.
ComplexMatrix excited_population_state(double p);

/// 2x2 initial state of a single qubit spec.
ComplexMatrix qubit_state(const QubitSpec& q);

/// Tensor product of the per-qubit initial states in order A (x) B [(x) C].
ComplexMatrix system_state(const SystemSpec& spec);

/// Non-interacting system Hamiltonian: diagonal, entry for basis state
/// |b_A b_B b_C> is the sum of the selected per-qubit levels.
ComplexMatrix system_hamiltonian(const SystemSpec& spec);

}  // namespace qbatt
