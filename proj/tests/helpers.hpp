#pragma once

#include <random>
#include <vector>

#include "qbatt/matrix.hpp"
#include "qbatt/states.hpp"

namespace qbatt::testing {

/// Random complex matrix with standard-normal entries (deterministic seed).
inline ComplexMatrix random_complex(int dim, std::mt19937& rng) {
    std::normal_distribution<double> normal;
    ComplexMatrix m(dim);
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) {
            m(r, c) = Complex{normal(rng), normal(rng)};
        }
    }
    return m;
}

inline ComplexMatrix random_hermitian(int dim, std::mt19937& rng) {
    const ComplexMatrix g = random_complex(dim, rng);
    const ComplexMatrix gdag = adjoint(g);
    ComplexMatrix h(dim);
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) {
            h(r, c) = 0.5 * (g(r, c) + gdag(r, c));
        }
    }
    return h;
}

/// Random full-rank density matrix G G^dagger / Tr[G G^dagger].
inline ComplexMatrix random_density(int dim, std::mt19937& rng) {
    const ComplexMatrix g = random_complex(dim, rng);
    ComplexMatrix rho = matmul(g, adjoint(g));
    const double norm = trace(rho).real();
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) {
            rho(r, c) /= norm;
        }
    }
    return rho;
}

/// Register with the default per-qubit Hamiltonians, A/C thermal at the
/// reference temperatures and B pure at (theta, phi).
inline SystemSpec reference_system(int n_qubits, double theta, double phi) {
    std::vector<QubitSpec> qubits;
    qubits.push_back({QubitHamiltonian{}, ThermalInit{4.0}});
    qubits.push_back({QubitHamiltonian{}, PureInit{theta, phi}});
    if (n_qubits == 3) {
        qubits.push_back({QubitHamiltonian{}, ThermalInit{0.4}});
    }
    return SystemSpec{std::move(qubits)};
}

}  // namespace qbatt::testing
