#include "qbatt/states.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qbatt {

namespace {

void require_range(bool ok, const char* field, const char* range, double value) {
    if (!ok) {
        std::ostringstream msg;
        msg << field << " = " << value << " outside " << range;
        throw std::invalid_argument(msg.str());
    }
}

}  // namespace

QubitHamiltonian::QubitHamiltonian(double ground, double excited) : eps1(ground), eps2(excited) {
    if (!(eps1 <= eps2)) {
        std::ostringstream msg;
        msg << "QubitHamiltonian: eps1 (" << eps1 << ") must not exceed eps2 (" << eps2 << ")";
        throw std::invalid_argument(msg.str());
    }
}

ThermalInit::ThermalInit(double temperature) : kT(temperature) {
    require_range(kT >= 0.0 && !std::isnan(kT), "kT", "[0, inf]", kT);
}

PureInit::PureInit(double theta_angle, double phi_angle) : theta(theta_angle), phi(phi_angle) {
    require_range(theta >= 0.0 && theta <= std::numbers::pi, "theta", "[0, pi]", theta);
    require_range(phi >= 0.0 && phi < 2.0 * std::numbers::pi, "phi", "[0, 2*pi)", phi);
}

ExcitedPopulationInit::ExcitedPopulationInit(double population) : p(population) {
    require_range(p >= 0.0 && p <= 0.5, "excited population", "[0, 1/2]", p);
}

SystemSpec::SystemSpec(std::vector<QubitSpec> qs) : qubits(std::move(qs)) {
    if (qubits.size() != 2 && qubits.size() != 3) {
        throw std::invalid_argument("SystemSpec: register must hold 2 or 3 qubits");
    }
}

ComplexMatrix gibbs_state(const QubitHamiltonian& h, double kT) {
    if (kT < 0.0 || std::isnan(kT)) {
        throw std::invalid_argument("gibbs_state: kT must be non-negative");
    }
    if (kT == 0.0) {
        // zero-temperature limit: ground-state projector
        return ComplexMatrix::diagonal(std::vector<double>{1.0, 0.0});
    }
    if (std::isinf(kT)) {
        return ComplexMatrix::diagonal(std::vector<double>{0.5, 0.5});
    }
    const double w1 = std::exp(-h.eps1 / kT);
    const double w2 = std::exp(-h.eps2 / kT);
    const double z = w1 + w2;
    return ComplexMatrix::diagonal(std::vector<double>{w1 / z, w2 / z});
}

ComplexMatrix pure_state(double theta, double phi) {
    const PureInit validated(theta, phi);
    const double c = std::cos(validated.theta / 2.0);
    const double s = std::sin(validated.theta / 2.0);
    ComplexMatrix rho(2);
    rho(0, 0) = c * c;
    rho(1, 1) = s * s;
    rho(0, 1) = c * s * std::polar(1.0, -validated.phi);
    rho(1, 0) = std::conj(rho(0, 1));
    return rho;
}

ComplexMatrix excited_population_state(double p) {
    const ExcitedPopulationInit validated(p);
    return ComplexMatrix::diagonal(std::vector<double>{1.0 - validated.p, validated.p});
}

ComplexMatrix qubit_state(const QubitSpec& q) {
    return std::visit(
        [&](const auto& init) -> ComplexMatrix {
            using T = std::decay_t<decltype(init)>;
            if constexpr (std::is_same_v<T, ThermalInit>) {
                return gibbs_state(q.hamiltonian, init.kT);
            } else if constexpr (std::is_same_v<T, PureInit>) {
                return pure_state(init.theta, init.phi);
            } else {
                return excited_population_state(init.p);
            }
        },
        q.init);
}

ComplexMatrix system_state(const SystemSpec& spec) {
    if (spec.n_qubits() != 2 && spec.n_qubits() != 3) {
        throw std::invalid_argument("system_state: register must hold 2 or 3 qubits");
    }
    ComplexMatrix rho = qubit_state(spec.qubits[0]);
    for (int j = 1; j < spec.n_qubits(); ++j) {
        rho = kron(rho, qubit_state(spec.qubits[j]));
    }
    return rho;
}

ComplexMatrix system_hamiltonian(const SystemSpec& spec) {
    const int n = spec.n_qubits();
    if (n != 2 && n != 3) {
        throw std::invalid_argument("system_hamiltonian: register must hold 2 or 3 qubits");
    }
    const int dim = 1 << n;
    std::vector<double> diag(dim, 0.0);
    for (int basis = 0; basis < dim; ++basis) {
        double energy = 0.0;
        for (int j = 0; j < n; ++j) {
            const int bit = (basis >> (n - 1 - j)) & 1;
            const QubitHamiltonian& h = spec.qubits[j].hamiltonian;
            energy += bit ? h.eps2 : h.eps1;
        }
        diag[basis] = energy;
    }
    return ComplexMatrix::diagonal(diag);
}

}  // namespace qbatt
