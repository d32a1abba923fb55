#include "qbatt/gates.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qbatt {

GateSpec::GateSpec(int control_qubit, int target_qubit, int gate_root)
    : control(control_qubit), target(target_qubit), root(gate_root) {
    if (control == target) {
        throw std::invalid_argument("GateSpec: control and target must differ");
    }
    if (control < 0 || target < 0) {
        throw std::invalid_argument("GateSpec: qubit indices must be non-negative");
    }
    if (root < 1) {
        throw std::invalid_argument("GateSpec: root must be a positive integer");
    }
}

NrcgEntries nrcg_entries(int root) {
    if (root < 1) {
        throw std::invalid_argument("nrcg_entries: root must be a positive integer");
    }
    if (root == 1) {
        return {Complex{0.0, 0.0}, Complex{1.0, 0.0}};
    }
    const Complex e = std::polar(1.0, std::numbers::pi / root);
    return {0.5 + 0.5 * e, 0.5 - 0.5 * e};
}

ComplexMatrix nrcg_2q(bool control_first, int root) {
    const GateSpec spec = control_first ? GateSpec{0, 1, root} : GateSpec{1, 0, root};
    return embed_gate(spec, 2);
}

ComplexMatrix embed_gate(const GateSpec& spec, int n_qubits) {
    if (n_qubits != 2 && n_qubits != 3) {
        throw std::invalid_argument("embed_gate: register must hold 2 or 3 qubits");
    }
    if (spec.control >= n_qubits || spec.target >= n_qubits) {
        std::ostringstream msg;
        msg << "embed_gate: gate (" << spec.control << " -> " << spec.target
            << ") does not fit a " << n_qubits << "-qubit register";
        throw std::invalid_argument(msg.str());
    }
    const auto [s, p] = nrcg_entries(spec.root);
    const int dim = 1 << n_qubits;
    const int control_bit = 1 << (n_qubits - 1 - spec.control);
    const int target_bit = 1 << (n_qubits - 1 - spec.target);

    ComplexMatrix u(dim);
    for (int basis = 0; basis < dim; ++basis) {
        if ((basis & control_bit) == 0) {
            u(basis, basis) = 1.0;
        } else if ((basis & target_bit) == 0) {
            const int flipped = basis | target_bit;
            u(basis, basis) = s;
            u(flipped, flipped) = s;
            u(basis, flipped) = p;
            u(flipped, basis) = p;
        }
    }
    return u;
}

ComplexMatrix iteration_unitary(std::span<const GateSpec> gates, int n_qubits) {
    if (gates.empty()) {
        throw std::invalid_argument("iteration_unitary: gate list must not be empty");
    }
    ComplexMatrix u = embed_gate(gates[0], n_qubits);
    for (std::size_t i = 1; i < gates.size(); ++i) {
        u = matmul(embed_gate(gates[i], n_qubits), u);
    }
    return u;
}

}  // namespace qbatt
