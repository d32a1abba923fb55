#pragma once

#include <span>
#include <vector>

#include "qbatt/matrix.hpp"

namespace qbatt {

/// One controlled gate: the Nth-root CNOT with the given control and
/// target qubit indices (0 = A, 1 = B, 2 = C). root = 1 is the full CNOT.
struct GateSpec {
    int control = 0;
    int target = 1;
    int root = 1;

    GateSpec() = default;
    GateSpec(int control_qubit, int target_qubit, int gate_root);
};

/// The s and p entries of the Nth-root block: s = (1 + e^{i pi/N})/2,
/// p = (1 - e^{i pi/N})/2. For root 1 they are exactly 0 and 1.
struct NrcgEntries {
    Complex s;
    Complex p;
};
NrcgEntries nrcg_entries(int root);

/// 4x4 Nth-root CNOT. control_first = true puts the control on the most
/// significant qubit (the CNOT_{A,B} layout); false gives CNOT_{B,A}.
ComplexMatrix nrcg_2q(bool control_first, int root);

/// Embed the gate into a 2- or 3-qubit register by basis enumeration:
/// basis states with the control bit clear are fixed, the [[s,p],[p,s]]
/// block acts on the target bit where the control bit is set.
ComplexMatrix embed_gate(const GateSpec& spec, int n_qubits);

/// Product of embedded gates applied in list order; the first listed
/// gate acts on the state first, so the result is U_k ... U_2 U_1.
ComplexMatrix iteration_unitary(std::span<const GateSpec> gates, int n_qubits);

}  // namespace qbatt
