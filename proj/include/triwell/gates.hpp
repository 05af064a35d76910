#pragma once
#include <vector>

#include "triwell/wavefunction.hpp"

namespace triwell {

// Row-major dim x dim complex matrices over a computational basis.
using GateMatrix = std::vector<cplx>;

GateMatrix gate_identity(int dim);
GateMatrix gate_hadamard();         // 2 x 2
GateMatrix gate_phase(double phi);  // diag(1, e^{i phi})
GateMatrix gate_cnot();             // 4 x 4, control on the first qubit

// Normalized trace-overlap fidelity |tr(G^dag A)|^2 / dim^2. Equals 1 exactly
// when A = e^{i alpha} G and stays within [0, 1] for any pair of unitaries;
// identity against the controlled flip gives |2|^2/16 = 1/4.
double gate_fidelity(const GateMatrix& gate, const GateMatrix& achieved);

GateMatrix gate_multiply(const GateMatrix& a, const GateMatrix& b);

} // namespace triwell
