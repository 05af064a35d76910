#include "triwell/gates.hpp"

#include <cmath>
#include <stdexcept>

namespace triwell {

GateMatrix gate_identity(int dim) {
  GateMatrix g((size_t)dim * dim, cplx(0, 0));
  for (int i = 0; i < dim; ++i) g[(size_t)i * dim + i] = 1.0;
  return g;
}

GateMatrix gate_hadamard() {
  const double r = 1.0 / std::sqrt(2.0);
  return {r, r, r, -r};
}

GateMatrix gate_phase(double phi) {
  return {1.0, 0.0, 0.0, std::polar(1.0, phi)};
}

GateMatrix gate_cnot() {
  GateMatrix g(16, cplx(0, 0));
  g[0 * 4 + 0] = 1.0;
  g[1 * 4 + 1] = 1.0;
  g[2 * 4 + 3] = 1.0;
  g[3 * 4 + 2] = 1.0;
  return g;
}

double gate_fidelity(const GateMatrix& gate, const GateMatrix& achieved) {
  if (gate.size() != achieved.size() || gate.empty())
    throw std::invalid_argument("gate_fidelity: dimension mismatch");
  const int dim = (int)std::lround(std::sqrt((double)gate.size()));
  if ((size_t)dim * dim != gate.size())
    throw std::invalid_argument("gate_fidelity: matrices must be square");
  cplx tr = 0.0;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      tr += std::conj(gate[(size_t)j * dim + i]) * achieved[(size_t)j * dim + i];
  return std::norm(tr) / ((double)dim * dim);
}

GateMatrix gate_multiply(const GateMatrix& a, const GateMatrix& b) {
  const int dim = (int)std::lround(std::sqrt((double)a.size()));
  if (a.size() != b.size() || (size_t)dim * dim != a.size())
    throw std::invalid_argument("gate_multiply: dimension mismatch");
  GateMatrix r((size_t)dim * dim, cplx(0, 0));
  for (int i = 0; i < dim; ++i)
    for (int k = 0; k < dim; ++k) {
      const cplx aik = a[(size_t)i * dim + k];
      for (int j = 0; j < dim; ++j) r[(size_t)i * dim + j] += aik * b[(size_t)k * dim + j];
    }
  return r;
}

} // namespace triwell
