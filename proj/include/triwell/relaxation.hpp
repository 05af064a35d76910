#pragma once
#include <utility>
#include <vector>

#include "triwell/labels.hpp"
#include "triwell/propagation.hpp"

namespace triwell {

struct RelaxOptions {
  int count = 8;            // eigenpairs requested, lowest by energy
  double residual_tol = 1e-7; // hartree, max ||H psi - E psi|| accepted
  int max_polish_rounds = 30;
  unsigned seed = 1234;
  // Imaginary-time schedule as (dtau, steps) stages, run per parity sector.
  std::vector<std::pair<double, int>> schedule = {
      {40.0, 250}, {10.0, 250}, {3.0, 200}, {1.0, 100}};
  double polish_dtau = 1.0;
  int polish_steps = 120;
  // Restrict to one phi-parity sector (+1, -1) or 0 for both.
  int sector = 0;
};

// Block imaginary-time relaxation with per-step orthonormalization, run
// separately in the even and odd phi-parity sectors, followed by a Ritz
// rotation in the relaxed span using the true Hamiltonian. States come back
// energy-sorted with residuals filled in; labels are not assigned here.
std::vector<EigenPair> relax_eigenstates(const PropagationPlan& plan,
                                         const RelaxOptions& opts = {});

struct LabelContext {
  // theta boundary between the double-well side (theta below) and the single
  // reactant well (theta above).
  double theta_split;
  // phi of the positive-side potential minimum in the double well, used to
  // orient superposition gauges.
  double phi_well;
};

// Classifies each state (well, parity, phi and theta quantum numbers) and
// fixes sign gauges: even states get a positive integral, each odd
// double-well state is phased so (even + odd)/sqrt(2) localizes at phi < 0.
void assign_labels(std::vector<EigenPair>& states, const LabelContext& ctx);

// Convenience: first state matching a label, throws if absent.
const EigenPair& find_state(const std::vector<EigenPair>& states,
                            const StateLabel& want);

} // namespace triwell
