#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "triwell/field.hpp"
#include "triwell/potential.hpp"
#include "triwell/propagation.hpp"
#include "triwell/wavefunction.hpp"

namespace triwell {

// Terminal-overlap steering problem: drive each initial state onto its paired
// target over [0, horizon] with one shared two-component field.
struct ControlProblem {
  std::vector<WaveFunction> initial;
  std::vector<WaveFunction> target;
  double horizon = 0.0;    // a.u. of time
  double alpha0 = 1.2;     // fluence penalty weight
  int max_iterations = 50;
  double gain_tol = 1e-6;  // objective gain counted as progress
  int gain_patience = 3;   // consecutive sub-tol gains before stopping
  std::optional<PolarizedField> zero_order;  // starting field (else zero)
  std::size_t memory_budget = std::size_t(1200) << 20;  // multiplier snapshots
};

struct OCTResult {
  PolarizedField field;           // optimized field, boundary samples
  std::vector<double> objective;  // mean terminal overlap, entry 0 = start
  std::vector<double> fidelity;   // gate trace fidelity per entry (gate mode)
  double final_yield = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Monotonic immediate-feedback iteration: sweep the multiplier backward under
// the previous field, then re-propagate forward applying
//   dE_j(t) = -(s(t)/alpha0) Im[<psi|chi><chi|mu_j|psi>],  s(t)=sin^2(pi t/T)
// at every step. Throws std::runtime_error if the objective ever decreases
// by more than 1e-10.
OCTResult oct_optimize(const ControlProblem& problem,
                       const PropagationPlan& plan);

// Same iteration with the update summed over all pairs. Requires an
// orthonormal initial set (checked to 1e-8) and reports per iteration the
// trace fidelity of the achieved map against the intended pairing.
OCTResult multitarget_oct(const ControlProblem& problem,
                          const PropagationPlan& plan);

struct LocalControlConfig {
  double lambda_x = 8.0;
  double lambda_y = 1.2;
};

struct LocalControlResult {
  PolarizedField field;
  double yield = 0.0;             // overlap with the target at the horizon
  std::vector<double> objective;  // tracked overlap at each recorded boundary
};

// Instantaneous feedback against the freely evolving target:
//   E_j(t) = -lambda_j Im[<psi|phi(t)><phi(t)|mu_j|psi>]
// with phi(t) the field-free evolution ending in the target at the horizon.
// The tracked overlap |<phi(t)|psi(t)>|^2 is non-decreasing by construction.
LocalControlResult local_control_field(const WaveFunction& initial,
                                       const WaveFunction& target,
                                       double horizon,
                                       const LocalControlConfig& config,
                                       const PropagationPlan& plan);

struct BifurcationOptions {
  double horizon = 186036.0;  // 4.5 ps
  double dt = 4.0;
  int n_theta = 32;
  int n_phi = 32;
  int max_iterations = 300;
  double zero_order_amp = 0.02;  // a.u., per component
  double alpha0 = 40.0;          // heavier penalty for the strong-field regime
  int record_stride = 100;
};

struct BifurcationResult {
  OCTResult oct;
  double omega_theta = 0.0;  // zero-order carriers, a.u. (bend / torsion)
  double omega_phi = 0.0;
  double ts1_ev = 0.0;       // isomerization saddle energy
  double reactant_energy = 0.0;  // initial <H0>, hartree
  // trajectory of the initial state under the final field
  std::vector<double> t;
  std::vector<double> theta_avg;
  std::vector<double> phi_avg;
  std::vector<double> energy;  // <H0>, hartree
  double yield = 0.0;
};

// Steers the reactant-well ground state into one branch of the post-VRI
// double well. Zero-order guess: cosine fields at the reactant well's two
// normal-mode frequencies under a sin^2 envelope.
BifurcationResult bifurcation_scenario(const PotentialSurface& surface,
                                       const BifurcationOptions& opts = {});

}  // namespace triwell
