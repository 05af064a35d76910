#pragma once
#include <vector>

#include "triwell/dipole.hpp"
#include "triwell/labels.hpp"
#include "triwell/pulses.hpp"
#include "triwell/wavefunction.hpp"

namespace triwell {

// Truncated eigenstate model: level energies plus dense transition-dipole
// matrices for the two polarization components. Built either directly (for
// idealized few-level studies) or from grid eigenpairs.
struct FewLevelModel {
  std::vector<double> energies;      // hartree
  std::vector<double> mu_x, mu_y;    // n x n, row-major, a.u.
  std::vector<StateLabel> labels;    // optional, parallel to energies

  int n() const { return (int)energies.size(); }
  double mu(Axis a, int i, int j) const {
    return (a == Axis::X ? mu_x : mu_y)[(size_t)i * n() + j];
  }

  static FewLevelModel from_states(const std::vector<EigenPair>& states,
                                   const DipoleSurface& dip);

  // Envelope-ratio diagnostic for a three-level lambda scheme: the residual
  // direct coupling between the two lower levels relative to the driven leg.
  double lambda_leak_ratio(int lower_a, int lower_b, int upper) const;
};

struct RwaOptions {
  // Detunings below zero_cut (hartree) snap to exact resonance, reproducing
  // the idealized resonant scheme. Terms detuned beyond drop_cut rotate on
  // the carrier scale and are discarded, which is what defines the rotating
  // wave truncation; terms in between stay as oscillating couplings and
  // carry the leakage to background states.
  double zero_cut = 1e-5;
  double drop_cut = 1e-3;
  double max_step = 0.0; // a.u.; 0 picks a step from the Rabi/detuning scales
  int records = 256;
};

struct RwaResult {
  std::vector<cplx> amps;       // rotating-frame amplitudes at t_end
  std::vector<double> t;        // record times
  std::vector<std::vector<double>> pop; // populations at the record times
  int steps = 0;
  int terms_kept = 0, terms_dropped = 0;
};

// Rotating-frame propagation of the few-level model under a pulse sequence,
// keeping only co-rotating terms per (level pair, pulse). Fixed-step RK4.
RwaResult rwa_propagate(const FewLevelModel& m, const PulseSequence& seq,
                        std::vector<cplx> psi0, double t_begin, double t_end,
                        const RwaOptions& opts = {});

// |<a|b>|^2 for amplitude vectors (squared overlap, global phase dropped).
double overlap2(const std::vector<cplx>& a, const std::vector<cplx>& b);

} // namespace triwell
