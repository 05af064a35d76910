#pragma once
#include <array>
#include <utility>
#include <vector>

#include "triwell/propagation.hpp"
#include "triwell/rwa.hpp"

namespace triwell {

// A pulse program together with its rotating-frame initial and intended
// final amplitude vectors over the model levels (targets are defined up to a
// global phase).
struct TransferScheme {
  PulseSequence pulses;
  std::vector<cplx> initial, target;
  double carrier = 0.0;
  double peak_rabi = 0.0;
};

// A pulse program meant to act as a unitary on a computational subset of the
// model levels.
struct GateScheme {
  PulseSequence pulses;
  std::vector<int> basis;    // model indices of the computational states
  std::vector<cplx> unitary; // intended map, row-major dim x dim
};

// Fractional transfer from the even doublet member into the superposition
// (|even> - eps |odd>)/sqrt(2) through an intermediate level: the leg to the
// odd state (y polarization) carries Gaussians at both centers while the even
// leg (x polarization) only joins at the late center, so the mixing angle
// rises from zero and freezes at arctan(eps). Both carriers sit midway
// between the doublet components. eps = +1 tips into the positive-phi well,
// eps = -1 into the negative one.
// width = 0 picks (duration - delay)/10 for transfers and
// (duration - 2 delay)/10 for gates.
TransferScheme build_fstirap(const FewLevelModel& m, int i_even, int i_odd,
                             int i_mid, double eps, double rabi,
                             double duration, double delay, double width = 0);

// Moves the localized superposition (|even> + eps |odd>)/sqrt(2) to its
// mirror image by letting the x-polarized envelope pass through zero and
// change sign between the two centers.
TransferScheme build_well_swap(const FewLevelModel& m, int i_even, int i_odd,
                               int i_mid, double eps, double rabi,
                               double duration, double delay,
                               double width = 0);

// Two sequential stimulated passages i_one -> i_mid -> i_one through i_top
// sharing the middle pulse; the first pulse carries the controllable phase.
// Intended map on {i_zero, i_one} is diag(1, exp(i phi)). With calibrate set,
// one rotating-frame trial run measures the residual dynamical phase of the
// roundtrip (quadratic in the field, independent of phi) and absorbs it into
// the first pulse, so gates for different phi still differ only there.
GateScheme build_phase_gate(const FewLevelModel& m, int i_zero, int i_one,
                            int i_mid, int i_top, double phi, double rabi,
                            double duration, double delay, double width = 0,
                            bool calibrate = true);

// Controlled flip of the parity qubit: a four-pulse tripod drive through
// i_top applies a pi phase to the bright combination of (i10, i11), swapping
// them, while i00 and i01 stay off resonance. Basis order {i00,i01,i10,i11}.
// calibrate works as in build_phase_gate, aligning the swapped block's phase
// with the surviving combination's dynamical phase.
GateScheme build_cnot(const FewLevelModel& m, int i00, int i01, int i10,
                      int i11, int i_mid, int i_top, double rabi,
                      double duration, double delay, double width = 0,
                      bool calibrate = true);

// Sudden-kick algebra on a tunneling doublet, in the {even, odd} basis.
// A half-cycle kick of pulse area A is exp(i A sigma_x); free evolution for
// time t advances the relative phase by splitting * t.
std::array<cplx, 4> hcp_kick(double area);
std::array<cplx, 4> doublet_free(double splitting, double t);
std::array<cplx, 4> compose2(const std::array<cplx, 4>& later,
                             const std::array<cplx, 4>& earlier);

struct ScanGrid {
  std::vector<double> rabi;  // log-spaced axis
  std::vector<double> delay; // linear axis
  std::vector<double> fidelity; // row-major rabi x delay, NaN on failure
  double best = 0.0;
  int best_i = -1, best_j = -1;
};

// Rotating-frame robustness map of the fractional transfer over peak Rabi
// coupling and pulse separation.
ScanGrid scan_fstirap(const FewLevelModel& m, int i_even, int i_odd, int i_mid,
                      double eps, double duration,
                      std::pair<double, double> rabi_range,
                      std::pair<double, double> delay_range, int n_rabi,
                      int n_delay, const RwaOptions& opts = {});

// Full-grid cross-check: sample the pulses, propagate the grid wavepacket,
// and project on the model states with their free phases removed.
double grid_transfer_fidelity(const TransferScheme& s,
                              const std::vector<EigenPair>& states,
                              const PropagationPlan& plan, double dt);

} // namespace triwell
