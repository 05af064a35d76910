#pragma once
#include <functional>
#include <memory>
#include <vector>

#include "triwell/dipole.hpp"
#include "triwell/field.hpp"
#include "triwell/grid.hpp"
#include "triwell/kinetic.hpp"
#include "triwell/time_grid.hpp"
#include "triwell/wavefunction.hpp"

namespace triwell {

// FFTW-backed spectral transforms on the (theta, phi) grid. Theta uses the
// odd sine transform consistent with Dirichlet walls at 0 and pi; phi uses
// the periodic Fourier transform. Transforms are unnormalized; callers fold
// the round-trip factors into their multiplier tables.
class SpectralKernel {
public:
  explicit SpectralKernel(std::shared_ptr<const AngularGrid> g);
  ~SpectralKernel();
  SpectralKernel(const SpectralKernel&) = delete;
  SpectralKernel& operator=(const SpectralKernel&) = delete;

  // In-place DST-I along theta on both real and imaginary parts.
  // Round trip scales data by 2 (n_theta + 1).
  void dst_theta(cplx* data) const;
  // In-place complex FFT along phi for every theta row. sign -1 is the
  // forward transform; round trip scales by n_phi.
  void fft_phi(cplx* data, int sign) const;

  double dst_round_trip() const;
  const AngularGrid& grid() const { return *grid_; }

private:
  std::shared_ptr<const AngularGrid> grid_;
  void* plan_dst_ = nullptr;
  void* plan_fwd_ = nullptr;
  void* plan_bwd_ = nullptr;
};

using PotentialFn = std::function<double(double, double)>;

// Precomputed tables for split-operator stepping at a fixed dt. The phase
// tables absorb the transform normalizations so a step is five multiplier
// passes interleaved with the transforms.
struct PropagationPlan {
  std::shared_ptr<const AngularGrid> grid;
  KineticSpec kinetic;
  double dt = 0.0;

  std::vector<double> v_static;         // V + v(theta) on the grid, hartree
  std::vector<double> mu_x, mu_y;       // dipole components on the grid
  std::vector<cplx> theta_half_fwd;     // exp(-i T_k dt/2) / (2(n_theta+1))
  std::vector<cplx> theta_half_bwd;
  std::vector<cplx> phi_full_fwd;       // exp(-i T_{i,m} dt) / n_phi
  std::vector<cplx> phi_full_bwd;
  std::vector<cplx> w_static_half_fwd;  // exp(-i (V+v) dt/2)
  std::vector<cplx> w_static_half_bwd;

  std::vector<double> theta_kin;        // (k+1)^2 / (2 I_theta)
  std::vector<double> phi_kin_row;      // m^2 / (2 I_phi), m indexed by j

  std::shared_ptr<SpectralKernel> kernel;
  mutable std::vector<cplx> scratch;

  bool stability_warning = false;
  double stability_metric = 0.0;

  double v_at(std::size_t idx) const { return v_static[idx]; }
};

PropagationPlan make_plan(std::shared_ptr<const AngularGrid> grid,
                          const KineticSpec& kin, double dt,
                          const PotentialFn& potential,
                          const DipoleSurface* dipole = nullptr,
                          bool strict_stability = false);

PropagationPlan make_plan(std::shared_ptr<const AngularGrid> grid,
                          const KineticSpec& kin, double dt,
                          std::vector<double> potential_samples,
                          const DipoleSurface* dipole = nullptr,
                          bool strict_stability = false);

// H0 psi = (T + V + v) psi via the spectral representation.
WaveFunction apply_h0(const WaveFunction& psi, const PropagationPlan& plan);

double energy_expectation(const WaveFunction& psi, const PropagationPlan& plan);

enum class StepDirection { Forward, Backward };

// One Strang step with the field held at the given midpoint values.
void step(WaveFunction& psi, double ex_mid, double ey_mid,
          const PropagationPlan& plan,
          StepDirection dir = StepDirection::Forward);

struct TrajectoryOptions {
  int record_stride = 100;
  bool record_energy = true;
  // Optional orthonormal analysis states; populations |<b_k|psi>|^2 are
  // recorded at each sampled time.
  std::vector<const WaveFunction*> basis;
  // Optional per-record callback, called with (record index, boundary step
  // index, state). Used for snapshot dumps.
  std::function<void(int, int, const WaveFunction&)> on_record;
};

struct Trajectory {
  std::vector<double> t;
  std::vector<double> norm;
  std::vector<double> energy;
  std::vector<double> theta_avg;
  std::vector<double> phi_avg;
  std::vector<double> ex, ey;
  std::vector<std::vector<double>> populations; // [record][basis index]
  WaveFunction final_state;
  double max_norm_drift = 0.0;
};

Trajectory propagate(const WaveFunction& psi0, const PolarizedField& field,
                     const PropagationPlan& plan,
                     const TrajectoryOptions& opts = {});

} // namespace triwell
