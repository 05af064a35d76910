#pragma once
#include <array>
#include <string>
#include <vector>

#include "triwell/propagation.hpp"

namespace triwell {

enum class SurfaceVariant { QcisdLike, Mp2Like };

// Three-well model surface in eV:
//   V = c0 + Vth(x) + A(th)(1 - cos phi) + B(th)(1 - cos 2phi),  x = cos th
//   Vth(x) = k1 (x-xp)^2 (x-xr)^2 - kt x + hb exp(-(x-xb)^2 / 2 sb^2)
//   B(th)  = -bp * sig((th_b - th)/wb)
//   A(th)  = ar * sig((th - th_a)/wa) + 4 cos(phi0) bp sig((th_b - th)/wb)
// The quartic in cos theta carves the reactant well and the product trough
// with a Gaussian bump for the isomerization saddle; the sigmoid-switched
// cosine series turns the phi double well on only on the product side, with
// the A-term compensation pinning the well minima at phi = +-phi0. Between
// the two saddles A + 4B changes sign, giving the valley-ridge inflexion.
struct PotentialParams {
  double k1 = 5.71;        // eV, quartic stiffness
  double x_p = 0.5817;     // product-well position in cos theta
  double x_r = -0.5885;    // reactant-well position in cos theta
  double k_tilt = 0.0;     // eV, linear tilt raising the reactant side
  double h_b = 0.89;       // eV, saddle bump height
  double x_b = 0.0;        // bump center in cos theta
  double s_b = 0.19;       // bump width in cos theta
  double a_r = 4.076;      // eV, phi single-well strength on the reactant side
  double theta_a = 1.55;   // switch-on center for a_r
  double w_a = 0.10;
  double b_p = 0.1775;     // eV, phi double-well strength on the product side
  double theta_b = 1.32;   // switch-on center for b_p
  double w_b = 0.12;
  double phi0_deg = 75.0;  // designed phi minimum
  double c0 = 0.0;         // eV, offset fixing V = 0 at the product minima

  std::vector<std::pair<std::string, double>> named() const;
  void set(const std::string& key, double value);
};

struct StationaryPoint {
  std::string name;        // "R", "TS1", "TS2", "P"
  double theta = 0, phi = 0;
  double energy_ev = 0;
  double grad_norm = 0;    // hartree/radian
  int index = 0;           // negative Hessian eigenvalues
  // mass-weighted normal modes in cm^-1; negative value marks the
  // imaginary mode of a saddle
  std::array<double, 2> freq_cm1{0, 0};
};

class PotentialSurface {
public:
  PotentialSurface() = default;
  static PotentialSurface with_params(const PotentialParams& p,
                                      SurfaceVariant v);
  // Frozen calibrated parameter sets (outputs of calibrate(), shipped as
  // defaults so scenarios run without refitting).
  static PotentialSurface qcisd_like();
  static PotentialSurface mp2_like();

  bool calibrated() const { return calibrated_; }
  SurfaceVariant variant() const { return variant_; }
  const PotentialParams& params() const { return p_; }

  double energy_ev(double theta, double phi) const;
  double energy(double theta, double phi) const; // hartree, throws uncalibrated
  // (dV/dtheta, dV/dphi) in eV/radian.
  std::array<double, 2> grad_ev(double theta, double phi) const;
  // Central-difference Hessian of the eV surface.
  std::array<double, 4> hessian_ev(double theta, double phi) const;

  PotentialFn as_fn() const; // hartree-valued sampler for plans

  // Damped Newton search for grad = 0 from a seed; throws on divergence.
  StationaryPoint find_stationary(const std::string& name, double theta0,
                                  double phi0) const;
  // Mass-weighted normal-mode analysis at a point (uses the kinetic metric
  // diag(I_theta, I_phi sin^2 theta)).
  std::array<double, 2> normal_modes_cm1(double theta, double phi,
                                         const KineticSpec& kin) const;
  // theta where the phi curvature A + 4B on the phi = 0 line changes sign.
  double vri_theta() const;

private:
  PotentialParams p_;
  SurfaceVariant variant_ = SurfaceVariant::QcisdLike;
  bool calibrated_ = false;
};

struct CalibrationTargets {
  double r_ev = 0.181, ts1_ev = 1.854, ts2_ev = 0.195;
  double splitting_ev = 4.3e-5;
  static CalibrationTargets for_variant(SurfaceVariant v);
};

struct CalibrationReport {
  SurfaceVariant variant = SurfaceVariant::QcisdLike;
  PotentialParams params;
  CalibrationTargets targets;
  std::vector<StationaryPoint> points; // R, TS1, TS2, P
  double splitting_ev = 0;
  double tunneling_period_ps = 0;
  double vri_theta = 0;
  std::array<double, 3> energy_residual_ev{0, 0, 0};
  bool converged = false;
  int simplex_evaluations = 0;
  std::string to_text() const;
};

struct CalibrateOptions {
  int n_theta = 64, n_phi = 48;   // eigensolve grid for the splitting
  int max_outer = 8;              // secant steps on x_p for the splitting
  int max_simplex_evals = 400;
  double energy_tol_ev = 1e-3;
  double splitting_factor = 2.0;
};

// Fits (k_tilt, h_b, b_p) by simplex to the stationary energies with c0
// re-pinned each evaluation, then tunes x_p by secant so the ground doublet
// splitting lands within the target factor; the splitting is computed with
// the imaginary-time eigensolver on the options grid.
std::pair<PotentialSurface, CalibrationReport> calibrate(
    SurfaceVariant variant, const CalibrateOptions& opts = {});

// Ground doublet splitting (hartree) of an arbitrary calibrated surface.
double ground_splitting(const PotentialSurface& s, int n_theta, int n_phi);

} // namespace triwell
