#pragma once
#include <cmath>
#include <stdexcept>

#include "triwell/units.hpp"

namespace triwell {

// Kinetic energy conventions for the two-angle Hamiltonian.
//
// Euclidean form (volume element sin(theta) dtheta dphi):
//   T_E = -(1/2 I_th)(d2/dth2 + cot(th) d/dth) - (1/(2 I_ph sin^2 th)) d2/dph2
//
// Transformed form (volume element dtheta dphi), obtained by the similarity
// transform chi = sin^{1/2}(theta) psi, which removes the first-derivative
// term at the price of an extra potential:
//   T_W = -(1/2 I_th) d2/dth2 - (1/(2 I_ph sin^2 th)) d2/dph2 + v(theta)
//   v(theta) = -(1/(2 I_th)) (1/2 + cot^2(theta)/4)
//
// The propagator works exclusively in the transformed convention; the
// Euclidean form exists as an independent spectral route for validating the
// v(theta) formula (see euclidean_dvr_energies).
enum class KineticConvention { Transformed, Euclidean };

struct KineticSpec {
  double i_theta = 6160.0; // a.u.
  double i_phi = 4430.0;   // a.u.
  KineticConvention convention = KineticConvention::Transformed;
};

inline double extra_potential_v(double theta, const KineticSpec& kin) {
  if (!(theta > 0.0) || !(theta < units::pi))
    throw std::domain_error("extra_potential_v: theta must lie strictly in (0, pi)");
  double cot = std::cos(theta) / std::sin(theta);
  return -(0.5 + 0.25 * cot * cot) / (2.0 * kin.i_theta);
}

} // namespace triwell
