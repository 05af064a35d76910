#pragma once
#include <array>
#include <cmath>

#include "triwell/units.hpp"

namespace triwell {

// Analytic two-component dipole model in atomic units.
//
//   mu_cs(theta)      = sum_k a_k cos^k(theta), k = 0..4
//   mu_x(theta, phi)  = mu_cs * [ f1 cos(phi) + f2 (0.25 cos^2(phi)
//                                 + 1.75 cos(phi) - 1) ]
//   mu_y(theta, phi)  = mu_cs * f3 sin(phi)
//
// with the switching profiles
//   f1 = 0.5 atan(-3 (theta - pi/2)) + 0.9
//   f2 = 0.5 atan(+3 (theta - pi/2)) + 0.9
//   f3 = 0.5 atan(+3 (theta - pi/2)) + 2.4
//
// mu_x is even and mu_y odd under phi -> -phi, so the x component couples
// equal phi-parities and the y component opposite parities.
struct DipoleSurface {
  std::array<double, 5> a{0.7, 1.1, 0.5, -1.0, -1.11};

  double mu_cs(double theta) const {
    double c = std::cos(theta);
    return a[0] + c * (a[1] + c * (a[2] + c * (a[3] + c * a[4])));
  }
  double f1(double theta) const {
    return 0.5 * std::atan(-3.0 * (theta - 0.5 * units::pi)) + 0.9;
  }
  double f2(double theta) const {
    return 0.5 * std::atan(3.0 * (theta - 0.5 * units::pi)) + 0.9;
  }
  double f3(double theta) const {
    return 0.5 * std::atan(3.0 * (theta - 0.5 * units::pi)) + 2.4;
  }

  double mu_x(double theta, double phi) const {
    double c = std::cos(phi);
    return mu_cs(theta) * (f1(theta) * c + f2(theta) * (0.25 * c * c + 1.75 * c - 1.0));
  }
  double mu_y(double theta, double phi) const {
    return mu_cs(theta) * f3(theta) * std::sin(phi);
  }
};

} // namespace triwell
