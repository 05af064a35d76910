#pragma once
#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

#include "triwell/units.hpp"

namespace triwell {

// Product grid for the two angles. theta nodes are the interior points of a
// Dirichlet sine grid on (0, pi): theta_i = (i+1) * pi/(n_theta+1), so the
// poles themselves are never sampled. phi is a uniform periodic grid on
// [-pi, pi). Quadrature is the plain rectangle rule with weight
// dtheta * dphi (volume element of the similarity-transformed convention).
struct AngularGrid {
  int n_theta = 0;
  int n_phi = 0;
  double dtheta = 0.0;
  double dphi = 0.0;
  std::vector<double> theta;
  std::vector<double> phi;
  std::vector<double> sin_theta;
  std::vector<double> inv_sin2_theta;

  static AngularGrid make(int n_theta, int n_phi) {
    if (n_theta < 8 || n_phi < 8)
      throw std::invalid_argument("AngularGrid: need n_theta, n_phi >= 8");
    if (n_phi % 2 != 0)
      throw std::invalid_argument("AngularGrid: n_phi must be even");
    AngularGrid g;
    g.n_theta = n_theta;
    g.n_phi = n_phi;
    g.dtheta = units::pi / (n_theta + 1);
    g.dphi = 2.0 * units::pi / n_phi;
    g.theta.resize(n_theta);
    g.sin_theta.resize(n_theta);
    g.inv_sin2_theta.resize(n_theta);
    for (int i = 0; i < n_theta; ++i) {
      g.theta[i] = (i + 1) * g.dtheta;
      g.sin_theta[i] = std::sin(g.theta[i]);
      g.inv_sin2_theta[i] = 1.0 / (g.sin_theta[i] * g.sin_theta[i]);
    }
    g.phi.resize(n_phi);
    for (int j = 0; j < n_phi; ++j) g.phi[j] = -units::pi + j * g.dphi;
    return g;
  }

  static std::shared_ptr<const AngularGrid> make_shared(int n_theta, int n_phi) {
    return std::make_shared<const AngularGrid>(make(n_theta, n_phi));
  }

  int size() const { return n_theta * n_phi; }
  double cell() const { return dtheta * dphi; }

  // Index of the node phi -> -phi under the periodic reflection.
  int reflect_phi(int j) const { return j == 0 ? 0 : n_phi - j; }

  bool same_shape(const AngularGrid& o) const {
    return n_theta == o.n_theta && n_phi == o.n_phi;
  }
};

} // namespace triwell
