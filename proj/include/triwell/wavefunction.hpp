#pragma once
#include <complex>
#include <memory>
#include <vector>

#include "triwell/grid.hpp"

namespace triwell {

using cplx = std::complex<double>;

// Complex amplitudes on an AngularGrid, stored row-major (theta outer,
// phi inner). The squared norm is sum |a|^2 * dtheta * dphi; no sin(theta)
// weight appears anywhere because the kinetic operator already absorbs the
// measure through the similarity transform.
struct WaveFunction {
  std::shared_ptr<const AngularGrid> grid;
  std::vector<cplx> amp;

  WaveFunction() = default;
  explicit WaveFunction(std::shared_ptr<const AngularGrid> g)
      : grid(std::move(g)), amp(grid->size(), cplx(0.0, 0.0)) {}

  cplx& at(int i_theta, int j_phi) { return amp[(size_t)i_theta * grid->n_phi + j_phi]; }
  const cplx& at(int i_theta, int j_phi) const {
    return amp[(size_t)i_theta * grid->n_phi + j_phi];
  }

  double norm2() const;
  double norm() const;
  void normalize();
  void scale(cplx c);
};

// <a|b> with the rectangle-rule weight; conjugate-linear in the first slot.
cplx inner_product(const WaveFunction& a, const WaveFunction& b);

// Pointwise linear combination sum_k coeff_k * state_k.
WaveFunction superpose(const std::vector<cplx>& coeffs,
                       const std::vector<const WaveFunction*>& states);

// Expectation value of a grid-diagonal observable. Warns when psi is not
// normalized within 1e-6.
double expectation(const WaveFunction& psi, const std::vector<double>& diagonal);
double expectation_theta(const WaveFunction& psi);
double expectation_phi(const WaveFunction& psi);

// <a| diag |b> for a grid-diagonal operator.
cplx matrix_element(const WaveFunction& a, const std::vector<double>& diagonal,
                    const WaveFunction& b);

struct Populations {
  std::vector<double> p;
  double residual = 0.0; // 1 - sum(p); may be slightly negative (>= -1e-8)
};
Populations project_populations(const WaveFunction& psi,
                                const std::vector<const WaveFunction*>& basis);

// psi(theta, phi) -> psi(theta, -phi) on the periodic phi grid.
WaveFunction reflect_phi(const WaveFunction& psi);
// Projector onto the even (s=+1) or odd (s=-1) phi-parity sector.
void parity_project(WaveFunction& psi, int s);

// Normalized Gaussian packet sampled on the grid, with optional plane-wave
// momentum factors. Used as relaxation seed and in tests.
WaveFunction make_gaussian(std::shared_ptr<const AngularGrid> grid, double theta0,
                           double phi0, double sigma_theta, double sigma_phi,
                           double k_theta = 0.0, double k_phi = 0.0);

} // namespace triwell
