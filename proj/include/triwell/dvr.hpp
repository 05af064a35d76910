#pragma once
#include <memory>
#include <vector>

#include "triwell/grid.hpp"
#include "triwell/kinetic.hpp"
#include "triwell/labels.hpp"
#include "triwell/propagation.hpp"

namespace triwell {

// Dense diagonalization on the propagation grid. The matrix is the exact
// dense form of the operator applied by apply_h0 (sine transform in theta,
// Fourier in phi, diagonal V + v), so eigenvectors double as reference
// states for the spectral code. Intended for small grids; sizes above
// 64 x 64 are rejected to keep the dense solve within memory.
std::vector<EigenPair> dvr_diagonalize(std::shared_ptr<const AngularGrid> grid,
                                       const KineticSpec& kin,
                                       const PotentialFn& potential,
                                       int count);

// Independent route in the untransformed convention: Gauss-Legendre nodes in
// cos(theta) with the exact l(l+1) kinetic spectrum, Fourier in phi, no
// extra potential term. Converges to the same spectrum as the transformed
// route; used to validate the similarity-transform bookkeeping.
std::vector<double> euclidean_dvr_energies(int n_theta, int n_phi,
                                           const KineticSpec& kin,
                                           const PotentialFn& potential,
                                           int count);

// Gauss-Legendre nodes and weights on (-1, 1), ascending nodes.
void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights);

} // namespace triwell
