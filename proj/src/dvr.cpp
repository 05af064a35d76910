#include "triwell/dvr.hpp"

#include <lapacke.h>

#include <cmath>
#include <stdexcept>

#include "triwell/units.hpp"

namespace triwell {

namespace {

constexpr std::size_t kDenseLimit = 4096;

// Lowest `count` eigenpairs of a symmetric matrix stored column-major (equal
// to row-major here by symmetry). Vectors are returned column-major in z.
void lowest_eigen(std::vector<double>& a, int n, int count, bool want_vectors,
                  std::vector<double>& w, std::vector<double>& z) {
  w.assign(n, 0.0);
  z.assign(want_vectors ? static_cast<std::size_t>(n) * count : 1, 0.0);
  std::vector<lapack_int> isuppz(2 * std::max(1, count));
  lapack_int m = 0;
  lapack_int info = LAPACKE_dsyevr(
      LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N', 'I', 'L', n, a.data(), n,
      0.0, 0.0, 1, count, 0.0, &m, w.data(), z.data(), n, isuppz.data());
  if (info != 0)
    throw std::runtime_error("dense eigensolve failed, info=" +
                             std::to_string(info));
  if (m < count)
    throw std::runtime_error("dense eigensolve returned too few eigenvalues");
}

} // namespace

void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Chebyshev-based initial guess, then Newton on P_n.
    double x = std::cos(units::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int l = 2; l <= n; ++l) {
        double p2 = ((2 * l - 1) * x * p1 - (l - 1) * p0) / l;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / pp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

std::vector<EigenPair> dvr_diagonalize(std::shared_ptr<const AngularGrid> grid,
                                       const KineticSpec& kin,
                                       const PotentialFn& potential,
                                       int count) {
  const std::size_t n = grid->size();
  if (n > kDenseLimit)
    throw std::runtime_error(
        "dvr_diagonalize: grid too large for the dense route, use 64 x 64 or "
        "smaller");
  if (count < 1 || static_cast<std::size_t>(count) > n)
    throw std::invalid_argument("dvr_diagonalize: bad count");
  int nt = grid->n_theta, np = grid->n_phi;

  // theta block: T = S diag(k^2 / 2 I_th) S^T with the orthonormal discrete
  // sine basis S_ik = sqrt(2/(nt+1)) sin((k+1) theta_i).
  std::vector<double> tth(static_cast<std::size_t>(nt) * nt, 0.0);
  for (int i = 0; i < nt; ++i)
    for (int ip = 0; ip <= i; ++ip) {
      double s = 0.0;
      for (int k = 0; k < nt; ++k) {
        double kk = k + 1.0;
        s += std::sin(kk * grid->theta[i]) * std::sin(kk * grid->theta[ip]) *
             kk * kk;
      }
      s *= (2.0 / (nt + 1)) / (2.0 * kin.i_theta);
      tth[static_cast<std::size_t>(i) * nt + ip] = s;
      tth[static_cast<std::size_t>(ip) * nt + i] = s;
    }

  // phi block: circulant second-derivative spectrum, C_{j j'} =
  // (1/np) sum_m m^2 cos(m (phi_j - phi_j')) / (2 I_ph).
  std::vector<double> tph(static_cast<std::size_t>(np) * np, 0.0);
  for (int d = 0; d < np; ++d) {
    double s = 0.0;
    for (int j = 0; j < np; ++j) {
      int m = j <= np / 2 ? j : j - np;
      s += m * m * std::cos(m * d * grid->dphi);
    }
    tph[d] = s / np / (2.0 * kin.i_phi);
  }

  std::vector<double> h(n * n, 0.0);
  for (int i = 0; i < nt; ++i)
    for (int j = 0; j < np; ++j) {
      std::size_t r = static_cast<std::size_t>(i) * np + j;
      for (int ip = 0; ip < nt; ++ip)
        h[r * n + static_cast<std::size_t>(ip) * np + j] +=
            tth[static_cast<std::size_t>(i) * nt + ip];
      double inv2 = grid->inv_sin2_theta[i];
      for (int jp = 0; jp < np; ++jp) {
        int d = std::abs(j - jp);
        h[r * n + static_cast<std::size_t>(i) * np + jp] +=
            inv2 * tph[std::min(d, np - d)];
      }
      h[r * n + r] += potential(grid->theta[i], grid->phi[j]) +
                      extra_potential_v(grid->theta[i], kin);
    }

  std::vector<double> w, z;
  lowest_eigen(h, static_cast<int>(n), count, true, w, z);

  std::vector<EigenPair> out(count);
  double cell_root = std::sqrt(grid->cell());
  for (int k = 0; k < count; ++k) {
    out[k].energy = w[k];
    out[k].state = WaveFunction(grid);
    for (std::size_t i = 0; i < n; ++i)
      out[k].state.amp[i] = z[static_cast<std::size_t>(k) * n + i] / cell_root;
    out[k].state.normalize();
  }
  return out;
}

std::vector<double> euclidean_dvr_energies(int n_theta, int n_phi,
                                           const KineticSpec& kin,
                                           const PotentialFn& potential,
                                           int count) {
  const std::size_t n = static_cast<std::size_t>(n_theta) * n_phi;
  if (n > kDenseLimit)
    throw std::runtime_error(
        "euclidean_dvr_energies: grid too large for the dense route");
  std::vector<double> x, wq;
  gauss_legendre(n_theta, x, wq);

  // Normalized Legendre values at the nodes: U_{l q} = sqrt(w_q (2l+1)/2)
  // P_l(x_q); U is orthogonal, and the theta kinetic matrix in the node
  // basis is U^T diag(l(l+1)/2 I_th) U.
  std::vector<double> u(static_cast<std::size_t>(n_theta) * n_theta);
  for (int q = 0; q < n_theta; ++q) {
    double p0 = 1.0, p1 = x[q];
    u[q] = std::sqrt(wq[q] * 0.5);
    if (n_theta > 1) u[static_cast<std::size_t>(n_theta) + q] =
        std::sqrt(wq[q] * 1.5) * p1;
    for (int l = 2; l < n_theta; ++l) {
      double p2 = ((2 * l - 1) * x[q] * p1 - (l - 1) * p0) / l;
      p0 = p1;
      p1 = p2;
      u[static_cast<std::size_t>(l) * n_theta + q] =
          std::sqrt(wq[q] * (2 * l + 1) * 0.5) * p2;
    }
  }
  std::vector<double> tth(static_cast<std::size_t>(n_theta) * n_theta, 0.0);
  for (int q = 0; q < n_theta; ++q)
    for (int qp = 0; qp <= q; ++qp) {
      double s = 0.0;
      for (int l = 0; l < n_theta; ++l)
        s += u[static_cast<std::size_t>(l) * n_theta + q] *
             u[static_cast<std::size_t>(l) * n_theta + qp] * l * (l + 1.0);
      s /= 2.0 * kin.i_theta;
      tth[static_cast<std::size_t>(q) * n_theta + qp] = s;
      tth[static_cast<std::size_t>(qp) * n_theta + q] = s;
    }

  std::vector<double> tph(static_cast<std::size_t>(n_phi) * n_phi, 0.0);
  double dphi = 2.0 * units::pi / n_phi;
  for (int d = 0; d < n_phi; ++d) {
    double s = 0.0;
    for (int j = 0; j < n_phi; ++j) {
      int m = j <= n_phi / 2 ? j : j - n_phi;
      s += m * m * std::cos(m * d * dphi);
    }
    tph[d] = s / n_phi / (2.0 * kin.i_phi);
  }

  std::vector<double> h(n * n, 0.0);
  for (int q = 0; q < n_theta; ++q) {
    double theta_q = std::acos(x[q]);
    double inv2 = 1.0 / (1.0 - x[q] * x[q]);
    for (int j = 0; j < n_phi; ++j) {
      std::size_t r = static_cast<std::size_t>(q) * n_phi + j;
      for (int qp = 0; qp < n_theta; ++qp)
        h[r * n + static_cast<std::size_t>(qp) * n_phi + j] +=
            tth[static_cast<std::size_t>(q) * n_theta + qp];
      for (int jp = 0; jp < n_phi; ++jp) {
        int d = std::abs(j - jp);
        h[r * n + static_cast<std::size_t>(q) * n_phi + jp] +=
            inv2 * tph[std::min(d, n_phi - d)];
      }
      h[r * n + r] += potential(theta_q, 2.0 * units::pi * j / n_phi - units::pi);
    }
  }

  std::vector<double> w, z;
  lowest_eigen(h, static_cast<int>(n), count, false, w, z);
  w.resize(count);
  return w;
}

} // namespace triwell
