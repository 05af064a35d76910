#include "triwell/wavefunction.hpp"

#include <cmath>
#include <stdexcept>

#include "triwell/log.hpp"

namespace triwell {

double WaveFunction::norm2() const {
  long double s = 0.0L;
  for (const auto& z : amp) s += (long double)std::norm(z);
  return (double)(s * grid->cell());
}

double WaveFunction::norm() const { return std::sqrt(norm2()); }

void WaveFunction::normalize() {
  double n = norm();
  if (n == 0.0) throw std::runtime_error("WaveFunction::normalize: zero state");
  double inv = 1.0 / n;
  for (auto& z : amp) z *= inv;
}

void WaveFunction::scale(cplx c) {
  for (auto& z : amp) z *= c;
}

cplx inner_product(const WaveFunction& a, const WaveFunction& b) {
  if (!a.grid || !b.grid || !a.grid->same_shape(*b.grid))
    throw std::invalid_argument("inner_product: mismatched grids");
  std::complex<long double> s(0.0L, 0.0L);
  for (size_t i = 0; i < a.amp.size(); ++i)
    s += std::complex<long double>(std::conj(a.amp[i]) * b.amp[i]);
  s *= (long double)a.grid->cell();
  return cplx((double)s.real(), (double)s.imag());
}

WaveFunction superpose(const std::vector<cplx>& coeffs,
                       const std::vector<const WaveFunction*>& states) {
  if (coeffs.empty() || coeffs.size() != states.size())
    throw std::invalid_argument("superpose: empty or mismatched inputs");
  for (const auto* s : states)
    if (!s || !s->grid || !s->grid->same_shape(*states[0]->grid))
      throw std::invalid_argument("superpose: mismatched grids");
  WaveFunction out(states[0]->grid);
  for (size_t k = 0; k < coeffs.size(); ++k) {
    const auto& src = states[k]->amp;
    for (size_t i = 0; i < out.amp.size(); ++i) out.amp[i] += coeffs[k] * src[i];
  }
  return out;
}

double expectation(const WaveFunction& psi, const std::vector<double>& diagonal) {
  if (diagonal.size() != psi.amp.size())
    throw std::invalid_argument("expectation: observable size mismatch");
  double n2 = psi.norm2();
  if (std::abs(n2 - 1.0) > 1e-6)
    logsink::warn("expectation: state norm^2 deviates from 1 by " +
                  std::to_string(n2 - 1.0));
  long double s = 0.0L;
  for (size_t i = 0; i < psi.amp.size(); ++i)
    s += (long double)(std::norm(psi.amp[i]) * diagonal[i]);
  return (double)(s * psi.grid->cell() / n2);
}

cplx matrix_element(const WaveFunction& a, const std::vector<double>& diagonal,
                    const WaveFunction& b) {
  if (!a.grid->same_shape(*b.grid) || diagonal.size() != a.amp.size())
    throw std::invalid_argument("matrix_element: shape mismatch");
  std::complex<long double> s(0.0L, 0.0L);
  for (size_t i = 0; i < a.amp.size(); ++i) {
    cplx t = std::conj(a.amp[i]) * b.amp[i] * diagonal[i];
    s += std::complex<long double>(t.real(), t.imag());
  }
  return cplx((double)s.real(), (double)s.imag()) * a.grid->cell();
}

double expectation_theta(const WaveFunction& psi) {
  const auto& g = *psi.grid;
  std::vector<double> th(g.size());
  for (int i = 0; i < g.n_theta; ++i)
    for (int j = 0; j < g.n_phi; ++j) th[(size_t)i * g.n_phi + j] = g.theta[i];
  return expectation(psi, th);
}

double expectation_phi(const WaveFunction& psi) {
  const auto& g = *psi.grid;
  std::vector<double> ph(g.size());
  for (int i = 0; i < g.n_theta; ++i)
    for (int j = 0; j < g.n_phi; ++j) ph[(size_t)i * g.n_phi + j] = g.phi[j];
  return expectation(psi, ph);
}

Populations project_populations(const WaveFunction& psi,
                                const std::vector<const WaveFunction*>& basis) {
  Populations out;
  out.p.reserve(basis.size());
  long double total = 0.0L;
  for (const auto* b : basis) {
    double pk = std::norm(inner_product(*b, psi));
    out.p.push_back(pk);
    total += pk;
  }
  out.residual = (double)(psi.norm2() - total);
  if (out.residual < -1e-8)
    logsink::warn("project_populations: residual " + std::to_string(out.residual) +
                  " below -1e-8; basis is not orthonormal?");
  return out;
}

WaveFunction reflect_phi(const WaveFunction& psi) {
  const auto& g = *psi.grid;
  WaveFunction out(psi.grid);
  for (int i = 0; i < g.n_theta; ++i)
    for (int j = 0; j < g.n_phi; ++j) out.at(i, g.reflect_phi(j)) = psi.at(i, j);
  return out;
}

void parity_project(WaveFunction& psi, int s) {
  if (s != 1 && s != -1) throw std::invalid_argument("parity_project: s must be +-1");
  WaveFunction r = reflect_phi(psi);
  for (size_t i = 0; i < psi.amp.size(); ++i)
    psi.amp[i] = 0.5 * (psi.amp[i] + (double)s * r.amp[i]);
}

WaveFunction make_gaussian(std::shared_ptr<const AngularGrid> grid, double theta0,
                           double phi0, double sigma_theta, double sigma_phi,
                           double k_theta, double k_phi) {
  WaveFunction psi(std::move(grid));
  const auto& g = *psi.grid;
  for (int i = 0; i < g.n_theta; ++i) {
    double dth = g.theta[i] - theta0;
    for (int j = 0; j < g.n_phi; ++j) {
      // shortest periodic distance in phi
      double dph = std::remainder(g.phi[j] - phi0, 2.0 * units::pi);
      double envelope = std::exp(-dth * dth / (2.0 * sigma_theta * sigma_theta) -
                                 dph * dph / (2.0 * sigma_phi * sigma_phi));
      double phase = k_theta * dth + k_phi * dph;
      psi.at(i, j) = envelope * cplx(std::cos(phase), std::sin(phase));
    }
  }
  psi.normalize();
  return psi;
}

} // namespace triwell
