#include "triwell/propagation.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <sstream>
#include <stdexcept>

#include "triwell/log.hpp"

namespace triwell {

SpectralKernel::SpectralKernel(std::shared_ptr<const AngularGrid> g)
    : grid_(std::move(g)) {
  int nt = grid_->n_theta, np = grid_->n_phi;
  std::vector<cplx> buf(static_cast<std::size_t>(nt) * np);
  auto* raw = reinterpret_cast<double*>(buf.data());
  auto* craw = reinterpret_cast<fftw_complex*>(buf.data());

  // One batched DST-I covers the real and imaginary parts of every phi
  // column: 2 n_phi transforms of length n_theta, unit distance between
  // batch members, stride 2 n_phi between theta samples.
  fftw_r2r_kind kind = FFTW_RODFT00;
  plan_dst_ = fftw_plan_many_r2r(1, &nt, 2 * np, raw, nullptr, 2 * np, 1, raw,
                                 nullptr, 2 * np, 1, &kind,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
  plan_fwd_ = fftw_plan_many_dft(1, &np, nt, craw, nullptr, 1, np, craw,
                                 nullptr, 1, np, FFTW_FORWARD,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
  plan_bwd_ = fftw_plan_many_dft(1, &np, nt, craw, nullptr, 1, np, craw,
                                 nullptr, 1, np, FFTW_BACKWARD,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!plan_dst_ || !plan_fwd_ || !plan_bwd_)
    throw std::runtime_error("SpectralKernel: fftw plan creation failed");
}

SpectralKernel::~SpectralKernel() {
  if (plan_dst_) fftw_destroy_plan(static_cast<fftw_plan>(plan_dst_));
  if (plan_fwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  if (plan_bwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
}

void SpectralKernel::dst_theta(cplx* data) const {
  auto* raw = reinterpret_cast<double*>(data);
  fftw_execute_r2r(static_cast<fftw_plan>(plan_dst_), raw, raw);
}

void SpectralKernel::fft_phi(cplx* data, int sign) const {
  auto* craw = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(
      static_cast<fftw_plan>(sign == FFTW_FORWARD ? plan_fwd_ : plan_bwd_),
      craw, craw);
}

double SpectralKernel::dst_round_trip() const {
  return 2.0 * (grid_->n_theta + 1);
}

namespace {

int phi_wavenumber(int j, int n_phi) { return j <= n_phi / 2 ? j : j - n_phi; }

void fill_tables(PropagationPlan& p) {
  const auto& g = *p.grid;
  int nt = g.n_theta, np = g.n_phi;
  double dt = p.dt;

  p.theta_kin.resize(nt);
  for (int k = 0; k < nt; ++k) {
    double kk = k + 1.0; // sine wavenumber
    p.theta_kin[k] = kk * kk / (2.0 * p.kinetic.i_theta);
  }
  p.phi_kin_row.resize(np);
  for (int j = 0; j < np; ++j) {
    double m = phi_wavenumber(j, np);
    p.phi_kin_row[j] = m * m / (2.0 * p.kinetic.i_phi);
  }

  double dst_norm = 1.0 / (2.0 * (nt + 1));
  p.theta_half_fwd.resize(nt);
  p.theta_half_bwd.resize(nt);
  for (int k = 0; k < nt; ++k) {
    p.theta_half_fwd[k] = std::polar(dst_norm, -p.theta_kin[k] * dt * 0.5);
    p.theta_half_bwd[k] = std::polar(dst_norm, p.theta_kin[k] * dt * 0.5);
  }

  p.phi_full_fwd.resize(static_cast<std::size_t>(nt) * np);
  p.phi_full_bwd.resize(p.phi_full_fwd.size());
  double fft_norm = 1.0 / np;
  for (int i = 0; i < nt; ++i) {
    double inv2 = g.inv_sin2_theta[i];
    for (int j = 0; j < np; ++j) {
      double w = p.phi_kin_row[j] * inv2 * dt;
      p.phi_full_fwd[static_cast<std::size_t>(i) * np + j] =
          std::polar(fft_norm, -w);
      p.phi_full_bwd[static_cast<std::size_t>(i) * np + j] =
          std::polar(fft_norm, w);
    }
  }

  p.w_static_half_fwd.resize(p.v_static.size());
  p.w_static_half_bwd.resize(p.v_static.size());
  for (std::size_t i = 0; i < p.v_static.size(); ++i) {
    p.w_static_half_fwd[i] = std::polar(1.0, -p.v_static[i] * dt * 0.5);
    p.w_static_half_bwd[i] = std::polar(1.0, p.v_static[i] * dt * 0.5);
  }
}

void stability_check(PropagationPlan& p, bool strict) {
  double vmax = 0.0;
  for (double v : p.v_static) vmax = std::max(vmax, std::fabs(v));
  double tmax = p.theta_kin.back() + p.phi_kin_row[p.grid->n_phi / 2];
  p.stability_metric = p.dt * (vmax + tmax);
  if (p.stability_metric >= 0.5) {
    std::ostringstream os;
    os << "split-operator phase metric dt*(max|W| + T_max) = "
       << p.stability_metric
       << " >= 0.5; spectral phases wrap within a step, rely on convergence "
          "tests for this dt";
    if (strict) throw std::runtime_error("make_plan: " + os.str());
    p.stability_warning = true;
    logsink::warn("make_plan: " + os.str());
  }
}

} // namespace

PropagationPlan make_plan(std::shared_ptr<const AngularGrid> grid,
                          const KineticSpec& kin, double dt,
                          const PotentialFn& potential,
                          const DipoleSurface* dipole, bool strict_stability) {
  std::vector<double> v(grid->size());
  for (int i = 0; i < grid->n_theta; ++i)
    for (int j = 0; j < grid->n_phi; ++j)
      v[static_cast<std::size_t>(i) * grid->n_phi + j] =
          potential(grid->theta[i], grid->phi[j]);
  return make_plan(std::move(grid), kin, dt, std::move(v), dipole,
                   strict_stability);
}

PropagationPlan make_plan(std::shared_ptr<const AngularGrid> grid,
                          const KineticSpec& kin, double dt,
                          std::vector<double> potential_samples,
                          const DipoleSurface* dipole, bool strict_stability) {
  if (kin.convention != KineticConvention::Transformed)
    throw std::invalid_argument(
        "make_plan: the grid propagator requires the transformed convention");
  if (potential_samples.size() != grid->size())
    throw std::invalid_argument("make_plan: potential sample size mismatch");
  if (!(dt > 0.0)) throw std::invalid_argument("make_plan: dt must be > 0");

  PropagationPlan p;
  p.grid = grid;
  p.kinetic = kin;
  p.dt = dt;
  p.v_static = std::move(potential_samples);
  for (int i = 0; i < grid->n_theta; ++i) {
    double ve = extra_potential_v(grid->theta[i], kin);
    for (int j = 0; j < grid->n_phi; ++j)
      p.v_static[static_cast<std::size_t>(i) * grid->n_phi + j] += ve;
  }

  p.mu_x.assign(grid->size(), 0.0);
  p.mu_y.assign(grid->size(), 0.0);
  if (dipole) {
    for (int i = 0; i < grid->n_theta; ++i)
      for (int j = 0; j < grid->n_phi; ++j) {
        std::size_t idx = static_cast<std::size_t>(i) * grid->n_phi + j;
        p.mu_x[idx] = dipole->mu_x(grid->theta[i], grid->phi[j]);
        p.mu_y[idx] = dipole->mu_y(grid->theta[i], grid->phi[j]);
      }
  }

  fill_tables(p);
  p.kernel = std::make_shared<SpectralKernel>(grid);
  p.scratch.resize(grid->size());
  stability_check(p, strict_stability);
  return p;
}

namespace {

void check_plan_psi(const WaveFunction& psi, const PropagationPlan& plan) {
  if (!psi.grid || !plan.grid || !psi.grid->same_shape(*plan.grid))
    throw std::invalid_argument("propagation: wavefunction/plan grid mismatch");
}

// Applies the kinetic sandwich exp(-i T_th dt/2) exp(-i T_ph dt) exp(-i T_th
// dt/2) between the two potential half steps, with transform normalizations
// folded into the tables.
void kinetic_sandwich(std::vector<cplx>& a, const PropagationPlan& plan,
                      StepDirection dir) {
  const auto& g = *plan.grid;
  int nt = g.n_theta, np = g.n_phi;
  const auto& th =
      dir == StepDirection::Forward ? plan.theta_half_fwd : plan.theta_half_bwd;
  const auto& ph =
      dir == StepDirection::Forward ? plan.phi_full_fwd : plan.phi_full_bwd;

  plan.kernel->dst_theta(a.data());
  for (int k = 0; k < nt; ++k) {
    cplx f = th[k];
    cplx* row = a.data() + static_cast<std::size_t>(k) * np;
    for (int j = 0; j < np; ++j) row[j] *= f;
  }
  plan.kernel->dst_theta(a.data());

  plan.kernel->fft_phi(a.data(), -1);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] *= ph[i];
  plan.kernel->fft_phi(a.data(), +1);

  plan.kernel->dst_theta(a.data());
  for (int k = 0; k < nt; ++k) {
    cplx f = th[k];
    cplx* row = a.data() + static_cast<std::size_t>(k) * np;
    for (int j = 0; j < np; ++j) row[j] *= f;
  }
  plan.kernel->dst_theta(a.data());
}

void apply_w_half(std::vector<cplx>& a, const PropagationPlan& plan,
                  double ex, double ey, StepDirection dir) {
  double sgn = dir == StepDirection::Forward ? 1.0 : -1.0;
  if (std::fabs(ex) < 1e-300 && std::fabs(ey) < 1e-300) {
    const auto& tab = dir == StepDirection::Forward ? plan.w_static_half_fwd
                                                    : plan.w_static_half_bwd;
    for (std::size_t i = 0; i < a.size(); ++i) a[i] *= tab[i];
    return;
  }
  double h = 0.5 * plan.dt * sgn;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double w = plan.v_static[i] - plan.mu_x[i] * ex - plan.mu_y[i] * ey;
    a[i] *= std::polar(1.0, -w * h);
  }
}

} // namespace

void step(WaveFunction& psi, double ex_mid, double ey_mid,
          const PropagationPlan& plan, StepDirection dir) {
  check_plan_psi(psi, plan);
  apply_w_half(psi.amp, plan, ex_mid, ey_mid, dir);
  kinetic_sandwich(psi.amp, plan, dir);
  apply_w_half(psi.amp, plan, ex_mid, ey_mid, dir);
}

WaveFunction apply_h0(const WaveFunction& psi, const PropagationPlan& plan) {
  check_plan_psi(psi, plan);
  const auto& g = *plan.grid;
  int nt = g.n_theta, np = g.n_phi;
  WaveFunction out(psi.grid);
  auto& s = plan.scratch;

  // theta kinetic term
  s = psi.amp;
  plan.kernel->dst_theta(s.data());
  double dst_norm = 1.0 / (2.0 * (nt + 1));
  for (int k = 0; k < nt; ++k) {
    double f = plan.theta_kin[k] * dst_norm;
    cplx* row = s.data() + static_cast<std::size_t>(k) * np;
    for (int j = 0; j < np; ++j) row[j] *= f;
  }
  plan.kernel->dst_theta(s.data());
  for (std::size_t i = 0; i < s.size(); ++i) out.amp[i] = s[i];

  // phi kinetic term
  s = psi.amp;
  plan.kernel->fft_phi(s.data(), -1);
  double fft_norm = 1.0 / np;
  for (int i = 0; i < nt; ++i) {
    double inv2 = g.inv_sin2_theta[i] * fft_norm;
    cplx* row = s.data() + static_cast<std::size_t>(i) * np;
    for (int j = 0; j < np; ++j) row[j] *= plan.phi_kin_row[j] * inv2;
  }
  plan.kernel->fft_phi(s.data(), +1);
  for (std::size_t i = 0; i < s.size(); ++i)
    out.amp[i] += s[i] + plan.v_static[i] * psi.amp[i];
  return out;
}

double energy_expectation(const WaveFunction& psi, const PropagationPlan& plan) {
  WaveFunction h = apply_h0(psi, plan);
  double n2 = psi.norm2();
  if (n2 <= 0.0) throw std::invalid_argument("energy_expectation: null state");
  return inner_product(psi, h).real() / n2;
}

Trajectory propagate(const WaveFunction& psi0, const PolarizedField& field,
                     const PropagationPlan& plan, const TrajectoryOptions& opts) {
  check_plan_psi(psi0, plan);
  if (field.tg.n_steps < 1)
    throw std::invalid_argument("propagate: empty time grid");
  if (std::fabs(field.tg.dt() - plan.dt) > 1e-12 * std::fabs(plan.dt))
    throw std::invalid_argument("propagate: field dt differs from plan dt");

  int n = field.tg.n_steps;
  int stride = std::max(1, opts.record_stride);

  Trajectory tr;
  tr.final_state = psi0;
  WaveFunction& psi = tr.final_state;

  auto record = [&](int m) {
    tr.t.push_back(field.tg.boundary(m));
    double nn = psi.norm();
    tr.norm.push_back(nn);
    tr.max_norm_drift = std::max(tr.max_norm_drift, std::fabs(nn - 1.0));
    tr.theta_avg.push_back(expectation_theta(psi));
    tr.phi_avg.push_back(expectation_phi(psi));
    tr.ex.push_back(field.ex[m]);
    tr.ey.push_back(field.ey[m]);
    if (opts.record_energy)
      tr.energy.push_back(inner_product(psi, apply_h0(psi, plan)).real());
    if (!opts.basis.empty()) {
      std::vector<double> p(opts.basis.size());
      for (std::size_t k = 0; k < opts.basis.size(); ++k)
        p[k] = std::norm(inner_product(*opts.basis[k], psi));
      tr.populations.push_back(std::move(p));
    }
    if (opts.on_record)
      opts.on_record(static_cast<int>(tr.t.size()) - 1, m, psi);
  };

  record(0);
  for (int m = 0; m < n; ++m) {
    step(psi, field.mid_x(m), field.mid_y(m), plan);
    if ((m + 1) % stride == 0 || m + 1 == n) record(m + 1);
  }
  return tr;
}

} // namespace triwell
