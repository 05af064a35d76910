#include "triwell/rwa.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "triwell/log.hpp"

namespace triwell {

FewLevelModel FewLevelModel::from_states(const std::vector<EigenPair>& states,
                                         const DipoleSurface& dip) {
  if (states.empty()) throw std::invalid_argument("from_states: no states");
  const auto& g = *states.front().state.grid;
  std::vector<double> mx(g.size()), my(g.size());
  for (int i = 0; i < g.n_theta; ++i)
    for (int j = 0; j < g.n_phi; ++j) {
      mx[(size_t)i * g.n_phi + j] = dip.mu_x(g.theta[i], g.phi[j]);
      my[(size_t)i * g.n_phi + j] = dip.mu_y(g.theta[i], g.phi[j]);
    }
  const int n = (int)states.size();
  FewLevelModel m;
  m.energies.resize(n);
  m.labels.resize(n);
  m.mu_x.assign((size_t)n * n, 0.0);
  m.mu_y.assign((size_t)n * n, 0.0);
  for (int a = 0; a < n; ++a) {
    m.energies[a] = states[a].energy;
    m.labels[a] = states[a].label;
    for (int b = a; b < n; ++b) {
      // eigenstates are real after the relaxation gauge, elements too
      const double ex =
          std::real(matrix_element(states[a].state, mx, states[b].state));
      const double ey =
          std::real(matrix_element(states[a].state, my, states[b].state));
      m.mu_x[(size_t)a * n + b] = m.mu_x[(size_t)b * n + a] = ex;
      m.mu_y[(size_t)a * n + b] = m.mu_y[(size_t)b * n + a] = ey;
    }
  }
  // enforce the exact phi-parity selection rules on labelled models
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const bool same = m.labels[a].parity == m.labels[b].parity;
      double& forbidden = same ? m.mu_y[(size_t)a * n + b]
                               : m.mu_x[(size_t)a * n + b];
      if (std::fabs(forbidden) > 1e-8)
        logsink::warn("from_states: selection-rule violation " +
                      std::to_string(forbidden) + " zeroed");
      forbidden = 0.0;
    }
  return m;
}

double FewLevelModel::lambda_leak_ratio(int lower_a, int lower_b,
                                        int upper) const {
  const double direct = mu(Axis::Y, lower_a, lower_b);
  const double leg = mu(Axis::Y, lower_b, upper);
  if (std::fabs(leg) < 1e-14)
    throw std::invalid_argument("lambda_leak_ratio: undriven leg");
  return direct / leg;
}

double overlap2(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("overlap2: size");
  cplx s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return std::norm(s);
}

namespace {

struct Term {
  int lo = 0, hi = 0;   // level pair, energies[hi] >= energies[lo]
  int pulse = 0;        // envelope index in the sequence
  double rabi = 0;      // -mu * E0 / 2
  double delta = 0;     // (E_hi - E_lo) - carrier, after zero_cut snapping
  double phase = 0;
};

} // namespace

RwaResult rwa_propagate(const FewLevelModel& m, const PulseSequence& seq,
                        std::vector<cplx> psi0, double t_begin, double t_end,
                        const RwaOptions& opts) {
  const int n = m.n();
  if ((int)psi0.size() != n)
    throw std::invalid_argument("rwa_propagate: psi0 size mismatch");
  if (!(t_end > t_begin))
    throw std::invalid_argument("rwa_propagate: empty time window");

  RwaResult out;
  std::vector<Term> terms;
  double max_rabi = 0.0, max_delta = 0.0;
  for (int k = 0; k < (int)seq.pulses.size(); ++k) {
    const auto& p = seq.pulses[k];
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        const double mu = m.mu(p.axis, a, b);
        if (std::fabs(mu) < 1e-14) continue;
        const int lo = m.energies[a] <= m.energies[b] ? a : b;
        const int hi = lo == a ? b : a;
        double delta = (m.energies[hi] - m.energies[lo]) - p.carrier;
        if (std::fabs(delta) > opts.drop_cut) {
          ++out.terms_dropped;
          continue;
        }
        if (std::fabs(delta) < opts.zero_cut) delta = 0.0;
        Term t;
        t.lo = lo;
        t.hi = hi;
        t.pulse = k;
        t.rabi = -0.5 * mu * p.amplitude;
        t.delta = delta;
        t.phase = p.phase;
        terms.push_back(t);
        max_rabi = std::max(max_rabi, std::fabs(2 * t.rabi));
        max_delta = std::max(max_delta, std::fabs(delta));
        ++out.terms_kept;
      }
  }

  // surface strained rotating-frame assumptions: a pulse whose carrier sits
  // near no transition it couples only dresses the ladder off-resonantly
  for (int k = 0; k < (int)seq.pulses.size(); ++k) {
    bool couples = false, resonant = false;
    for (const auto& t : terms)
      if (t.pulse == k) {
        couples = true;
        resonant |= t.delta == 0.0;
      }
    if (couples && !resonant)
      logsink::warn("rwa_propagate: pulse " + std::to_string(k) +
                    " carrier is not resonant with any coupled transition");
  }

  double dt = t_end - t_begin;
  if (max_rabi > 0) dt = std::min(dt, 0.01 / max_rabi);
  if (max_delta > 0) dt = std::min(dt, 0.1 / max_delta);
  for (const auto& p : seq.pulses) dt = std::min(dt, p.width / 20.0);
  if (opts.max_step > 0) dt = std::min(dt, opts.max_step);
  const int steps = std::max(64, (int)std::ceil((t_end - t_begin) / dt));
  dt = (t_end - t_begin) / steps;
  out.steps = steps;

  // i c' = W(t) c with W_lo,hi = sum rabi * G(t) * exp(i(phase - delta t))
  auto deriv = [&](double t, const std::vector<cplx>& c,
                   std::vector<cplx>& dc) {
    std::fill(dc.begin(), dc.end(), cplx(0, 0));
    for (const auto& tm : terms) {
      const double g = seq.pulses[tm.pulse].envelope(t);
      if (g < 1e-14) continue;
      const cplx w =
          tm.rabi * g * std::polar(1.0, tm.phase - tm.delta * t);
      dc[tm.lo] += cplx(0, -1) * w * c[tm.hi];
      dc[tm.hi] += cplx(0, -1) * std::conj(w) * c[tm.lo];
    }
  };

  std::vector<cplx> c = std::move(psi0), k1(n), k2(n), k3(n), k4(n), tmp(n);
  const int rec_every = std::max(1, steps / std::max(1, opts.records));
  auto record = [&](double t) {
    out.t.push_back(t);
    std::vector<double> p(n);
    for (int i = 0; i < n; ++i) p[i] = std::norm(c[i]);
    out.pop.push_back(std::move(p));
  };
  record(t_begin);
  for (int s = 0; s < steps; ++s) {
    const double t = t_begin + s * dt;
    deriv(t, c, k1);
    for (int i = 0; i < n; ++i) tmp[i] = c[i] + 0.5 * dt * k1[i];
    deriv(t + 0.5 * dt, tmp, k2);
    for (int i = 0; i < n; ++i) tmp[i] = c[i] + 0.5 * dt * k2[i];
    deriv(t + 0.5 * dt, tmp, k3);
    for (int i = 0; i < n; ++i) tmp[i] = c[i] + dt * k3[i];
    deriv(t + dt, tmp, k4);
    for (int i = 0; i < n; ++i)
      c[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    if ((s + 1) % rec_every == 0 || s + 1 == steps) record(t + dt);
  }
  out.amps = std::move(c);
  return out;
}

} // namespace triwell
