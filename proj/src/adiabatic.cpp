#include "triwell/adiabatic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "triwell/log.hpp"
#include "triwell/units.hpp"

namespace triwell {
namespace {

double signed_amp(double rabi, double mu, const char* leg) {
  if (std::fabs(mu) < 1e-10)
    throw std::invalid_argument(std::string("scheme builder: ") + leg +
                                " leg has no dipole coupling");
  return rabi / mu; // sign is folded into the carrier phase by make_pulse
}

GaussianPulse make_pulse(Axis ax, double amp, double omega, double center,
                         double width, double phase) {
  if (amp < 0) {
    amp = -amp;
    phase += units::pi;
  }
  return {ax, amp, omega, center, width, std::remainder(phase, 2 * units::pi)};
}

// Polarization that actually couples a pair (parity selection rules make the
// other component vanish).
Axis coupling_axis(const FewLevelModel& m, int i, int j) {
  return std::fabs(m.mu(Axis::X, i, j)) >= std::fabs(m.mu(Axis::Y, i, j))
             ? Axis::X
             : Axis::Y;
}

// Rotating-frame phase of basis column i_col's return amplitude onto itself.
cplx roundtrip_amp(const FewLevelModel& m, const GateScheme& g, int i_col) {
  std::vector<cplx> c0(m.n(), cplx(0, 0));
  c0[g.basis[i_col]] = 1.0;
  auto r = rwa_propagate(m, g.pulses, c0, 0.0, g.pulses.duration);
  return r.amps[g.basis[i_col]];
}

void warn_if_sluggish(double rabi, double duration) {
  if (rabi * duration < 10.0)
    logsink::warn("adiabatic scheme: rabi * duration = " +
                  std::to_string(rabi * duration) +
                  " < 10, transfer will not follow the dark state");
}

} // namespace

TransferScheme build_fstirap(const FewLevelModel& m, int i_even, int i_odd,
                             int i_mid, double eps, double rabi,
                             double duration, double delay, double width) {
  if (!(delay > 0) || !(duration > delay))
    throw std::invalid_argument("build_fstirap: need 0 < delay < duration");
  warn_if_sluggish(rabi, duration);
  const double mu_p = m.mu(Axis::X, i_even, i_mid);
  const double mu_s = m.mu(Axis::Y, i_odd, i_mid);
  const double omega =
      m.energies[i_mid] - 0.5 * (m.energies[i_even] + m.energies[i_odd]);
  if (width <= 0) width = (duration - delay) / 10.0;
  const double t1 = 0.5 * (duration - delay), t2 = t1 + delay;

  TransferScheme s;
  s.carrier = omega;
  s.peak_rabi = rabi;
  s.pulses.duration = duration;
  const double e_s = signed_amp(rabi, mu_s, "odd");
  const double e_p = signed_amp(eps * rabi, mu_p, "even");
  s.pulses.pulses = {
      make_pulse(Axis::Y, e_s, omega, t1, width, 0.0),
      make_pulse(Axis::Y, e_s, omega, t2, width, 0.0),
      make_pulse(Axis::X, e_p, omega, t2, width, 0.0),
  };
  s.pulses.check_support();
  s.initial.assign(m.n(), cplx(0, 0));
  s.initial[i_even] = 1.0;
  s.target.assign(m.n(), cplx(0, 0));
  s.target[i_even] = 1.0 / std::sqrt(2.0);
  s.target[i_odd] = -eps / std::sqrt(2.0);
  return s;
}

TransferScheme build_well_swap(const FewLevelModel& m, int i_even, int i_odd,
                               int i_mid, double eps, double rabi,
                               double duration, double delay, double width) {
  if (!(delay > 0) || !(duration > delay))
    throw std::invalid_argument("build_well_swap: need 0 < delay < duration");
  warn_if_sluggish(rabi, duration);
  const double mu_p = m.mu(Axis::X, i_even, i_mid);
  const double mu_s = m.mu(Axis::Y, i_odd, i_mid);
  const double omega =
      m.energies[i_mid] - 0.5 * (m.energies[i_even] + m.energies[i_odd]);
  if (width <= 0) width = (duration - delay) / 10.0;
  const double t1 = 0.5 * (duration - delay), t2 = t1 + delay;

  TransferScheme s;
  s.carrier = omega;
  s.peak_rabi = rabi;
  s.pulses.duration = duration;
  const double e_s = signed_amp(rabi, mu_s, "odd");
  const double e_p = signed_amp(eps * rabi, mu_p, "even");
  s.pulses.pulses = {
      make_pulse(Axis::Y, e_s, omega, t1, width, 0.0),
      make_pulse(Axis::Y, e_s, omega, t2, width, 0.0),
      make_pulse(Axis::X, -e_p, omega, t1, width, 0.0),
      make_pulse(Axis::X, e_p, omega, t2, width, 0.0),
  };
  s.pulses.check_support();
  s.initial.assign(m.n(), cplx(0, 0));
  s.initial[i_even] = 1.0 / std::sqrt(2.0);
  s.initial[i_odd] = eps / std::sqrt(2.0);
  s.target.assign(m.n(), cplx(0, 0));
  s.target[i_even] = 1.0 / std::sqrt(2.0);
  s.target[i_odd] = -eps / std::sqrt(2.0);
  return s;
}

GateScheme build_phase_gate(const FewLevelModel& m, int i_zero, int i_one,
                            int i_mid, int i_top, double phi, double rabi,
                            double duration, double delay, double width,
                            bool calibrate) {
  if (!(delay > 0) || !(duration > 2 * delay))
    throw std::invalid_argument("build_phase_gate: need duration > 2 delay");
  warn_if_sluggish(rabi, duration);
  const Axis ax_mid = coupling_axis(m, i_mid, i_top);
  const Axis ax_one = coupling_axis(m, i_one, i_top);
  const double mu_x = m.mu(ax_mid, i_mid, i_top);
  const double mu_y = m.mu(ax_one, i_one, i_top);
  // the apex may sit below a foot state; carriers are the absolute gaps
  const double om_x = std::fabs(m.energies[i_top] - m.energies[i_mid]);
  const double om_y = std::fabs(m.energies[i_top] - m.energies[i_one]);
  if (width <= 0) width = (duration - 2 * delay) / 10.0;
  const double t2 = 0.5 * duration, t1 = t2 - delay, t3 = t2 + delay;

  GateScheme g;
  g.pulses.duration = duration;
  const double e_x = signed_amp(rabi, mu_x, "mid");
  const double e_y = signed_amp(rabi, mu_y, "one");
  g.pulses.pulses = {
      make_pulse(ax_mid, e_x, om_x, t1, width, phi),
      make_pulse(ax_one, e_y, om_y, t2, width, 0.0),
      make_pulse(ax_mid, e_x, om_x, t3, width, 0.0),
  };
  g.pulses.check_support();
  g.basis = {i_zero, i_one};
  g.unitary = {1.0, 0.0, 0.0, std::polar(1.0, phi)};
  if (calibrate) {
    // the residual depends weakly on the adjusted phase, so iterate
    double ph1 = phi;
    for (int it = 0; it < 4; ++it) {
      const cplx a = roundtrip_amp(m, g, 0), b = roundtrip_amp(m, g, 1);
      const double excess =
          std::remainder(std::arg(b / a) - phi, 2 * units::pi);
      if (std::fabs(excess) < 0.02) break;
      ph1 -= excess;
      g.pulses.pulses[0] = make_pulse(ax_mid, e_x, om_x, t1, width, ph1);
    }
  }
  return g;
}

GateScheme build_cnot(const FewLevelModel& m, int i00, int i01, int i10,
                      int i11, int i_mid, int i_top, double rabi,
                      double duration, double delay, double width,
                      bool calibrate) {
  if (!(delay > 0) || !(duration > 2 * delay))
    throw std::invalid_argument("build_cnot: need duration > 2 delay");
  warn_if_sluggish(rabi, duration);
  const Axis ax_s = coupling_axis(m, i_mid, i_top);
  const Axis ax_a = coupling_axis(m, i10, i_top);
  const Axis ax_b = coupling_axis(m, i11, i_top);
  const double mu_s = m.mu(ax_s, i_mid, i_top);
  const double mu_a = m.mu(ax_a, i10, i_top);
  const double mu_b = m.mu(ax_b, i11, i_top);
  const double om_s = std::fabs(m.energies[i_top] - m.energies[i_mid]);
  const double om_a = std::fabs(m.energies[i_top] - m.energies[i10]);
  const double om_b = std::fabs(m.energies[i_top] - m.energies[i11]);
  if (width <= 0) width = (duration - 2 * delay) / 10.0;
  // The enclosing pulses only open and close the tripod; running them weak
  // and short keeps their far-off-resonant dressing of spectator doublets
  // (quadratic in field, linear in width) from polluting the idle phases.
  const double w_s = width / 3.0;
  const double t2 = 0.5 * duration, t1 = t2 - delay, t3 = t2 + delay;
  const double rt2 = std::sqrt(2.0);

  GateScheme g;
  g.pulses.duration = duration;
  const double e_s = signed_amp(0.24 * rabi, mu_s, "mid");
  const double e_a = signed_amp(rt2 * rabi, mu_a, "i10");
  const double e_b = signed_amp(rt2 * rabi, mu_b, "i11");
  g.pulses.pulses = {
      make_pulse(ax_s, e_s, om_s, t1, w_s, units::pi),
      make_pulse(ax_a, e_a, om_a, t2, width, 0.0),
      make_pulse(ax_b, e_b, om_b, t2, width, units::pi),
      make_pulse(ax_s, e_s, om_s, t3, w_s, 0.0),
  };
  g.pulses.check_support();
  g.basis = {i00, i01, i10, i11};
  g.unitary.assign(16, cplx(0, 0));
  g.unitary[0 * 4 + 0] = 1.0;
  g.unitary[1 * 4 + 1] = 1.0;
  g.unitary[2 * 4 + 3] = 1.0;
  g.unitary[3 * 4 + 2] = 1.0;
  if (calibrate) {
    // The drive phase-flips the bright half of (i10, i11) and idles the rest.
    // Rotate that flip against everything the trace otherwise accumulates.
    const double irt2 = 1.0 / rt2;
    auto channel = [&](double sign) {
      std::vector<cplx> c0(m.n(), cplx(0, 0));
      c0[i10] = irt2;
      c0[i11] = sign * irt2;
      auto r = rwa_propagate(m, g.pulses, c0, 0.0, duration);
      return irt2 * (r.amps[i10] + sign * r.amps[i11]);
    };
    double ph1 = units::pi;
    for (int it = 0; it < 4; ++it) {
      const cplx rest =
          roundtrip_amp(m, g, 0) + roundtrip_amp(m, g, 1) + channel(+1.0);
      const double excess =
          std::remainder(std::arg(channel(-1.0) / rest) - units::pi,
                         2 * units::pi);
      if (std::fabs(excess) < 0.02) break;
      ph1 -= excess;
      g.pulses.pulses[0] = make_pulse(ax_s, e_s, om_s, t1, w_s, ph1);
    }
  }
  return g;
}

std::array<cplx, 4> hcp_kick(double area) {
  const cplx c = std::cos(area), is = cplx(0, 1) * std::sin(area);
  return {c, is, is, c};
}

std::array<cplx, 4> doublet_free(double splitting, double t) {
  return {cplx(1, 0), cplx(0, 0), cplx(0, 0), std::polar(1.0, -splitting * t)};
}

std::array<cplx, 4> compose2(const std::array<cplx, 4>& later,
                             const std::array<cplx, 4>& earlier) {
  std::array<cplx, 4> r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        r[i * 2 + j] += later[i * 2 + k] * earlier[k * 2 + j];
  return r;
}

ScanGrid scan_fstirap(const FewLevelModel& m, int i_even, int i_odd, int i_mid,
                      double eps, double duration,
                      std::pair<double, double> rabi_range,
                      std::pair<double, double> delay_range, int n_rabi,
                      int n_delay, const RwaOptions& opts) {
  if (n_rabi < 2 || n_delay < 2)
    throw std::invalid_argument("scan_fstirap: need at least a 2 x 2 grid");
  ScanGrid out;
  out.rabi.resize(n_rabi);
  out.delay.resize(n_delay);
  const double lr0 = std::log(rabi_range.first),
               lr1 = std::log(rabi_range.second);
  for (int i = 0; i < n_rabi; ++i)
    out.rabi[i] = std::exp(lr0 + (lr1 - lr0) * i / (n_rabi - 1));
  for (int j = 0; j < n_delay; ++j)
    out.delay[j] = delay_range.first +
                   (delay_range.second - delay_range.first) * j / (n_delay - 1);
  out.fidelity.assign((size_t)n_rabi * n_delay,
                      std::numeric_limits<double>::quiet_NaN());
  for (int i = 0; i < n_rabi; ++i)
    for (int j = 0; j < n_delay; ++j) {
      try {
        const auto s = build_fstirap(m, i_even, i_odd, i_mid, eps, out.rabi[i],
                                     duration, out.delay[j]);
        const auto r = rwa_propagate(m, s.pulses, s.initial, 0.0, duration, opts);
        const double f = overlap2(s.target, r.amps);
        out.fidelity[(size_t)i * n_delay + j] = f;
        if (f > out.best) {
          out.best = f;
          out.best_i = i;
          out.best_j = j;
        }
      } catch (const std::exception& e) {
        logsink::warn("scan point (" + std::to_string(out.rabi[i]) + ", " +
                      std::to_string(out.delay[j]) + ") failed: " + e.what());
      }
    }
  return out;
}

double grid_transfer_fidelity(const TransferScheme& s,
                              const std::vector<EigenPair>& states,
                              const PropagationPlan& plan, double dt) {
  const int n = (int)states.size();
  if ((int)s.initial.size() != n || (int)s.target.size() != n)
    throw std::invalid_argument("grid_transfer_fidelity: model/state mismatch");
  const bool coupled =
      std::any_of(plan.mu_x.begin(), plan.mu_x.end(),
                  [](double v) { return v != 0.0; }) ||
      std::any_of(plan.mu_y.begin(), plan.mu_y.end(),
                  [](double v) { return v != 0.0; });
  if (!coupled && !s.pulses.pulses.empty())
    logsink::warn("grid_transfer_fidelity: plan has no dipole surface, the "
                  "field cannot act");
  const double T = s.pulses.duration;
  const TimeGrid tg(0.0, T, std::max(1, (int)std::ceil(T / dt)));
  const auto field = s.pulses.sample(tg);

  std::vector<const WaveFunction*> basis;
  std::vector<cplx> coeffs;
  for (int a = 0; a < n; ++a) {
    basis.push_back(&states[a].state);
    coeffs.push_back(s.initial[a]);
  }
  WaveFunction psi = superpose(coeffs, basis);

  TrajectoryOptions opts;
  opts.record_stride = std::max(1, tg.n_steps / 16);
  opts.record_energy = false;
  const auto traj = propagate(psi, field, plan, opts);

  cplx ov = 0.0;
  for (int a = 0; a < n; ++a) {
    const cplx c = inner_product(states[a].state, traj.final_state) *
                   std::polar(1.0, states[a].energy * T);
    ov += std::conj(s.target[a]) * c;
  }
  return std::norm(ov);
}

} // namespace triwell
