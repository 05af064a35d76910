#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "triwell/log.hpp"
#include "triwell/potential.hpp"
#include "triwell/relaxation.hpp"
#include "triwell/units.hpp"

namespace triwell {
namespace {

// Stationary-point seeds; updated to the last found location as the
// parameters move so the Newton search stays in the right basin.
struct Seeds {
  double r_th = 2.2, ts1_th = 1.57, ts2_th = 0.95, p_th = 0.95;
  double p_ph = 75.0 * units::deg_to_rad;
};

struct EnergyEval {
  bool ok = false;
  double ssq = 1e9;
  double c0 = 0;
  StationaryPoint r, ts1, ts2, p;
};

EnergyEval evaluate(PotentialParams p, SurfaceVariant var,
                    const CalibrationTargets& tg, Seeds& seeds) {
  EnergyEval ev;
  p.c0 = 0;
  auto s = PotentialSurface::with_params(p, var);
  try {
    ev.p = s.find_stationary("P", seeds.p_th, seeds.p_ph);
    ev.r = s.find_stationary("R", seeds.r_th, 0.0);
    ev.ts1 = s.find_stationary("TS1", seeds.ts1_th, 0.0);
    ev.ts2 = s.find_stationary("TS2", seeds.ts2_th, 0.0);
  } catch (const std::exception&) {
    return ev; // penalty stays
  }
  // basin sanity: the saddle ordering along theta must survive
  if (!(ev.p.theta < 1.25 && ev.ts2.theta < 1.3 && ev.ts1.theta > 1.3 &&
        ev.r.theta > 1.8 && std::fabs(ev.p.phi) > 0.5))
    return ev;
  seeds.r_th = ev.r.theta;
  seeds.ts1_th = ev.ts1.theta;
  seeds.ts2_th = ev.ts2.theta;
  seeds.p_th = ev.p.theta;
  seeds.p_ph = std::fabs(ev.p.phi);
  ev.c0 = -ev.p.energy_ev;
  for (auto* sp : {&ev.r, &ev.ts1, &ev.ts2, &ev.p}) sp->energy_ev += ev.c0;
  const double d1 = ev.r.energy_ev - tg.r_ev;
  const double d2 = ev.ts1.energy_ev - tg.ts1_ev;
  const double d3 = ev.ts2.energy_ev - tg.ts2_ev;
  ev.ssq = d1 * d1 + d2 * d2 + d3 * d3;
  ev.ok = true;
  return ev;
}

// Nelder-Mead on (k_tilt, h_b, b_p); returns the best ssq.
double simplex_fit(PotentialParams& p, SurfaceVariant var,
                   const CalibrationTargets& tg, Seeds& seeds, int max_evals,
                   double tol_ev, int& evals_used) {
  using Vec = std::array<double, 3>;
  auto apply = [&](const Vec& v) {
    PotentialParams q = p;
    q.k_tilt = v[0];
    q.h_b = v[1];
    q.b_p = v[2];
    return q;
  };
  int evals = 0;
  auto f = [&](const Vec& v) {
    ++evals;
    return evaluate(apply(v), var, tg, seeds).ssq;
  };
  std::vector<std::pair<double, Vec>> sx;
  Vec v0{p.k_tilt, p.h_b, p.b_p};
  sx.push_back({f(v0), v0});
  const Vec step{0.05, 0.05, 0.02};
  for (int i = 0; i < 3; ++i) {
    Vec v = v0;
    v[i] += step[i];
    sx.push_back({f(v), v});
  }
  const double target = tol_ev * tol_ev * 0.05;
  while (evals < max_evals) {
    std::sort(sx.begin(), sx.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    if (sx[0].first < target) break;
    Vec cen{0, 0, 0};
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k) cen[k] += sx[i].second[k] / 3.0;
    auto blend = [&](double t) {
      Vec v;
      for (int k = 0; k < 3; ++k)
        v[k] = cen[k] + t * (cen[k] - sx[3].second[k]);
      return v;
    };
    const Vec vr = blend(1.0);
    const double fr = f(vr);
    if (fr < sx[0].first) {
      const Vec vexp = blend(2.0);
      const double fe = f(vexp);
      sx[3] = fe < fr ? std::make_pair(fe, vexp) : std::make_pair(fr, vr);
    } else if (fr < sx[2].first) {
      sx[3] = {fr, vr};
    } else {
      const Vec vc = blend(fr < sx[3].first ? 0.5 : -0.5);
      const double fc = f(vc);
      if (fc < std::min(fr, sx[3].first)) {
        sx[3] = {fc, vc};
      } else {
        for (int i = 1; i < 4; ++i) {
          for (int k = 0; k < 3; ++k)
            sx[i].second[k] = 0.5 * (sx[i].second[k] + sx[0].second[k]);
          sx[i].first = f(sx[i].second);
        }
      }
    }
  }
  std::sort(sx.begin(), sx.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  p = apply(sx[0].second);
  const auto best = evaluate(p, var, tg, seeds);
  p.c0 = best.c0;
  evals_used += evals;
  return sx[0].first;
}

} // namespace

double ground_splitting(const PotentialSurface& s, int n_theta, int n_phi) {
  const auto g = AngularGrid::make_shared(n_theta, n_phi);
  auto plan = make_plan(g, KineticSpec{}, 1.0, s.as_fn());
  RelaxOptions ro;
  ro.count = 1;
  ro.residual_tol = 1e-8;
  double e[2];
  for (int k = 0; k < 2; ++k) {
    ro.sector = k == 0 ? 1 : -1;
    const auto states = relax_eigenstates(plan, ro);
    e[k] = states.at(0).energy;
  }
  return e[1] - e[0];
}

std::pair<PotentialSurface, CalibrationReport> calibrate(
    SurfaceVariant variant, const CalibrateOptions& opts) {
  CalibrationReport rep;
  rep.variant = variant;
  rep.targets = CalibrationTargets::for_variant(variant);

  PotentialParams p; // seeds from the designed well/saddle geometry
  Seeds seeds;
  if (variant == SurfaceVariant::Mp2Like) {
    p.k_tilt = 0.16;
    p.b_p = 0.196;
  } else {
    p.k_tilt = 0.065;
  }

  double xp = p.x_p, split = 0;
  double xp_prev = 0, log_prev = 0;
  bool have_prev = false;
  for (int outer = 0; outer < opts.max_outer; ++outer) {
    p.x_p = xp;
    simplex_fit(p, variant, rep.targets, seeds, opts.max_simplex_evals,
                opts.energy_tol_ev, rep.simplex_evaluations);
    split = ground_splitting(PotentialSurface::with_params(p, variant),
                             opts.n_theta, opts.n_phi) *
            units::hartree_to_ev;
    if (split <= 0) throw std::runtime_error("nonpositive doublet splitting");
    const double lg = std::log(split / rep.targets.splitting_ev);
    logsink::info("calibrate: outer " + std::to_string(outer) + " x_p " +
                  std::to_string(xp) + " splitting_ev " + std::to_string(split));
    if (std::fabs(lg) < std::log(opts.splitting_factor) * 0.7) break;
    double xp_next;
    if (!have_prev || std::fabs(lg - log_prev) < 1e-12) {
      // larger x_p means a smaller well angle, a lighter phi inertia at the
      // well, and a larger splitting
      xp_next = xp * std::exp(-0.25 * lg * (xp > 0 ? 1.0 : -1.0)) ;
    } else {
      xp_next = xp - lg * (xp - xp_prev) / (lg - log_prev);
    }
    xp_next = std::clamp(xp_next, 0.35, 0.80);
    xp_prev = xp;
    log_prev = lg;
    have_prev = true;
    if (std::fabs(xp_next - xp) < 1e-5) break;
    xp = xp_next;
  }

  auto surface = PotentialSurface::with_params(p, variant);
  rep.params = p;
  rep.points = {surface.find_stationary("R", seeds.r_th, 0.0),
                surface.find_stationary("TS1", seeds.ts1_th, 0.0),
                surface.find_stationary("TS2", seeds.ts2_th, 0.0),
                surface.find_stationary("P", seeds.p_th, seeds.p_ph)};
  rep.splitting_ev = split;
  rep.tunneling_period_ps =
      units::planck_ev_s / split * 1e12; // h / dE, seconds to ps
  rep.vri_theta = surface.vri_theta();
  rep.energy_residual_ev = {rep.points[0].energy_ev - rep.targets.r_ev,
                            rep.points[1].energy_ev - rep.targets.ts1_ev,
                            rep.points[2].energy_ev - rep.targets.ts2_ev};
  const double fac = split / rep.targets.splitting_ev;
  rep.converged =
      std::fabs(rep.energy_residual_ev[0]) < opts.energy_tol_ev &&
      std::fabs(rep.energy_residual_ev[1]) < opts.energy_tol_ev &&
      std::fabs(rep.energy_residual_ev[2]) < opts.energy_tol_ev &&
      fac < opts.splitting_factor && fac > 1.0 / opts.splitting_factor &&
      rep.points[0].index == 0 && rep.points[1].index == 1 &&
      rep.points[2].index == 1 && rep.points[3].index == 0;
  if (!rep.converged)
    logsink::warn("calibrate: tolerances not met\n" + rep.to_text());
  return {surface, rep};
}

PotentialSurface PotentialSurface::qcisd_like() {
  PotentialParams p; // frozen output of calibrate(QcisdLike)
  p.x_p = 0.67038646510321764;
  p.k_tilt = -0.014728886012112795;
  p.h_b = 0.77940537234607077;
  p.b_p = 0.18255969736993261;
  p.c0 = 0.18346368327873294;
  return with_params(p, SurfaceVariant::QcisdLike);
}

PotentialSurface PotentialSurface::mp2_like() {
  PotentialParams p; // frozen output of calibrate(Mp2Like)
  p.x_p = 0.67920588790854297;
  p.k_tilt = 0.18138328947710886;
  p.h_b = 0.65859178131526819;
  p.b_p = 0.20099176668368526;
  p.c0 = 0.33915446480805611;
  return with_params(p, SurfaceVariant::Mp2Like);
}

} // namespace triwell
