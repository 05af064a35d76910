#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "triwell/dvr.hpp"
#include "triwell/field.hpp"
#include "triwell/kinetic.hpp"
#include "triwell/log.hpp"
#include "triwell/propagation.hpp"
#include "triwell/relaxation.hpp"
#include "triwell/units.hpp"
#include "triwell/wavefunction.hpp"

using namespace triwell;
using units::pi;

namespace {

// Single well in each angle, minimum at (pi/2, 0), no degeneracies.
double test_potential(double th, double ph) {
  return 0.02 * (1.0 - std::cos(ph)) + 0.08 * (th - pi / 2) * (th - pi / 2);
}

WaveFunction random_state(std::shared_ptr<const AngularGrid> g, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  WaveFunction psi(g);
  for (auto& a : psi.amp) a = cplx(uni(rng), uni(rng));
  psi.normalize();
  return psi;
}

} // namespace

TEST_CASE("similarity-transform potential") {
  KineticSpec kin;
  // cot(pi/2) = 0 leaves only the constant: -1/(4 I_theta).
  CHECK(extra_potential_v(pi / 2, kin) ==
        doctest::Approx(-1.0 / (4.0 * 6160.0)).epsilon(1e-12));
  // Symmetric about the equator.
  CHECK(extra_potential_v(0.4, kin) ==
        doctest::Approx(extra_potential_v(pi - 0.4, kin)).epsilon(1e-12));
  CHECK_THROWS_AS(extra_potential_v(0.0, kin), std::domain_error);
  CHECK_THROWS_AS(extra_potential_v(pi, kin), std::domain_error);
}

TEST_CASE("spectral modes are exact eigenfunctions of the kinetic terms") {
  auto g = AngularGrid::make_shared(24, 16);
  KineticSpec kin;
  // Potential cancels the transform term so apply_h0 returns pure kinetic.
  auto plan = make_plan(
      g, kin, 0.1,
      [&](double th, double) { return -extra_potential_v(th, kin); });

  WaveFunction psi(g);
  const int ks = 3, m = 2;
  for (int i = 0; i < g->n_theta; ++i)
    for (int j = 0; j < g->n_phi; ++j)
      psi.at(i, j) = std::sin(ks * g->theta[i]) *
                     std::exp(cplx(0.0, m * g->phi[j]));
  psi.normalize();

  WaveFunction h = apply_h0(psi, plan);
  double tth = ks * ks / (2.0 * kin.i_theta);
  double tph = m * m / (2.0 * kin.i_phi);
  double worst = 0.0;
  for (int i = 0; i < g->n_theta; ++i)
    for (int j = 0; j < g->n_phi; ++j) {
      cplx want = (tth + tph * g->inv_sin2_theta[i]) * psi.at(i, j);
      worst = std::max(worst, std::abs(h.at(i, j) - want));
    }
  CHECK(worst < 1e-13);
}

TEST_CASE("apply_h0 is hermitian") {
  auto g = AngularGrid::make_shared(20, 16);
  auto plan = make_plan(g, KineticSpec{}, 0.5, test_potential);
  auto a = random_state(g, 11), b = random_state(g, 22);
  cplx lhs = inner_product(a, apply_h0(b, plan));
  cplx rhs = inner_product(apply_h0(a, plan), b);
  CHECK(std::abs(lhs - rhs) < 1e-12 * std::abs(lhs));
}

TEST_CASE("step is unitary and reversible with a field") {
  auto g = AngularGrid::make_shared(24, 16);
  DipoleSurface dip;
  auto plan = make_plan(g, KineticSpec{}, 1.0, test_potential, &dip);

  WaveFunction psi = make_gaussian(g, pi / 2, 0.3, 0.25, 0.4);
  WaveFunction start = psi;
  const int n = 2000;
  std::vector<double> exs(n), eys(n);
  for (int m = 0; m < n; ++m) {
    double t = m + 0.5;
    exs[m] = 5e-3 * std::sin(0.01 * t) * std::exp(-1e-6 * (t - 900) * (t - 900));
    eys[m] = 3e-3 * std::cos(0.013 * t);
  }
  for (int m = 0; m < n; ++m) step(psi, exs[m], eys[m], plan);
  CHECK(std::fabs(psi.norm() - 1.0) < 1e-12);
  for (int m = n - 1; m >= 0; --m)
    step(psi, exs[m], eys[m], plan, StepDirection::Backward);
  cplx ov = inner_product(start, psi);
  CHECK(std::abs(ov - cplx(1.0, 0.0)) < 1e-10);
}

TEST_CASE("dense eigenvectors are stationary under the spectral operator") {
  auto g = AngularGrid::make_shared(24, 16);
  KineticSpec kin;
  auto states = dvr_diagonalize(g, kin, test_potential, 4);
  auto plan = make_plan(g, kin, 1.0, test_potential);

  // The dense matrix and apply_h0 express the same discrete operator, so
  // residuals are at rounding level even though the grid is coarse.
  for (const auto& ep : states) {
    WaveFunction r = apply_h0(ep.state, plan);
    for (std::size_t i = 0; i < r.amp.size(); ++i)
      r.amp[i] -= ep.energy * ep.state.amp[i];
    CHECK(r.norm() < 1e-10);
  }
  // Energies ordered and above the potential minimum plus transform shift.
  CHECK(states[0].energy > -1.0 / (4.0 * 6160.0) - 1e-6);
  CHECK(states[0].energy < states[1].energy);
}

TEST_CASE("free evolution of an eigenstate accumulates exp(-i E t)") {
  auto g = AngularGrid::make_shared(24, 16);
  KineticSpec kin;
  auto states = dvr_diagonalize(g, kin, test_potential, 1);
  const WaveFunction& psi0 = states[0].state;
  const double e0 = states[0].energy;

  auto phase_error = [&](double dt, int steps) {
    auto plan = make_plan(g, kin, dt, test_potential);
    WaveFunction psi = psi0;
    for (int m = 0; m < steps; ++m) step(psi, 0.0, 0.0, plan);
    cplx ov = inner_product(psi0, psi);
    CHECK(std::abs(std::abs(ov) - 1.0) < 1e-9);
    return std::remainder(std::arg(ov) + e0 * dt * steps, 2.0 * pi);
  };

  double e_dt1 = std::fabs(phase_error(1.0, 800));
  double e_dt2 = std::fabs(phase_error(2.0, 400));
  CHECK(e_dt1 < 1e-4);
  // Strang splitting: same-horizon phase error scales as dt^2.
  CHECK(e_dt2 / e_dt1 == doctest::Approx(4.0).epsilon(0.25));
}

TEST_CASE("transformed and untransformed conventions agree spectrally") {
  KineticSpec kin;
  auto g = AngularGrid::make_shared(32, 16);
  auto wilson = dvr_diagonalize(g, kin, test_potential, 5);
  auto eucl = euclidean_dvr_energies(32, 16, kin, test_potential, 5);
  // Both routes are spectrally converged here; agreement is at rounding level.
  for (int k = 0; k < 5; ++k)
    CHECK(std::fabs(wilson[k].energy - eucl[k]) < 1e-12);
}

TEST_CASE("relaxation reproduces the dense spectrum") {
  auto g = AngularGrid::make_shared(24, 16);
  KineticSpec kin;
  auto dense = dvr_diagonalize(g, kin, test_potential, 6);

  auto plan = make_plan(g, kin, 1.0, test_potential);
  RelaxOptions opts;
  opts.count = 6;
  opts.residual_tol = 1e-8;
  auto relaxed = relax_eigenstates(plan, opts);

  for (int k = 0; k < 6; ++k) {
    CHECK(std::fabs(relaxed[k].energy - dense[k].energy) < 1e-9);
    CHECK(relaxed[k].residual < 1e-8);
    double ov = std::abs(inner_product(relaxed[k].state, dense[k].state));
    CHECK(ov > 1.0 - 1e-8);
  }
}

TEST_CASE("propagate records norms, energy and populations") {
  auto g = AngularGrid::make_shared(24, 16);
  KineticSpec kin;
  auto plan = make_plan(g, kin, 1.0, test_potential);
  auto states = dvr_diagonalize(g, kin, test_potential, 2);

  TimeGrid tg{0.0, 500.0, 500};
  PolarizedField field = PolarizedField::zero(tg);
  TrajectoryOptions opts;
  opts.record_stride = 50;
  opts.basis = {&states[0].state, &states[1].state};

  auto tr = propagate(states[0].state, field, plan, opts);
  CHECK(tr.t.size() == 11);
  CHECK(tr.t.back() == doctest::Approx(500.0));
  CHECK(tr.max_norm_drift < 1e-12);
  for (const auto& e : tr.energy)
    CHECK(std::fabs(e - states[0].energy) < 1e-12);
  for (const auto& p : tr.populations) {
    CHECK(p[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(p[1] < 1e-12);
  }
}

TEST_CASE("plan construction guards") {
  auto g = AngularGrid::make_shared(16, 16);
  KineticSpec kin;
  CHECK_THROWS_AS(make_plan(g, kin, -1.0, test_potential),
                  std::invalid_argument);
  KineticSpec eucl = kin;
  eucl.convention = KineticConvention::Euclidean;
  CHECK_THROWS_AS(make_plan(g, eucl, 1.0, test_potential),
                  std::invalid_argument);

  // A huge dt trips the phase-wrap warning; strict mode promotes it.
  auto before = logsink::warn_count();
  auto plan = make_plan(g, kin, 5000.0, test_potential);
  CHECK(plan.stability_warning);
  CHECK(logsink::warn_count() == before + 1);
  CHECK_THROWS_AS(make_plan(g, kin, 5000.0, test_potential, nullptr, true),
                  std::runtime_error);
}
