#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "triwell/dipole.hpp"
#include "triwell/gates.hpp"
#include "triwell/oct.hpp"
#include "triwell/relaxation.hpp"
#include "triwell/units.hpp"

using namespace triwell;
using units::pi;

namespace {

// anharmonic bend ladder over a shallow torsion well; the quartic term
// detunes the 1->2 step so the lowest x-coupled pair is quasi-two-level
double toy_potential(double th, double ph) {
  double x = th - 0.5 * pi;
  return 0.08 * x * x + 0.3 * x * x * x * x + 0.02 * (1.0 - std::cos(ph));
}

struct Toy {
  std::shared_ptr<const AngularGrid> grid;
  KineticSpec kin;
  DipoleSurface dip;
  PropagationPlan plan;
  std::vector<EigenPair> states;
  int excited;  // strongest x-coupled partner of the ground state
  Toy()
      : grid(AngularGrid::make_shared(24, 16)),
        plan(make_plan(grid, kin, 4.0, toy_potential, &dip)) {
    RelaxOptions ro;
    ro.count = 6;
    ro.residual_tol = 1e-9;
    states = relax_eigenstates(plan, ro);
    excited = 1;
    double best = 0.0;
    for (int i = 1; i < 6; ++i) {
      double m =
          std::abs(matrix_element(states[0].state, plan.mu_x, states[i].state));
      if (m > best) {
        best = m;
        excited = i;
      }
    }
  }
};

const Toy& toy() {
  static Toy t;
  return t;
}

std::vector<cplx> random_unitary(int dim, std::mt19937& rng) {
  std::normal_distribution<double> g;
  std::vector<cplx> u((std::size_t)dim * dim);
  for (auto& z : u) z = cplx(g(rng), g(rng));
  // Gram-Schmidt on columns
  for (int c = 0; c < dim; ++c) {
    for (int p = 0; p < c; ++p) {
      cplx ov(0, 0);
      for (int r = 0; r < dim; ++r)
        ov += std::conj(u[(std::size_t)r * dim + p]) * u[(std::size_t)r * dim + c];
      for (int r = 0; r < dim; ++r)
        u[(std::size_t)r * dim + c] -= ov * u[(std::size_t)r * dim + p];
    }
    double n = 0;
    for (int r = 0; r < dim; ++r) n += std::norm(u[(std::size_t)r * dim + c]);
    n = 1.0 / std::sqrt(n);
    for (int r = 0; r < dim; ++r) u[(std::size_t)r * dim + c] *= n;
  }
  return u;
}

}  // namespace

TEST_CASE("gate fidelity: normalization, bounds, invariances") {
  std::mt19937 rng(2026);
  // exact match and global-phase invariance
  for (int dim : {2, 4}) {
    auto u = random_unitary(dim, rng);
    CHECK(gate_fidelity(u, u) == doctest::Approx(1.0).epsilon(1e-12));
    auto v = u;
    for (auto& z : v) z *= std::polar(1.0, 1.2345);
    CHECK(gate_fidelity(u, v) == doctest::Approx(1.0).epsilon(1e-12));
  }
  // bounds on random pairs
  for (int k = 0; k < 1000; ++k) {
    int dim = k % 2 ? 2 : 4;
    auto a = random_unitary(dim, rng);
    auto b = random_unitary(dim, rng);
    double f = gate_fidelity(a, b);
    CHECK(f >= 0.0);
    CHECK(f <= 1.0 + 1e-12);
  }
  // identity measured against a controlled flip: the swapped block adds
  // nothing to the trace, so tr = 2 and |tr|^2 / 16 = 1/4
  CHECK(gate_fidelity(gate_identity(4), gate_cnot()) ==
        doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("oct: fixed point converges immediately with a silent field") {
  const Toy& t = toy();
  ControlProblem p;
  p.initial = {t.states[0].state};
  p.target = {t.states[0].state};
  p.horizon = 2000 * t.plan.dt;
  p.max_iterations = 10;
  OCTResult r = oct_optimize(p, t.plan);
  CHECK(r.objective.front() == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(r.final_yield == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(r.converged);
  CHECK(r.iterations == p.gain_patience);
  CHECK(r.field.peak() <= 1e-6);
}

TEST_CASE("oct: state transfer is monotone and lands on the pi-pulse area") {
  const Toy& t = toy();
  ControlProblem p;
  p.initial = {t.states[0].state};
  p.target = {t.states[t.excited].state};
  p.horizon = 20000 * t.plan.dt;
  p.alpha0 = 60.0;  // weak-field regime so the resonant pair dominates
  p.max_iterations = 120;
  OCTResult r = oct_optimize(p, t.plan);
  CHECK(r.final_yield >= 0.999);
  CHECK(r.converged);
  for (std::size_t k = 1; k < r.objective.size(); ++k)
    CHECK(r.objective[k] >= r.objective[k - 1] - 1e-10);

  // the field must switch on and off with the envelope
  CHECK(std::fabs(r.field.ex.front()) <= 1e-12);
  CHECK(std::fabs(r.field.ex.back()) <= 1e-12);
  CHECK(std::fabs(r.field.ey.front()) <= 1e-12);
  CHECK(std::fabs(r.field.ey.back()) <= 1e-12);

  // the two states share phi parity, so the y component never switches on
  CHECK(r.field.peak() > 1e-5);
  double ey_peak = 0.0;
  for (double v : r.field.ey) ey_peak = std::max(ey_peak, std::fabs(v));
  CHECK(ey_peak <= 1e-10);

  // resonant Fourier component against the two-level pi-pulse area
  double om = t.states[t.excited].energy - t.states[0].energy;
  double mu = std::abs(
      matrix_element(t.states[0].state, t.plan.mu_x, t.states[t.excited].state));
  std::complex<double> acc(0, 0);
  double dt = t.plan.dt;
  for (std::size_t q = 0; q < r.field.ex.size(); ++q) {
    double w = (q == 0 || q + 1 == r.field.ex.size()) ? 0.5 : 1.0;
    acc += w * r.field.ex[q] * std::polar(1.0, om * (q * dt));
  }
  double area = 2.0 * mu * std::abs(acc) * dt;
  CHECK(area / pi == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("oct: input validation") {
  const Toy& t = toy();
  ControlProblem p;
  p.horizon = 800.0;
  CHECK_THROWS_AS(oct_optimize(p, t.plan), std::invalid_argument);

  p.initial = {t.states[0].state};
  p.target = {t.states[0].state, t.states[1].state};
  CHECK_THROWS_AS(oct_optimize(p, t.plan), std::invalid_argument);

  p.target = {t.states[0].state};
  p.horizon = 801.0;  // not a whole number of steps
  CHECK_THROWS_AS(oct_optimize(p, t.plan), std::invalid_argument);

  p.horizon = 800.0;
  p.alpha0 = 0.0;
  CHECK_THROWS_AS(oct_optimize(p, t.plan), std::invalid_argument);

  p.alpha0 = 1.2;
  WaveFunction unnorm = t.states[0].state;
  unnorm.scale(2.0);
  ControlProblem q = p;
  q.initial = {unnorm};
  CHECK_THROWS_AS(oct_optimize(q, t.plan), std::invalid_argument);

  // zero-order field on a different time grid
  p.zero_order = PolarizedField(TimeGrid(0.0, 400.0, 100));
  CHECK_THROWS_AS(oct_optimize(p, t.plan), std::invalid_argument);
}

TEST_CASE("oct: zero-order field endpoints survive into the result") {
  const Toy& t = toy();
  int n = 1500;
  double T = n * t.plan.dt;
  PolarizedField zo(TimeGrid(0.0, T, n));
  double om = t.states[t.excited].energy - t.states[0].energy;
  for (int q = 0; q <= n; ++q) {
    double tt = q * t.plan.dt;
    double s = std::sin(pi * tt / T);
    zo.ex[q] = 2e-4 * std::cos(om * tt) * s * s;
  }
  ControlProblem p;
  p.initial = {t.states[0].state};
  p.target = {t.states[t.excited].state};
  p.horizon = T;
  p.max_iterations = 2;
  p.zero_order = zo;
  OCTResult r = oct_optimize(p, t.plan);
  CHECK(r.field.ex.front() == zo.ex.front());
  CHECK(r.field.ex.back() == zo.ex.back());
  CHECK(r.objective.size() == 3);  // starting value plus two sweeps
  CHECK(r.objective[1] >= r.objective[0] - 1e-10);
  CHECK(r.objective[2] >= r.objective[1] - 1e-10);
}

TEST_CASE("local control: zero gain leaves the free evolution") {
  const Toy& t = toy();
  WaveFunction sup = superpose({std::sqrt(0.5), std::sqrt(0.5)},
                               {&t.states[0].state, &t.states[t.excited].state});
  sup.normalize();
  LocalControlConfig cfg;
  cfg.lambda_x = 0.0;
  cfg.lambda_y = 0.0;
  auto r = local_control_field(t.states[0].state, sup, 6000 * t.plan.dt, cfg,
                               t.plan);
  CHECK(r.field.peak() == 0.0);
  // eigenstate components only dephase, so the tracked overlap stays at the
  // initial projection
  CHECK(r.yield == doctest::Approx(0.5).epsilon(1e-4));
  CHECK(r.objective.front() == doctest::Approx(0.5).epsilon(1e-4));

  cfg.lambda_x = -1.0;
  CHECK_THROWS_AS(
      local_control_field(t.states[0].state, sup, 6000 * t.plan.dt, cfg, t.plan),
      std::invalid_argument);
}

TEST_CASE("local control: tracked overlap never decreases") {
  const Toy& t = toy();
  // finer steps keep the discrete tracking error under the monotone tolerance
  PropagationPlan plan1 = make_plan(t.grid, t.kin, 0.5, toy_potential, &t.dip);
  RelaxOptions ro;
  ro.count = 6;
  ro.residual_tol = 1e-9;
  auto st = relax_eigenstates(plan1, ro);
  WaveFunction sup = superpose({std::sqrt(0.5), std::sqrt(0.5)},
                               {&st[0].state, &st[t.excited].state});
  sup.normalize();
  LocalControlConfig cfg;
  cfg.lambda_x = 0.25;
  cfg.lambda_y = 0.25;
  auto r = local_control_field(st[0].state, sup, 48000.0, cfg, plan1);
  double worst = 0.0;
  for (std::size_t k = 1; k < r.objective.size(); ++k)
    worst = std::min(worst, r.objective[k] - r.objective[k - 1]);
  CHECK(worst >= -1e-10);
  CHECK(r.yield > r.objective.front() + 0.2);
}

TEST_CASE("local control matches a free-multiplier oct sweep when weak") {
  const Toy& t = toy();
  double T = 3000 * t.plan.dt;
  WaveFunction sup = superpose({std::sqrt(0.5), std::sqrt(0.5)},
                               {&t.states[0].state, &t.states[t.excited].state});
  sup.normalize();
  LocalControlConfig cfg;
  cfg.lambda_x = 1e-4;
  cfg.lambda_y = 1e-4;
  auto rl = local_control_field(t.states[0].state, sup, T, cfg, t.plan);

  ControlProblem p;
  p.initial = {t.states[0].state};
  p.target = {sup};
  p.horizon = T;
  p.alpha0 = 1e4;  // one weak sweep: the multiplier is effectively field-free
  p.max_iterations = 1;
  OCTResult ro = oct_optimize(p, t.plan);

  // up to the envelope and gain factors the two updates are the same formula
  double num = 0, na = 0, nb = 0;
  for (int q = 1; q < 3000; ++q) {
    double s = std::pow(std::sin(pi * (q * t.plan.dt) / T), 2);
    if (s < 1e-3) continue;
    double a = ro.field.ex[q] / s * p.alpha0;
    double b = rl.field.ex[q] / cfg.lambda_x;
    num += a * b;
    na += a * a;
    nb += b * b;
  }
  CHECK(num / std::sqrt(na * nb) >= 0.999);
}

TEST_CASE("multitarget: identity gate holds with a silent field") {
  const Toy& t = toy();
  double T = 2000 * t.plan.dt;
  // targets carry the free phases so the intended map is the identity in the
  // interaction picture
  WaveFunction t0 = t.states[0].state;
  t0.scale(std::polar(1.0, -t.states[0].energy * T));
  WaveFunction t1 = t.states[t.excited].state;
  t1.scale(std::polar(1.0, -t.states[t.excited].energy * T));
  ControlProblem p;
  p.initial = {t.states[0].state, t.states[t.excited].state};
  p.target = {t0, t1};
  p.horizon = T;
  p.max_iterations = 10;
  OCTResult r = multitarget_oct(p, t.plan);
  CHECK(r.converged);
  CHECK(r.final_yield >= 0.999);
  REQUIRE(!r.fidelity.empty());
  CHECK(r.fidelity.back() >= 0.999);
  CHECK(r.field.peak() <= 1e-6);
}

TEST_CASE("multitarget: rejects a non-orthonormal basis") {
  const Toy& t = toy();
  WaveFunction mix = superpose({std::sqrt(0.5), std::sqrt(0.5)},
                               {&t.states[0].state, &t.states[1].state});
  mix.normalize();
  ControlProblem p;
  p.initial = {t.states[0].state, mix};
  p.target = {t.states[0].state, t.states[1].state};
  p.horizon = 800.0;
  CHECK_THROWS_AS(multitarget_oct(p, t.plan), std::invalid_argument);

  // and a set that is not a power of two
  ControlProblem q;
  q.initial = {t.states[0].state, t.states[1].state, t.states[2].state};
  q.target = q.initial;
  q.horizon = 800.0;
  CHECK_THROWS_AS(multitarget_oct(q, t.plan), std::invalid_argument);
}
