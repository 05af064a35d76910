#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "triwell/grid.hpp"
#include "triwell/time_grid.hpp"
#include "triwell/units.hpp"
#include "triwell/wavefunction.hpp"

using namespace triwell;
using units::pi;

static WaveFunction random_state(std::shared_ptr<const AngularGrid> g, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  WaveFunction psi(std::move(g));
  for (auto& z : psi.amp) z = cplx(u(rng), u(rng));
  return psi;
}

TEST_CASE("grid layout and quadrature weights") {
  auto g = AngularGrid::make(64, 64);
  CHECK(g.theta.front() == doctest::Approx(pi / 65.0).epsilon(1e-14));
  CHECK(g.theta.back() == doctest::Approx(64.0 * pi / 65.0).epsilon(1e-14));
  CHECK(g.phi.front() == doctest::Approx(-pi).epsilon(1e-14));
  CHECK(g.phi.back() == doctest::Approx(pi - g.dphi).epsilon(1e-12));
  CHECK(g.cell() == doctest::Approx(g.dtheta * g.dphi).epsilon(1e-15));

  // the discrete sine basis is exactly orthogonal under this rectangle rule
  for (int m : {1, 3, 7}) {
    for (int n : {1, 3, 7}) {
      long double s = 0.0L;
      for (int i = 0; i < g.n_theta; ++i)
        s += std::sin(m * g.theta[i]) * std::sin(n * g.theta[i]);
      s *= g.dtheta;
      double expect = (m == n) ? pi / 2.0 : 0.0;
      CHECK(std::abs((double)s - expect) < 1e-12);
    }
  }

  CHECK_THROWS_AS(AngularGrid::make(4, 64), std::invalid_argument);
  CHECK_THROWS_AS(AngularGrid::make(64, 63), std::invalid_argument);
}

TEST_CASE("norm matches brute-force quadrature") {
  auto g = AngularGrid::make_shared(64, 64);
  WaveFunction psi(g);
  for (int i = 0; i < g->n_theta; ++i)
    for (int j = 0; j < g->n_phi; ++j) {
      double th = g->theta[i], ph = g->phi[j];
      psi.at(i, j) = std::sqrt(std::sin(th)) *
                     std::exp(-((th - pi / 2) * (th - pi / 2) + ph * ph) / 0.5);
    }
  // independent brute-force rectangle sum
  long double brute = 0.0L;
  for (int i = 0; i < g->n_theta; ++i)
    for (int j = 0; j < g->n_phi; ++j) {
      double th = g->theta[i], ph = g->phi[j];
      double v = std::sqrt(std::sin(th)) *
                 std::exp(-((th - pi / 2) * (th - pi / 2) + ph * ph) / 0.5);
      brute += (long double)(v * v);
    }
  brute *= (long double)(g->dtheta * g->dphi);
  CHECK(std::abs(psi.norm2() - (double)brute) < 1e-12);
}

TEST_CASE("inner product: conjugate symmetry and sesquilinearity") {
  auto g = AngularGrid::make_shared(16, 16);
  auto a = random_state(g, 1), b = random_state(g, 2);
  cplx ab = inner_product(a, b), ba = inner_product(b, a);
  CHECK(std::abs(ab - std::conj(ba)) < 1e-14 * std::abs(ab));

  // <a | c1 b1 + c2 b2> = c1 <a|b1> + c2 <a|b2>
  auto b2 = random_state(g, 3);
  cplx c1(0.3, -1.1), c2(-0.7, 0.2);
  auto combo = superpose({c1, c2}, {&b, &b2});
  cplx lhs = inner_product(a, combo);
  cplx rhs = c1 * inner_product(a, b) + c2 * inner_product(a, b2);
  CHECK(std::abs(lhs - rhs) < 1e-12 * std::abs(lhs));

  auto g2 = AngularGrid::make_shared(16, 32);
  WaveFunction other(g2);
  CHECK_THROWS_AS(inner_product(a, other), std::invalid_argument);
  CHECK_THROWS_AS(superpose({}, {}), std::invalid_argument);
}

TEST_CASE("expectation of theta on a localized packet") {
  auto g = AngularGrid::make_shared(128, 64);
  auto psi = make_gaussian(g, 2.0, 0.0, 0.12, 0.3);
  CHECK(expectation_theta(psi) == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(std::abs(expectation_phi(psi)) < 1e-10);
}

TEST_CASE("populations of an orthonormal doublet-like pair") {
  auto g = AngularGrid::make_shared(64, 64);
  // Two overlapping Gaussians, Gram-Schmidt orthonormalized: a stand-in for
  // the symmetric/antisymmetric pair of a double well.
  auto e0 = make_gaussian(g, 1.0, 1.3, 0.2, 0.35);
  auto e1_raw = make_gaussian(g, 1.0, -1.3, 0.2, 0.35);
  cplx ov = inner_product(e0, e1_raw);
  auto e1 = superpose({cplx(1.0, 0.0), -ov}, {&e1_raw, &e0});
  e1.normalize();

  cplx inv_sqrt2(1.0 / std::sqrt(2.0), 0.0);
  auto left = superpose({inv_sqrt2, inv_sqrt2}, {&e0, &e1});
  auto pops = project_populations(left, {&e0, &e1});
  CHECK(pops.p[0] == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(pops.p[1] == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(std::abs(pops.residual) < 1e-10);
  CHECK(pops.residual > -1e-8);
}

TEST_CASE("phi reflection and parity projectors") {
  auto g = AngularGrid::make_shared(16, 16);
  auto psi = random_state(g, 5);
  auto twice = reflect_phi(reflect_phi(psi));
  for (size_t i = 0; i < psi.amp.size(); ++i) CHECK(psi.amp[i] == twice.amp[i]);

  auto even = psi, odd = psi;
  parity_project(even, +1);
  parity_project(odd, -1);
  // projectors are idempotent and complementary
  auto even2 = even;
  parity_project(even2, +1);
  for (size_t i = 0; i < even.amp.size(); ++i)
    CHECK(std::abs(even.amp[i] - even2.amp[i]) < 1e-15);
  for (size_t i = 0; i < psi.amp.size(); ++i)
    CHECK(std::abs(even.amp[i] + odd.amp[i] - psi.amp[i]) < 1e-15);
  // parity sectors are orthogonal
  CHECK(std::abs(inner_product(even, odd)) < 1e-14);
}

TEST_CASE("time grid") {
  TimeGrid tg(0.0, 1000.0, 250);
  CHECK(tg.dt() == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(tg.boundary(0) == 0.0);
  CHECK(tg.boundary(250) == doctest::Approx(1000.0).epsilon(1e-15));
  CHECK(tg.mid(0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK_THROWS_AS(TimeGrid(0.0, 1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(TimeGrid(1.0, 0.0, 10), std::invalid_argument);
}
