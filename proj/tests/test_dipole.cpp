#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "triwell/dipole.hpp"
#include "triwell/units.hpp"

using namespace triwell;
using units::pi;

TEST_CASE("frame-fixed magnitude polynomial") {
  DipoleSurface d;
  // cos(0) = 1: the coefficients sum to 0.19 a.u.
  CHECK(d.mu_cs(0.0) == doctest::Approx(0.19).epsilon(1e-12));
  // cos(pi) = -1: alternating sum.
  CHECK(d.mu_cs(pi) ==
        doctest::Approx(0.7 - 1.1 + 0.5 + 1.0 - 1.11).epsilon(1e-12));
}

TEST_CASE("projection values at the equator") {
  DipoleSurface d;
  // At theta = pi/2 both switch functions equal 0.9 and mu_cs = 0.7, so the
  // x projection at phi = 0 is 0.7 * (0.9 + 0.9) = 1.26.
  CHECK(d.mu_x(pi / 2, 0.0) == doctest::Approx(1.26).epsilon(1e-9));
  // The y switch equals 2.4 at the equator: 0.7 * 2.4 = 1.68.
  CHECK(d.mu_y(pi / 2, pi / 2) == doctest::Approx(1.68).epsilon(1e-9));
}

TEST_CASE("switch functions are complementary") {
  DipoleSurface d;
  for (double th = 0.05; th < pi; th += 0.13)
    CHECK(d.f1(th) + d.f2(th) == doctest::Approx(1.8).epsilon(1e-12));
}

TEST_CASE("reflection symmetry about phi = 0") {
  DipoleSurface d;
  for (double th = 0.2; th < pi; th += 0.37)
    for (double ph = 0.1; ph < pi; ph += 0.41) {
      CHECK(d.mu_x(th, ph) == doctest::Approx(d.mu_x(th, -ph)).epsilon(1e-13));
      CHECK(d.mu_y(th, ph) == doctest::Approx(-d.mu_y(th, -ph)).epsilon(1e-13));
    }
}

TEST_CASE("y component vanishes on the symmetry line") {
  DipoleSurface d;
  for (double th = 0.2; th < pi; th += 0.3) {
    CHECK(d.mu_y(th, 0.0) == 0.0);
    CHECK(std::fabs(d.mu_y(th, pi)) < 1e-15);
  }
}
