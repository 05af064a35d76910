#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "triwell/analysis.hpp"

using namespace triwell;
using units::pi;

namespace {

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
  return v;
}

}  // namespace

TEST_CASE("blackman window: exact anchors and compact support") {
  for (double tau : {100.0, 8268.0}) {
    CHECK(blackman_window(0.0, tau) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::fabs(blackman_window(0.5 * tau, tau)) <= 1e-15);
    CHECK(std::fabs(blackman_window(-0.5 * tau, tau)) <= 1e-15);
    CHECK(blackman_window(0.5 * tau + 1e-9, tau) == 0.0);
    CHECK(blackman_window(-2.0 * tau, tau) == 0.0);
    // interior stays positive and below the peak
    for (double f : {0.1, 0.25, 0.4}) {
      double h = blackman_window(f * tau, tau);
      CHECK(h > 0.0);
      CHECK(h < 1.0);
    }
  }
  CHECK_THROWS_AS(blackman_window(0.0, 0.0), std::invalid_argument);
}

TEST_CASE("gabor: zero field gives a zero spectrogram") {
  std::vector<double> e(2001, 0.0);
  auto sp = gabor_transform(e, 1.0, 200.0, linspace(0.0, 0.2, 32),
                            linspace(400.0, 1600.0, 7));
  for (double p : sp.power) CHECK(p == 0.0);
  CHECK_THROWS_AS(dominant_frequency(sp, 1000.0), std::runtime_error);
}

TEST_CASE("gabor: single tone rides at its own frequency") {
  double om0 = 0.05, dt = 1.0, tau = 2000.0;
  int n = 20001;
  std::vector<double> e(n);
  for (int q = 0; q < n; ++q) e[q] = std::cos(om0 * q * dt);
  auto om_axis = linspace(0.005, 0.1, 192);
  auto t_axis = linspace(4000.0, 16000.0, 5);
  auto sp = gabor_transform(e, dt, tau, om_axis, t_axis);
  double res = 2.0 * pi / tau;
  for (double t : t_axis)
    CHECK(std::fabs(dominant_frequency(sp, t) - om0) <= res);
}

TEST_CASE("gabor: linear chirp tracks the instantaneous frequency") {
  double om0 = 0.03, rate = 2.0e-6, dt = 1.0, tau = 2500.0;
  int n = 24001;
  std::vector<double> e(n);
  for (int q = 0; q < n; ++q) {
    double t = q * dt;
    e[q] = std::cos(om0 * t + 0.5 * rate * t * t);
  }
  auto om_axis = linspace(0.02, 0.09, 256);
  auto t_axis = linspace(5000.0, 19000.0, 5);
  auto sp = gabor_transform(e, dt, tau, om_axis, t_axis);
  double res = 2.0 * pi / tau;
  for (double t : t_axis) {
    double want = om0 + rate * t;
    CHECK(std::fabs(dominant_frequency(sp, t) - want) <= res);
  }
}

TEST_CASE("gabor: quadratic amplitude scaling, invariant argmax") {
  double om0 = 0.04, dt = 2.0, tau = 1500.0;
  int n = 8001;
  std::vector<double> e(n), e2(n);
  for (int q = 0; q < n; ++q) {
    double t = q * dt;
    e[q] = std::cos(om0 * t) * std::exp(-1e-8 * (t - 8000.0) * (t - 8000.0));
    e2[q] = 2.0 * e[q];
  }
  auto om_axis = linspace(0.01, 0.08, 96);
  auto t_axis = linspace(3000.0, 13000.0, 4);
  auto a = gabor_transform(e, dt, tau, om_axis, t_axis);
  auto b = gabor_transform(e2, dt, tau, om_axis, t_axis);
  for (std::size_t k = 0; k < a.power.size(); ++k) {
    if (a.power[k] == 0.0)
      CHECK(b.power[k] == 0.0);
    else
      CHECK(b.power[k] / a.power[k] == doctest::Approx(4.0).epsilon(1e-12));
  }
  for (double t : t_axis)
    CHECK(dominant_frequency(a, t) == dominant_frequency(b, t));
}

TEST_CASE("gabor: input validation") {
  std::vector<double> e(100, 1.0);
  auto om = linspace(0.0, 0.1, 8);
  auto ta = linspace(10.0, 80.0, 3);
  CHECK_THROWS_AS(gabor_transform(e, 1.0, 5.0, om, ta), std::invalid_argument);
  CHECK_THROWS_AS(gabor_transform(e, 0.0, 50.0, om, ta), std::invalid_argument);
  CHECK_THROWS_AS(gabor_transform({1.0}, 1.0, 50.0, om, ta),
                  std::invalid_argument);
  std::vector<double> bad = {0.1, 0.05};
  CHECK_THROWS_AS(gabor_transform(e, 1.0, 50.0, bad, ta),
                  std::invalid_argument);
  std::vector<double> neg = {-0.1, 0.05};
  CHECK_THROWS_AS(gabor_transform(e, 1.0, 50.0, neg, ta),
                  std::invalid_argument);
  auto sp = gabor_transform(e, 1.0, 50.0, om, ta);
  CHECK_THROWS_AS(dominant_frequency(sp, -5.0), std::out_of_range);
  CHECK_THROWS_AS(dominant_frequency(sp, 500.0), std::out_of_range);
}

TEST_CASE("pulse area: rectangle and gaussian oracles") {
  // unit rectangle of duration d sampled densely
  double dt = 0.01;
  int n = 10001;  // d = 100
  std::vector<double> rect(n, 1.0);
  CHECK(pulse_area(rect, dt, 1.0) == doctest::Approx(100.0).epsilon(1e-12));
  CHECK(pulse_area(rect, dt, -2.5) == doctest::Approx(250.0).epsilon(1e-12));

  // gaussian envelope: area = E0 mu gamma sqrt(2 pi)
  double e0 = 3.7e-3, gam = 400.0, mu = 0.83, tc = 4000.0;
  double dtg = 1.0;
  int m = 8001;
  std::vector<double> g(m);
  for (int q = 0; q < m; ++q) {
    double t = q * dtg - tc + 4000.0;  // support spans +-10 gamma
    double x = (t - 4000.0) / gam;
    g[q] = e0 * std::exp(-0.5 * x * x);
  }
  double want = e0 * mu * gam * std::sqrt(2.0 * pi);
  CHECK(pulse_area(g, dtg, mu) == doctest::Approx(want).epsilon(1e-6));

  CHECK(pulse_area({}, 1.0, 1.0) == 0.0);
}
