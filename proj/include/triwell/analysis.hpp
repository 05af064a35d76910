#pragma once

#include <vector>

#include "triwell/units.hpp"

namespace triwell {

// Time-frequency map of a sampled field component. power is row-major over
// (omega, t): power[i * t.size() + j] with all entries >= 0 and both axes
// strictly increasing. Only omega >= 0 is represented; the map of a real
// field is symmetric in omega.
struct Spectrogram {
  std::vector<double> t;      // a.u., analysis instants
  std::vector<double> omega;  // a.u., angular frequency
  std::vector<double> power;  // |windowed transform|^2
  double tau = 0.0;           // window width, a.u.

  double at(int i_omega, int j_t) const {
    return power[(std::size_t)i_omega * t.size() + (std::size_t)j_t];
  }
};

// Blackman window: 0.08 cos(4 pi s / tau) + 0.5 cos(2 pi s / tau) + 0.42 on
// |s| <= tau/2, zero outside. Unit value at s = 0, exact zeros at the edges.
double blackman_window(double s, double tau);

// Windowed Fourier magnitude of a uniformly sampled field component:
// F(omega, t) = |sum_q H(s_q - t, tau) E(s_q) e^{i omega s_q} dt|^2 by
// trapezoid quadrature over the window support. Requires tau >= 10 dt.
Spectrogram gabor_transform(const std::vector<double>& samples, double dt,
                            double tau, const std::vector<double>& omega_axis,
                            const std::vector<double>& time_axis);

// argmax over omega of the power column nearest to t; throws if t falls
// outside the axis or the column carries no signal.
double dominant_frequency(const Spectrogram& spec, double t);

// Pulse area |mu| * integral of |E(t)| dt (trapezoid rule).
double pulse_area(const std::vector<double>& samples, double dt, double mu);

}  // namespace triwell
