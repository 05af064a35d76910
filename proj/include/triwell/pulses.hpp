#pragma once
#include <vector>

#include "triwell/field.hpp"

namespace triwell {

enum class Axis { X, Y };

// Gaussian-envelope carrier pulse E(t) = A exp(-(t-t0)^2/2w^2) cos(om t + ph).
// The carrier phase is referenced to t = 0, not to the pulse center, so the
// relative phases of overlapping pulses at one carrier add coherently;
// compound envelopes (sums and differences of Gaussians) are expressed as
// several pulses sharing a carrier with phases 0 or pi.
struct GaussianPulse {
  Axis axis = Axis::X;
  double amplitude = 0.0; // peak field, a.u.
  double carrier = 0.0;   // angular frequency, a.u.
  double center = 0.0;    // a.u. of time
  double width = 0.0;     // Gaussian sigma, a.u. of time
  double phase = 0.0;     // rad

  double envelope(double t) const;
  double value(double t) const;
};

struct PulseSequence {
  std::vector<GaussianPulse> pulses;
  double duration = 0.0; // fields live on [0, duration]

  // Peak field per axis if all envelopes aligned (conservative bound).
  double amplitude_bound(Axis axis) const;
  // Warns when a pulse sticks out of the window by more than clip_sigmas.
  void check_support(double clip_sigmas = 4.0) const;
  PolarizedField sample(const TimeGrid& tg) const;
};

} // namespace triwell
