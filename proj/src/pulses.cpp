#include "triwell/pulses.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "triwell/log.hpp"

namespace triwell {

double GaussianPulse::envelope(double t) const {
  const double u = (t - center) / width;
  return std::exp(-0.5 * u * u);
}

double GaussianPulse::value(double t) const {
  return amplitude * envelope(t) * std::cos(carrier * t + phase);
}

double PulseSequence::amplitude_bound(Axis axis) const {
  double s = 0.0;
  for (const auto& p : pulses)
    if (p.axis == axis) s += std::fabs(p.amplitude);
  return s;
}

void PulseSequence::check_support(double clip_sigmas) const {
  if (duration <= 0) throw std::invalid_argument("PulseSequence: duration <= 0");
  for (const auto& p : pulses) {
    if (p.width <= 0) throw std::invalid_argument("PulseSequence: width <= 0");
    if (p.center - clip_sigmas * p.width < 0.0 ||
        p.center + clip_sigmas * p.width > duration)
      logsink::warn("pulse at t0 = " + std::to_string(p.center) +
                    " is clipped by the propagation window");
  }
}

PolarizedField PulseSequence::sample(const TimeGrid& tg) const {
  PolarizedField f(tg);
  for (int i = 0; i <= tg.n_steps; ++i) {
    const double t = tg.boundary(i);
    for (const auto& p : pulses)
      (p.axis == Axis::X ? f.ex[i] : f.ey[i]) += p.value(t);
  }
  return f;
}

} // namespace triwell
