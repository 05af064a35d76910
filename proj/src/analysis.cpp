#include "triwell/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace triwell {

double blackman_window(double s, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("blackman_window: tau <= 0");
  if (std::fabs(s) > 0.5 * tau) return 0.0;
  double x = s / tau;
  return 0.08 * std::cos(4.0 * units::pi * x) +
         0.5 * std::cos(2.0 * units::pi * x) + 0.42;
}

Spectrogram gabor_transform(const std::vector<double>& samples, double dt,
                            double tau, const std::vector<double>& omega_axis,
                            const std::vector<double>& time_axis) {
  if (samples.size() < 2 || !(dt > 0.0))
    throw std::invalid_argument("gabor_transform: need uniform samples");
  if (tau < 10.0 * dt)
    throw std::invalid_argument(
        "gabor_transform: window narrower than 10 sample intervals");
  if (omega_axis.empty() || time_axis.empty())
    throw std::invalid_argument("gabor_transform: empty axis");
  for (std::size_t k = 1; k < omega_axis.size(); ++k)
    if (!(omega_axis[k] > omega_axis[k - 1]))
      throw std::invalid_argument("gabor_transform: omega axis not increasing");
  for (std::size_t k = 1; k < time_axis.size(); ++k)
    if (!(time_axis[k] > time_axis[k - 1]))
      throw std::invalid_argument("gabor_transform: time axis not increasing");
  if (omega_axis.front() < 0.0)
    throw std::invalid_argument("gabor_transform: omega axis must be >= 0");

  Spectrogram sp;
  sp.t = time_axis;
  sp.omega = omega_axis;
  sp.tau = tau;
  sp.power.assign(omega_axis.size() * time_axis.size(), 0.0);

  const int n = (int)samples.size();
  for (std::size_t j = 0; j < time_axis.size(); ++j) {
    double tc = time_axis[j];
    int q0 = std::max(0, (int)std::ceil((tc - 0.5 * tau) / dt));
    int q1 = std::min(n - 1, (int)std::floor((tc + 0.5 * tau) / dt));
    for (std::size_t i = 0; i < omega_axis.size(); ++i) {
      double om = omega_axis[i];
      std::complex<double> acc(0.0, 0.0);
      for (int q = q0; q <= q1; ++q) {
        double s = q * dt;
        double h = blackman_window(s - tc, tau);
        if (h == 0.0) continue;
        double w = (q == q0 || q == q1) ? 0.5 : 1.0;
        acc += w * h * samples[q] * std::polar(1.0, om * s);
      }
      sp.power[i * time_axis.size() + j] = std::norm(acc * dt);
    }
  }
  return sp;
}

double dominant_frequency(const Spectrogram& spec, double t) {
  if (spec.t.empty() || spec.omega.empty())
    throw std::invalid_argument("dominant_frequency: empty spectrogram");
  if (t < spec.t.front() - 1e-9 || t > spec.t.back() + 1e-9)
    throw std::out_of_range("dominant_frequency: t outside the time axis");
  std::size_t j = 0;
  double dbest = std::fabs(spec.t[0] - t);
  for (std::size_t k = 1; k < spec.t.size(); ++k) {
    double d = std::fabs(spec.t[k] - t);
    if (d < dbest) {
      dbest = d;
      j = k;
    }
  }
  std::size_t ibest = 0;
  double pmax = -1.0;
  for (std::size_t i = 0; i < spec.omega.size(); ++i) {
    double p = spec.power[i * spec.t.size() + j];
    if (p > pmax) {
      pmax = p;
      ibest = i;
    }
  }
  if (!(pmax > 0.0))
    throw std::runtime_error("dominant_frequency: no signal at this instant");
  return spec.omega[ibest];
}

double pulse_area(const std::vector<double>& samples, double dt, double mu) {
  if (samples.size() < 2) return 0.0;
  double s = 0.5 * (std::fabs(samples.front()) + std::fabs(samples.back()));
  for (std::size_t q = 1; q + 1 < samples.size(); ++q)
    s += std::fabs(samples[q]);
  return s * dt * std::fabs(mu);
}

}  // namespace triwell
