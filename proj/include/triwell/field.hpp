#pragma once
#include <cmath>
#include <stdexcept>
#include <vector>

#include "triwell/time_grid.hpp"

namespace triwell {

// Two-component laser field sampled at the n_steps+1 step boundaries of a
// TimeGrid. The propagator evaluates the field at a step midpoint as the
// average of the two adjacent boundary samples, which keeps the split-operator
// step second order while letting control algorithms update boundary samples
// in place during a sweep.
struct PolarizedField {
  TimeGrid tg;
  std::vector<double> ex, ey; // a.u., size tg.n_steps + 1

  PolarizedField() = default; // empty; assign before use

  explicit PolarizedField(const TimeGrid& t)
      : tg(t), ex(t.n_steps + 1, 0.0), ey(t.n_steps + 1, 0.0) {}

  static PolarizedField zero(const TimeGrid& t) { return PolarizedField(t); }

  std::size_t samples() const { return ex.size(); }

  double mid_x(int step) const { return 0.5 * (ex[step] + ex[step + 1]); }
  double mid_y(int step) const { return 0.5 * (ey[step] + ey[step + 1]); }

  double peak() const {
    double p = 0.0;
    for (std::size_t i = 0; i < ex.size(); ++i)
      p = std::max(p, std::hypot(ex[i], ey[i]));
    return p;
  }

  // Fluence-like diagnostic: integral of |E|^2 dt by the trapezoid rule.
  double energy_integral() const {
    double s = 0.0;
    for (std::size_t i = 0; i < ex.size(); ++i) {
      double w = (i == 0 || i + 1 == ex.size()) ? 0.5 : 1.0;
      s += w * (ex[i] * ex[i] + ey[i] * ey[i]);
    }
    return s * tg.dt();
  }

  void check_compatible(const PolarizedField& o) const {
    if (tg.n_steps != o.tg.n_steps)
      throw std::invalid_argument("PolarizedField: step-count mismatch");
  }
};

// Signed time integral of one polarization component (trapezoid rule).
inline double field_time_integral(const std::vector<double>& e, double dt) {
  if (e.size() < 2) return 0.0;
  double s = 0.5 * (e.front() + e.back());
  for (std::size_t i = 1; i + 1 < e.size(); ++i) s += e[i];
  return s * dt;
}

} // namespace triwell
