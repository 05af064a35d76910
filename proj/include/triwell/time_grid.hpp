#pragma once
#include <stdexcept>

namespace triwell {

// Uniform time discretization of [t_start, t_end] into n_steps steps.
// Fields are sampled at the n_steps+1 step boundaries; the propagator uses
// the average of adjacent samples as the midpoint value of each step.
struct TimeGrid {
  double t_start = 0.0;
  double t_end = 0.0;
  int n_steps = 0;

  TimeGrid() = default;
  TimeGrid(double t0, double t1, int n) : t_start(t0), t_end(t1), n_steps(n) {
    if (n < 1) throw std::invalid_argument("TimeGrid: n_steps must be >= 1");
    if (!(t1 > t0)) throw std::invalid_argument("TimeGrid: t_end must exceed t_start");
  }

  double dt() const { return (t_end - t_start) / n_steps; }
  double horizon() const { return t_end - t_start; }
  double boundary(int i) const { return t_start + i * dt(); }
  double mid(int i) const { return t_start + (i + 0.5) * dt(); }
};

} // namespace triwell
