#pragma once
#include <string>

#include "triwell/wavefunction.hpp"

namespace triwell {

// Assignment of an eigenstate to a well and to approximate vibrational
// quantum numbers. In the product double well the doublet notation is
// |n(+-), m> with n phi-quanta (per well) and m theta-quanta; reactant-well
// states are labelled |n, m>_R. parity is the exact phi-reflection parity.
enum class Well { DoubleWell, Reactant };

struct StateLabel {
  Well well = Well::DoubleWell;
  int parity = +1; // +1 even, -1 odd under phi -> -phi
  int n_phi_q = 0;
  int n_theta_q = 0;

  std::string to_string() const {
    std::string s = "|" + std::to_string(n_phi_q);
    if (well == Well::DoubleWell) s += (parity > 0 ? "+" : "-");
    s += "," + std::to_string(n_theta_q) + ">";
    if (well == Well::Reactant) s += "_R";
    return s;
  }

  bool operator==(const StateLabel& o) const {
    return well == o.well && parity == o.parity && n_phi_q == o.n_phi_q &&
           n_theta_q == o.n_theta_q;
  }
};

struct EigenPair {
  double energy = 0.0; // hartree
  StateLabel label;
  WaveFunction state;
  double residual = 0.0; // ||H psi - E psi|| in hartree
};

} // namespace triwell
