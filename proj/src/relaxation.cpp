#include "triwell/relaxation.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "triwell/log.hpp"

namespace triwell {

namespace {

struct DecayTables {
  std::vector<double> theta_half; // includes DST round-trip normalization
  std::vector<double> phi_full;   // includes FFT normalization
  std::vector<double> w_half;     // shifted by min(V+v) to avoid underflow
};

DecayTables make_decay(const PropagationPlan& p, double dtau) {
  const auto& g = *p.grid;
  DecayTables d;
  double dst_norm = 1.0 / (2.0 * (g.n_theta + 1));
  d.theta_half.resize(g.n_theta);
  for (int k = 0; k < g.n_theta; ++k)
    d.theta_half[k] = std::exp(-p.theta_kin[k] * dtau * 0.5) * dst_norm;
  d.phi_full.resize(g.size());
  double fft_norm = 1.0 / g.n_phi;
  for (int i = 0; i < g.n_theta; ++i)
    for (int j = 0; j < g.n_phi; ++j)
      d.phi_full[(std::size_t)i * g.n_phi + j] =
          std::exp(-p.phi_kin_row[j] * g.inv_sin2_theta[i] * dtau) * fft_norm;
  double vmin = *std::min_element(p.v_static.begin(), p.v_static.end());
  d.w_half.resize(g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    d.w_half[i] = std::exp(-(p.v_static[i] - vmin) * dtau * 0.5);
  return d;
}

void decay_step(WaveFunction& psi, const PropagationPlan& p,
                const DecayTables& d) {
  auto& a = psi.amp;
  const auto& g = *p.grid;
  for (std::size_t i = 0; i < a.size(); ++i) a[i] *= d.w_half[i];
  p.kernel->dst_theta(a.data());
  for (int k = 0; k < g.n_theta; ++k) {
    double f = d.theta_half[k];
    cplx* row = a.data() + (std::size_t)k * g.n_phi;
    for (int j = 0; j < g.n_phi; ++j) row[j] *= f;
  }
  p.kernel->dst_theta(a.data());
  p.kernel->fft_phi(a.data(), -1);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] *= d.phi_full[i];
  p.kernel->fft_phi(a.data(), +1);
  p.kernel->dst_theta(a.data());
  for (int k = 0; k < g.n_theta; ++k) {
    double f = d.theta_half[k];
    cplx* row = a.data() + (std::size_t)k * g.n_phi;
    for (int j = 0; j < g.n_phi; ++j) row[j] *= f;
  }
  p.kernel->dst_theta(a.data());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] *= d.w_half[i];
}

// Modified Gram-Schmidt in place; states assumed nonzero after projection.
void orthonormalize(std::vector<WaveFunction>& block) {
  for (std::size_t i = 0; i < block.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      cplx c = inner_product(block[j], block[i]);
      for (std::size_t k = 0; k < block[i].amp.size(); ++k)
        block[i].amp[k] -= c * block[j].amp[k];
    }
    double n = block[i].norm();
    if (n < 1e-14)
      throw std::runtime_error("relaxation: block became linearly dependent");
    block[i].scale(1.0 / n);
  }
}

// Diagonalizes H restricted to the span of the block and rotates the block
// into the Ritz states. Returns energies and residual norms.
void ritz_rotate(std::vector<WaveFunction>& block, const PropagationPlan& plan,
                 std::vector<double>& energies, std::vector<double>& residuals) {
  const int k = static_cast<int>(block.size());
  std::vector<WaveFunction> hpsi(k);
  for (int i = 0; i < k; ++i) hpsi[i] = apply_h0(block[i], plan);

  Eigen::MatrixXd b(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j <= i; ++j) {
      double v = inner_product(block[i], hpsi[j]).real();
      b(i, j) = v;
      b(j, i) = v;
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b);
  Eigen::MatrixXd u = es.eigenvectors();

  std::vector<WaveFunction> rot(k), hrot(k);
  for (int c = 0; c < k; ++c) {
    rot[c] = WaveFunction(block[0].grid);
    hrot[c] = WaveFunction(block[0].grid);
    for (int i = 0; i < k; ++i) {
      double w = u(i, c);
      for (std::size_t m = 0; m < rot[c].amp.size(); ++m) {
        rot[c].amp[m] += w * block[i].amp[m];
        hrot[c].amp[m] += w * hpsi[i].amp[m];
      }
    }
  }
  energies.resize(k);
  residuals.resize(k);
  for (int c = 0; c < k; ++c) {
    energies[c] = es.eigenvalues()(c);
    WaveFunction r = hrot[c];
    for (std::size_t m = 0; m < r.amp.size(); ++m)
      r.amp[m] -= energies[c] * rot[c].amp[m];
    residuals[c] = r.norm();
    rot[c].normalize();
  }
  block = std::move(rot);
}

std::vector<EigenPair> relax_sector(const PropagationPlan& plan, int sector,
                                    int count, const RelaxOptions& opts) {
  const auto& g = *plan.grid;
  std::mt19937 rng(opts.seed + (sector > 0 ? 0 : 77));
  std::uniform_real_distribution<double> uni(-1.0, 1.0);

  std::vector<WaveFunction> block(count);
  for (int s = 0; s < count; ++s) {
    block[s] = WaveFunction(plan.grid);
    for (int i = 0; i < g.n_theta; ++i) {
      // Damp seeds near the poles where the centrifugal wall is steep.
      double env = std::pow(std::sin(g.theta[i]), 2.0);
      for (int j = 0; j < g.n_phi; ++j)
        block[s].at(i, j) = uni(rng) * env;
    }
    parity_project(block[s], sector);
    block[s].normalize();
  }
  orthonormalize(block);

  auto run_stage = [&](double dtau, int steps) {
    DecayTables d = make_decay(plan, dtau);
    for (int it = 0; it < steps; ++it) {
      for (auto& psi : block) {
        decay_step(psi, plan, d);
        parity_project(psi, sector); // guards against numerical sector drift
      }
      orthonormalize(block);
    }
  };

  for (const auto& [dtau, steps] : opts.schedule) run_stage(dtau, steps);

  std::vector<double> energies, residuals;
  ritz_rotate(block, plan, energies, residuals);
  // The Ritz residual floor scales with dtau^2 (splitting error keeps
  // re-mixing the span), so halve dtau whenever a round stalls.
  double dtau = opts.polish_dtau;
  double prev_worst = 1e300;
  for (int round = 0; round < opts.max_polish_rounds; ++round) {
    double worst = *std::max_element(residuals.begin(), residuals.end());
    if (worst < opts.residual_tol) break;
    if (worst > 0.5 * prev_worst) dtau = std::max(0.02, dtau * 0.5);
    prev_worst = worst;
    run_stage(dtau, opts.polish_steps);
    ritz_rotate(block, plan, energies, residuals);
  }

  double worst = *std::max_element(residuals.begin(), residuals.end());
  if (worst >= opts.residual_tol)
    logsink::warn("relax_eigenstates: residual " + std::to_string(worst) +
                  " hartree above tolerance after polish");

  std::vector<EigenPair> out(count);
  for (int s = 0; s < count; ++s) {
    out[s].energy = energies[s];
    out[s].residual = residuals[s];
    out[s].state = std::move(block[s]);
    out[s].label.parity = sector;
  }
  return out;
}

} // namespace

std::vector<EigenPair> relax_eigenstates(const PropagationPlan& plan,
                                         const RelaxOptions& opts) {
  if (opts.count < 1) throw std::invalid_argument("relax: count must be >= 1");
  std::vector<EigenPair> all;
  if (opts.sector != 0) {
    all = relax_sector(plan, opts.sector, opts.count, opts);
  } else {
    // Eigenstates alternate parity in near-degenerate pairs, so each sector
    // contributes roughly half of the lowest states; a margin of three per
    // sector covers uneven interleaving.
    int per = opts.count / 2 + 3;
    all = relax_sector(plan, +1, per, opts);
    auto odd = relax_sector(plan, -1, per, opts);
    all.insert(all.end(), std::make_move_iterator(odd.begin()),
               std::make_move_iterator(odd.end()));
    std::sort(all.begin(), all.end(),
              [](const EigenPair& a, const EigenPair& b) {
                return a.energy < b.energy;
              });
    all.resize(opts.count);
  }
  return all;
}

namespace {

int count_sign_changes(const std::vector<double>& vals,
                       const std::vector<double>& mags, double thresh) {
  int changes = 0;
  double prev = 0.0;
  bool have = false;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (mags[i] < thresh) continue;
    if (have && vals[i] * prev < 0.0) ++changes;
    prev = vals[i];
    have = true;
  }
  return changes;
}

} // namespace

void assign_labels(std::vector<EigenPair>& states, const LabelContext& ctx) {
  for (auto& ep : states) {
    WaveFunction& psi = ep.state;
    const auto& g = *psi.grid;

    WaveFunction refl = reflect_phi(psi);
    double par = inner_product(refl, psi).real();
    if (std::fabs(std::fabs(par) - 1.0) > 1e-3)
      logsink::warn("assign_labels: state has mixed phi parity, <R> = " +
                    std::to_string(par));
    ep.label.parity = par >= 0.0 ? +1 : -1;

    ep.label.well = expectation_theta(psi) > ctx.theta_split
                        ? Well::Reactant
                        : Well::DoubleWell;

    // Peak cell and row/column cuts for node counting.
    std::size_t peak = 0;
    double pmax = 0.0;
    for (std::size_t i = 0; i < psi.amp.size(); ++i)
      if (std::abs(psi.amp[i]) > pmax) {
        pmax = std::abs(psi.amp[i]);
        peak = i;
      }
    int ip = static_cast<int>(peak) / g.n_phi;
    int jp = static_cast<int>(peak) % g.n_phi;

    std::vector<double> vals, mags;
    if (ep.label.well == Well::DoubleWell) {
      // Count phi nodes within the well that holds the peak; phi = 0 and
      // phi = -pi are skipped so odd-state symmetry nodes are not counted.
      int j0 = jp >= g.n_phi / 2 ? g.n_phi / 2 + 1 : 1;
      int j1 = jp >= g.n_phi / 2 ? g.n_phi : g.n_phi / 2;
      for (int j = j0; j < j1; ++j) {
        vals.push_back(psi.at(ip, j).real());
        mags.push_back(std::abs(psi.at(ip, j)));
      }
    } else {
      for (int j = 0; j < g.n_phi; ++j) {
        vals.push_back(psi.at(ip, j).real());
        mags.push_back(std::abs(psi.at(ip, j)));
      }
    }
    ep.label.n_phi_q = count_sign_changes(vals, mags, 0.02 * pmax);

    vals.clear();
    mags.clear();
    for (int i = 0; i < g.n_theta; ++i) {
      vals.push_back(psi.at(i, jp).real());
      mags.push_back(std::abs(psi.at(i, jp)));
    }
    ep.label.n_theta_q = count_sign_changes(vals, mags, 0.02 * pmax);

    // Base sign gauge: even states integrate positive, odd states are set
    // positive at the peak for now (pair rule below may flip them).
    if (ep.label.parity > 0) {
      long double s = 0.0L;
      for (const auto& a : psi.amp) s += a.real();
      if (s < 0) psi.scale(-1.0);
    } else if (psi.amp[peak].real() < 0) {
      psi.scale(-1.0);
    }
  }

  // Orient odd double-well states so that (even + odd)/sqrt(2) of a tunnel
  // pair lives on the phi < 0 side.
  for (auto& odd : states) {
    if (odd.label.parity >= 0 || odd.label.well != Well::DoubleWell) continue;
    for (auto& even : states) {
      if (even.label.parity <= 0 || even.label.well != Well::DoubleWell)
        continue;
      if (even.label.n_phi_q != odd.label.n_phi_q ||
          even.label.n_theta_q != odd.label.n_theta_q)
        continue;
      WaveFunction left = superpose({1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)},
                                    {&even.state, &odd.state});
      if (expectation_phi(left) > 0.0) odd.state.scale(-1.0);
      break;
    }
  }
}

const EigenPair& find_state(const std::vector<EigenPair>& states,
                            const StateLabel& want) {
  for (const auto& s : states)
    if (s.label == want) return s;
  throw std::runtime_error("find_state: no state labeled " + want.to_string());
}

} // namespace triwell
