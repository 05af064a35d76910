#pragma once

#include <string>
#include <utility>
#include <vector>

namespace triwell {

enum class ScenarioKind {
  Calibrate,
  Eigen,
  FstirapLocalize,
  LocalizedSwap,
  PhaseGateAdiabatic,
  CnotAdiabatic,
  OctLocalize,
  OctHadamard,
  OctPhase,
  OctCnot,
  OctBifurcation,
  LocalControl,
  RobustnessScan,
  Gabor,
};

std::string to_string(ScenarioKind k);
ScenarioKind scenario_from_string(const std::string& name);  // throws

// One scenario invocation, fully resolved: every field has a value after
// parse_config so the manifest can echo the effective configuration.
struct ScenarioConfig {
  ScenarioKind kind = ScenarioKind::Eigen;
  std::string variant = "qcisd";  // qcisd | mp2

  int n_theta = 32;
  int n_phi = 32;

  double dt = 4.0;           // a.u.
  double duration_ps = 20.0;

  // pulse-scheme parameters
  double rabi = 8.0e-5;           // peak Rabi frequency, a.u.
  double delay_fraction = 0.10;   // pump-Stokes delay over duration
  double width_fraction = 0.0;    // 0 keeps the builder default
  std::string intermediate = "1+";
  double epsilon = 1.0;
  double gate_phase = 0.78539816339744831;  // radians

  // iterative-control parameters
  double alpha0 = 1.2;
  int max_iterations = 50;
  double gain_tol = 1e-6;
  int n_states = 12;
  double lambda_x = 8.0;
  double lambda_y = 1.2;
  double zero_order_amp = 0.02;  // a.u.

  // robustness-scan axes
  double rabi_min = 1e-5;
  double rabi_max = 5e-4;
  double delay_min = 5e4;   // a.u.
  double delay_max = 5e5;   // a.u.
  int scan_n_rabi = 16;
  int scan_n_delay = 16;
  double short_duration_ps = 4.5;  // comparison duration

  // time-frequency analysis
  std::string field_csv;
  double gabor_tau_ps = 0.2;
  int gabor_n_omega = 512;
  double omega_max_cm1 = 0.0;  // 0 = choose from the field content

  // scenario-level pass thresholds (exit status), not physics
  double min_yield = 0.0;

  std::string output_dir = "runs";
  unsigned seed = 2026;
  int threads = 1;
  bool force = false;

  bool operator==(const ScenarioConfig&) const = default;
};

// Plain-text sections of key = value pairs; '#' or ';' start a comment.
// Unknown sections or keys, duplicates, malformed lines, and out-of-range
// values are all reported with the offending line number.
ScenarioConfig parse_config(const std::string& path);
ScenarioConfig parse_config_text(const std::string& text,
                                 const std::string& name);

// Resolved-config echo; parsing the dump reproduces the config exactly.
std::string dump_config(const ScenarioConfig& c);

}  // namespace triwell
