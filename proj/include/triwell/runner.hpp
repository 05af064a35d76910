#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "triwell/config.hpp"

namespace triwell {

std::string toolkit_version();

// One file produced by a run, identified relative to the run directory and
// fingerprinted so reruns can be compared without byte-level diffs.
struct OutputRecord {
  std::string name;
  std::uint64_t bytes = 0;
  std::uint64_t fnv1a = 0;
};

// Everything needed to audit or reproduce a run: the resolved configuration,
// the produced files with checksums, scalar results, and stage timings.
// Identical config and version give identical output checksums; timings are
// the only nondeterministic entries.
struct RunManifest {
  std::string version;
  ScenarioConfig config;
  std::string calibration;  // calibration report text when the run makes one
  std::vector<OutputRecord> outputs;
  std::map<std::string, double> metrics;
  std::map<std::string, double> timings_s;
  std::vector<std::string> notes;
  bool thresholds_met = true;
  bool partial = false;  // an error interrupted the run after output began

  std::string to_json() const;
};

// 64-bit FNV-1a fingerprints.
std::uint64_t fnv1a64(const void* data, std::size_t n);
std::uint64_t file_fnv1a(const std::string& path);

// Executes one scenario: builds the surface/eigenbasis as needed, runs the
// control or analysis pipeline, and writes every output plus manifest.json
// under cfg.output_dir. Nothing is written outside that directory. Errors
// are rethrown with scenario context after the partial manifest is saved.
RunManifest run_scenario(const ScenarioConfig& cfg);

// Renders deterministic SVG plots next to the CSV files of a finished run:
// line plots for series files, heat maps for spectrograms and scans.
// Returns the files written. Never modifies numerical outputs.
std::vector<std::string> emit_plots(const std::string& run_dir);

}  // namespace triwell
