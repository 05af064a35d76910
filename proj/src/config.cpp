#include "triwell/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "triwell/units.hpp"

namespace triwell {

namespace {

const std::map<std::string, ScenarioKind>& kind_names() {
  static const std::map<std::string, ScenarioKind> m = {
      {"calibrate", ScenarioKind::Calibrate},
      {"eigen", ScenarioKind::Eigen},
      {"fstirap-localize", ScenarioKind::FstirapLocalize},
      {"localized-swap", ScenarioKind::LocalizedSwap},
      {"phase-gate-adiabatic", ScenarioKind::PhaseGateAdiabatic},
      {"cnot-adiabatic", ScenarioKind::CnotAdiabatic},
      {"oct-localize", ScenarioKind::OctLocalize},
      {"oct-hadamard", ScenarioKind::OctHadamard},
      {"oct-phase", ScenarioKind::OctPhase},
      {"oct-cnot", ScenarioKind::OctCnot},
      {"oct-bifurcation", ScenarioKind::OctBifurcation},
      {"local-control", ScenarioKind::LocalControl},
      {"robustness-scan", ScenarioKind::RobustnessScan},
      {"gabor", ScenarioKind::Gabor},
  };
  return m;
}

struct Entry {
  std::string value;
  int line;
};

using Section = std::map<std::string, Entry>;

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(const std::string& name, int line,
                       const std::string& what) {
  throw std::runtime_error(name + ":" + std::to_string(line) + ": " + what);
}

class Reader {
 public:
  Reader(std::map<std::string, Section> sections, std::string name)
      : sections_(std::move(sections)), name_(std::move(name)) {}

  bool has(const std::string& sec, const std::string& key) {
    auto s = sections_.find(sec);
    if (s == sections_.end()) return false;
    return s->second.count(key) > 0;
  }

  template <typename F>
  void take(const std::string& sec, const std::string& key, F&& put) {
    auto s = sections_.find(sec);
    if (s == sections_.end()) return;
    auto e = s->second.find(key);
    if (e == s->second.end()) return;
    put(e->second.value, e->second.line);
    consumed_.insert(sec + "." + key);
  }

  void check_all_consumed() const {
    for (const auto& [sec, kv] : sections_)
      for (const auto& [key, entry] : kv)
        if (!consumed_.count(sec + "." + key))
          fail(name_, entry.line, "unknown key '" + key + "' in [" + sec + "]");
  }

  const std::string& name() const { return name_; }

 private:
  std::map<std::string, Section> sections_;
  std::set<std::string> consumed_;
  std::string name_;
};

double to_double(const std::string& name, int line, const std::string& v) {
  try {
    std::size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    if (!std::isfinite(d)) throw std::invalid_argument("not finite");
    return d;
  } catch (const std::exception&) {
    fail(name, line, "expected a number, got '" + v + "'");
  }
}

long to_int(const std::string& name, int line, const std::string& v) {
  try {
    std::size_t pos = 0;
    long d = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return d;
  } catch (const std::exception&) {
    fail(name, line, "expected an integer, got '" + v + "'");
  }
}

bool to_bool(const std::string& name, int line, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  fail(name, line, "expected a boolean, got '" + v + "'");
}

bool valid_level_tag(const std::string& s) {
  if (s.size() < 2) return false;
  char parity = s.back();
  if (parity != '+' && parity != '-') return false;
  for (std::size_t i = 0; i + 1 < s.size(); ++i)
    if (!std::isdigit((unsigned char)s[i])) return false;
  return true;
}

std::map<std::string, Section> scan(const std::string& text,
                                    const std::string& name) {
  std::map<std::string, Section> sections;
  std::istringstream in(text);
  std::string raw;
  std::string current;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw;
    std::size_t c = s.find_first_of("#;");
    if (c != std::string::npos) s = s.substr(0, c);
    s = trim(s);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') fail(name, line, "unterminated section header");
      current = trim(s.substr(1, s.size() - 2));
      if (current.empty()) fail(name, line, "empty section name");
      sections[current];
      continue;
    }
    std::size_t eq = s.find('=');
    if (eq == std::string::npos)
      fail(name, line, "expected 'key = value', got '" + s + "'");
    std::string key = trim(s.substr(0, eq));
    std::string value = trim(s.substr(eq + 1));
    if (key.empty()) fail(name, line, "missing key before '='");
    if (value.empty()) fail(name, line, "missing value for '" + key + "'");
    if (current.empty()) fail(name, line, "key outside of any [section]");
    auto [it, fresh] = sections[current].emplace(key, Entry{value, line});
    if (!fresh)
      fail(name, line,
           "duplicate key '" + key + "' (first seen on line " +
               std::to_string(it->second.line) + ")");
  }
  return sections;
}

void validate(const ScenarioConfig& c, const std::string& name) {
  auto bad = [&](const std::string& what) {
    throw std::runtime_error(name + ": " + what);
  };
  if (c.variant != "qcisd" && c.variant != "mp2")
    bad("variant must be 'qcisd' or 'mp2'");
  if (c.n_theta < 8 || c.n_theta > 1024 || c.n_phi < 8 || c.n_phi > 1024)
    bad("grid sizes must lie in [8, 1024]");
  if (!(c.dt > 0.0) || c.dt > 100.0) bad("dt must lie in (0, 100] a.u.");
  if (!(c.duration_ps > 0.0) || c.duration_ps > 1000.0)
    bad("duration_ps must lie in (0, 1000]");
  if (!(c.rabi >= 0.0)) bad("rabi_au must be non-negative");
  if (c.rabi > units::rabi_cap_au && !c.force)
    bad("rabi_au " + std::to_string(c.rabi) +
        " exceeds the peak-intensity guard (" +
        std::to_string(units::rabi_cap_au) +
        " a.u. from the 1e14 W/cm2 bound); pass force = true to override");
  if (c.zero_order_amp > units::field_cap_au && !c.force)
    bad("zero_order_amp_au exceeds the field amplitude cap; "
        "pass force = true to override");
  if (!(c.delay_fraction >= 0.0) || c.delay_fraction > 0.5)
    bad("delay_fraction must lie in [0, 0.5]");
  if (c.width_fraction < 0.0 || c.width_fraction > 0.5)
    bad("width_fraction must lie in [0, 0.5]");
  if (!valid_level_tag(c.intermediate))
    bad("intermediate must look like '1+', '2-', ...");
  if (c.epsilon != 1.0 && c.epsilon != -1.0) bad("epsilon must be +1 or -1");
  if (!(c.alpha0 > 0.0)) bad("alpha0 must be positive");
  if (c.max_iterations < 0 || c.max_iterations > 100000)
    bad("max_iterations must lie in [0, 100000]");
  if (!(c.gain_tol > 0.0)) bad("gain_tol must be positive");
  if (c.n_states < 2 || c.n_states > 64) bad("n_states must lie in [2, 64]");
  if (c.lambda_x < 0.0 || c.lambda_y < 0.0)
    bad("feedback gains must be non-negative");
  if (!(c.rabi_min > 0.0) || !(c.rabi_max > c.rabi_min))
    bad("scan rabi axis must satisfy 0 < min < max");
  if (c.rabi_max > units::rabi_cap_au && !c.force)
    bad("scan rabi_max_au exceeds the peak-intensity guard; "
        "pass force = true to override");
  if (!(c.delay_min > 0.0) || !(c.delay_max > c.delay_min))
    bad("scan delay axis must satisfy 0 < min < max");
  if (c.scan_n_rabi < 2 || c.scan_n_delay < 2 || c.scan_n_rabi > 256 ||
      c.scan_n_delay > 256)
    bad("scan grid sides must lie in [2, 256]");
  if (!(c.short_duration_ps > 0.0) || c.short_duration_ps >= c.duration_ps)
    bad("short_duration_ps must be positive and below duration_ps");
  if (!(c.gabor_tau_ps > 0.0)) bad("tau_ps must be positive");
  if (c.gabor_n_omega < 8 || c.gabor_n_omega > 8192)
    bad("n_omega must lie in [8, 8192]");
  if (c.omega_max_cm1 < 0.0) bad("omega_max_cm1 must be non-negative");
  if (c.min_yield < 0.0 || c.min_yield > 1.0)
    bad("min_yield must lie in [0, 1]");
  if (c.output_dir.empty()) bad("output dir must not be empty");
  if (c.threads < 1 || c.threads > 256) bad("threads must lie in [1, 256]");
  if (c.kind == ScenarioKind::Gabor) {
    if (c.field_csv.empty()) bad("gabor runs need field_csv");
    std::ifstream probe(c.field_csv);
    if (!probe) bad("field_csv '" + c.field_csv + "' does not exist");
  }
}

}  // namespace

std::string to_string(ScenarioKind k) {
  for (const auto& [name, kind] : kind_names())
    if (kind == k) return name;
  throw std::logic_error("to_string: unmapped scenario kind");
}

ScenarioKind scenario_from_string(const std::string& name) {
  auto it = kind_names().find(name);
  if (it == kind_names().end())
    throw std::runtime_error("unknown scenario kind '" + name + "'");
  return it->second;
}

ScenarioConfig parse_config_text(const std::string& text,
                                 const std::string& name) {
  Reader r(scan(text, name), name);
  ScenarioConfig c;

  if (!r.has("scenario", "kind"))
    throw std::runtime_error(name + ": missing [scenario] kind");
  r.take("scenario", "kind", [&](const std::string& v, int line) {
    try {
      c.kind = scenario_from_string(v);
    } catch (const std::exception& e) {
      fail(name, line, e.what());
    }
  });
  r.take("scenario", "variant",
         [&](const std::string& v, int) { c.variant = v; });
  r.take("scenario", "seed", [&](const std::string& v, int line) {
    long s = to_int(name, line, v);
    if (s < 0) fail(name, line, "seed must be non-negative");
    c.seed = (unsigned)s;
  });
  r.take("scenario", "force",
         [&](const std::string& v, int line) { c.force = to_bool(name, line, v); });
  r.take("scenario", "threads", [&](const std::string& v, int line) {
    c.threads = (int)to_int(name, line, v);
  });

  r.take("grid", "n_theta", [&](const std::string& v, int line) {
    c.n_theta = (int)to_int(name, line, v);
  });
  r.take("grid", "n_phi", [&](const std::string& v, int line) {
    c.n_phi = (int)to_int(name, line, v);
  });

  r.take("time", "dt_au", [&](const std::string& v, int line) {
    c.dt = to_double(name, line, v);
  });
  r.take("time", "duration_ps", [&](const std::string& v, int line) {
    c.duration_ps = to_double(name, line, v);
  });

  r.take("scheme", "rabi_au", [&](const std::string& v, int line) {
    c.rabi = to_double(name, line, v);
  });
  r.take("scheme", "delay_fraction", [&](const std::string& v, int line) {
    c.delay_fraction = to_double(name, line, v);
  });
  r.take("scheme", "width_fraction", [&](const std::string& v, int line) {
    c.width_fraction = to_double(name, line, v);
  });
  r.take("scheme", "intermediate",
         [&](const std::string& v, int) { c.intermediate = v; });
  r.take("scheme", "epsilon", [&](const std::string& v, int line) {
    c.epsilon = to_double(name, line, v);
  });
  r.take("scheme", "gate_phase_rad", [&](const std::string& v, int line) {
    c.gate_phase = to_double(name, line, v);
  });

  r.take("oct", "alpha0", [&](const std::string& v, int line) {
    c.alpha0 = to_double(name, line, v);
  });
  r.take("oct", "max_iterations", [&](const std::string& v, int line) {
    c.max_iterations = (int)to_int(name, line, v);
  });
  r.take("oct", "gain_tol", [&](const std::string& v, int line) {
    c.gain_tol = to_double(name, line, v);
  });
  r.take("oct", "n_states", [&](const std::string& v, int line) {
    c.n_states = (int)to_int(name, line, v);
  });
  r.take("oct", "lambda_x", [&](const std::string& v, int line) {
    c.lambda_x = to_double(name, line, v);
  });
  r.take("oct", "lambda_y", [&](const std::string& v, int line) {
    c.lambda_y = to_double(name, line, v);
  });
  r.take("oct", "zero_order_amp_au", [&](const std::string& v, int line) {
    c.zero_order_amp = to_double(name, line, v);
  });

  r.take("scan", "rabi_min_au", [&](const std::string& v, int line) {
    c.rabi_min = to_double(name, line, v);
  });
  r.take("scan", "rabi_max_au", [&](const std::string& v, int line) {
    c.rabi_max = to_double(name, line, v);
  });
  r.take("scan", "delay_min_au", [&](const std::string& v, int line) {
    c.delay_min = to_double(name, line, v);
  });
  r.take("scan", "delay_max_au", [&](const std::string& v, int line) {
    c.delay_max = to_double(name, line, v);
  });
  r.take("scan", "n_rabi", [&](const std::string& v, int line) {
    c.scan_n_rabi = (int)to_int(name, line, v);
  });
  r.take("scan", "n_delay", [&](const std::string& v, int line) {
    c.scan_n_delay = (int)to_int(name, line, v);
  });
  r.take("scan", "short_duration_ps", [&](const std::string& v, int line) {
    c.short_duration_ps = to_double(name, line, v);
  });

  r.take("gabor", "field_csv",
         [&](const std::string& v, int) { c.field_csv = v; });
  r.take("gabor", "tau_ps", [&](const std::string& v, int line) {
    c.gabor_tau_ps = to_double(name, line, v);
  });
  r.take("gabor", "n_omega", [&](const std::string& v, int line) {
    c.gabor_n_omega = (int)to_int(name, line, v);
  });
  r.take("gabor", "omega_max_cm1", [&](const std::string& v, int line) {
    c.omega_max_cm1 = to_double(name, line, v);
  });

  r.take("output", "dir", [&](const std::string& v, int) { c.output_dir = v; });
  r.take("output", "min_yield", [&](const std::string& v, int line) {
    c.min_yield = to_double(name, line, v);
  });

  r.check_all_consumed();
  validate(c, name);
  return c;
}

ScenarioConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

std::string dump_config(const ScenarioConfig& c) {
  std::ostringstream o;
  o.precision(17);
  o << "[scenario]\n"
    << "kind = " << to_string(c.kind) << "\n"
    << "variant = " << c.variant << "\n"
    << "seed = " << c.seed << "\n"
    << "threads = " << c.threads << "\n"
    << "force = " << (c.force ? "true" : "false") << "\n\n";
  o << "[grid]\n"
    << "n_theta = " << c.n_theta << "\n"
    << "n_phi = " << c.n_phi << "\n\n";
  o << "[time]\n"
    << "dt_au = " << c.dt << "\n"
    << "duration_ps = " << c.duration_ps << "\n\n";
  o << "[scheme]\n"
    << "rabi_au = " << c.rabi << "\n"
    << "delay_fraction = " << c.delay_fraction << "\n"
    << "width_fraction = " << c.width_fraction << "\n"
    << "intermediate = " << c.intermediate << "\n"
    << "epsilon = " << c.epsilon << "\n"
    << "gate_phase_rad = " << c.gate_phase << "\n\n";
  o << "[oct]\n"
    << "alpha0 = " << c.alpha0 << "\n"
    << "max_iterations = " << c.max_iterations << "\n"
    << "gain_tol = " << c.gain_tol << "\n"
    << "n_states = " << c.n_states << "\n"
    << "lambda_x = " << c.lambda_x << "\n"
    << "lambda_y = " << c.lambda_y << "\n"
    << "zero_order_amp_au = " << c.zero_order_amp << "\n\n";
  o << "[scan]\n"
    << "rabi_min_au = " << c.rabi_min << "\n"
    << "rabi_max_au = " << c.rabi_max << "\n"
    << "delay_min_au = " << c.delay_min << "\n"
    << "delay_max_au = " << c.delay_max << "\n"
    << "n_rabi = " << c.scan_n_rabi << "\n"
    << "n_delay = " << c.scan_n_delay << "\n"
    << "short_duration_ps = " << c.short_duration_ps << "\n\n";
  o << "[gabor]\n";
  if (!c.field_csv.empty()) o << "field_csv = " << c.field_csv << "\n";
  o << "tau_ps = " << c.gabor_tau_ps << "\n"
    << "n_omega = " << c.gabor_n_omega << "\n"
    << "omega_max_cm1 = " << c.omega_max_cm1 << "\n\n";
  o << "[output]\n"
    << "dir = " << c.output_dir << "\n"
    << "min_yield = " << c.min_yield << "\n";
  return o.str();
}

}  // namespace triwell
