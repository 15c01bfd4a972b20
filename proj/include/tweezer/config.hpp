#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tweezer/evolve.hpp"
#include "tweezer/optimizer.hpp"
#include "tweezer/params.hpp"
#include "tweezer/pulses.hpp"

namespace tw {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PulseSelect {
  std::string family = "min_jerk";  // linear | quadratic | min_jerk | hybrid | sta | sta_approx
  double xi = 0.4;
  double a_max = units::depth_from_2pi_mhz(3.57);  // J, global maximum
  bool sta_calibrate = true;  // STA: choose a_max_cr so the global max hits a_max
};

struct SweepSettings {
  std::vector<double> t_values;     // s
  std::vector<double> amax_values;  // J
  std::vector<PulseSelect> families;
  double threshold = 1e-4;
};

// Full run configuration in SI after parsingics; the file quotes lab units.
struct RunConfig {
  PhysicalParams physical;
  double padding = 2e-6;
  double dx_target = 0.02e-6;
  EvolutionConfig evolution;
  PulseSelect pulse;
  SweepSettings sweep;
  BasisConfig basis;
  OptimizerConfig optimizer;
  double total_time = 1e-3;  // s
  std::string out_dir = "out";
  int jobs = 0;  // 0: TWEEZER_JOBS env or hardware default
  std::uint64_t seed = 1;
  bool record_occupation = false;

  void validate() const;
};

// Parses the INI-style key/value config; unknown sections or keys are
// rejected so typos cannot silently fall back to defaults.
RunConfig load_config(const std::string& path);
RunConfig default_config();

// "hybrid:0.8" etc. for the --pulse flag.
PulseSelect parse_pulse_name(const std::string& name, const PulseSelect& base);

int effective_jobs(const RunConfig& cfg);

}  // namespace tw
