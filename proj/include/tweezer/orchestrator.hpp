#pragma once

#include <optional>
#include <string>

#include "tweezer/config.hpp"
#include "tweezer/metrics.hpp"
#include "tweezer/sta.hpp"

namespace tw {

// Sampled control pulse for a family selection; STA pulses carry the sidecar
// quantities. a_max_override (J, > 0) replaces the configured maximum, used by
// the heat-map axis.
struct PulseArtifacts {
  ControlPulse pulse;
  std::optional<StaPulse> sta;
};
PulseArtifacts make_pulse(const RunConfig& cfg, const PulseSelect& sel, double total_time,
                          double a_max_override = 0.0);

struct SimOutcome {
  metrics::MetricsReport report;
  EvolutionRecord record;
  ControlPulse pulse;
};
SimOutcome run_simulation(const RunConfig& cfg, const PulseSelect& sel, double total_time,
                          double a_max_override = 0.0, bool with_occupation = false);

// One row of a sweep / heat map.
struct SweepRow {
  std::string pulse;
  double t = 0.0;       // s
  double a_max = 0.0;   // J
  metrics::MetricsReport report;
  std::string status = "ok";  // ok | failed:<reason>
};
std::string sweep_to_csv(const std::vector<SweepRow>& rows);

// Smallest T with inf_max <= threshold on the sorted grid; no interpolation.
std::optional<double> threshold_time(const std::vector<SweepRow>& rows,
                                     const std::string& pulse_label, double threshold);

int cmd_simulate(const RunConfig& cfg);
int cmd_sweep_time(const RunConfig& cfg);
int cmd_heatmap(const RunConfig& cfg);
int cmd_optimize(const RunConfig& cfg);
int cmd_validate(const RunConfig& cfg);
int cmd_export_pulse(const RunConfig& cfg);

// Shared by cmd_validate and the acceptance suite.
struct SplittingComparison {
  double strang_final = 0.0;
  double single_final = 0.0;
  double strang_series_mean = 0.0;
  double single_series_mean = 0.0;
  double strang_series_max = 0.0;
  double single_series_max = 0.0;
};
SplittingComparison compare_splittings(const PhysicalParams& p, double total_time, int n_steps,
                                       double padding, double dx_target);

void write_file(const std::string& path, const std::string& content);

}  // namespace tw
