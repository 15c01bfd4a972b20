#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "tweezer/orchestrator.hpp"

namespace {

struct CommonFlags {
  std::string config;
  std::string out;
  int jobs = -1;
  long long seed = -1;
  std::string pulse;
  std::string scheme;
};

tw::RunConfig assemble(const CommonFlags& f) {
  tw::RunConfig cfg = f.config.empty() ? tw::default_config() : tw::load_config(f.config);
  if (!f.out.empty()) cfg.out_dir = f.out;
  if (f.jobs >= 0) cfg.jobs = f.jobs;
  if (f.seed >= 0) {
    cfg.seed = static_cast<std::uint64_t>(f.seed);
    cfg.basis.seed = cfg.seed;
    cfg.optimizer.seed = cfg.seed;
  }
  if (!f.pulse.empty()) cfg.pulse = tw::parse_pulse_name(f.pulse, cfg.pulse);
  if (!f.scheme.empty()) {
    if (f.scheme == "strang") cfg.evolution.scheme = tw::Splitting::strang;
    else if (f.scheme == "single") cfg.evolution.scheme = tw::Splitting::single;
    else throw tw::ConfigError("--scheme must be strang or single");
  }
  cfg.validate();
  return cfg;
}

void add_common(CLI::App* sub, CommonFlags& f) {
  sub->add_option("--config", f.config, "configuration file (INI-style; see configs/example.ini)");
  sub->add_option("--out", f.out, "output directory");
  sub->add_option("--jobs", f.jobs, "parallel jobs (default: TWEEZER_JOBS or hardware)");
  sub->add_option("--seed", f.seed, "random seed for the optimizer basis");
  sub->add_option("--pulse", f.pulse, "pulse family, e.g. min_jerk, sta, hybrid:0.8");
  sub->add_option("--scheme", f.scheme, "splitting scheme: strang | single");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optical tweezer transport: pulse design, simulation, and optimization"};
  app.require_subcommand(1);

  CommonFlags flags;
  int (*run)(const tw::RunConfig&) = nullptr;

  auto make = [&](const char* name, const char* desc, int (*fn)(const tw::RunConfig&)) {
    auto* sub = app.add_subcommand(name, desc);
    add_common(sub, flags);
    sub->callback([&run, fn]() { run = fn; });
    return sub;
  };

  make("simulate", "single transport run: metrics.json, series.csv, pulse.csv", tw::cmd_simulate);
  make("sweep-time", "infidelity vs total time with threshold report", tw::cmd_sweep_time);
  make("heatmap", "infidelity over the (T, A_max) plane", tw::cmd_heatmap);
  make("optimize", "dressed-CRAB pulse shaping per (pulse, T) job", tw::cmd_optimize);
  make("validate", "numerics battery: discretization, splitting, oracles", tw::cmd_validate);
  make("export-pulse", "write the configured pulse as CSV (+ STA sidecar)", tw::cmd_export_pulse);

  CLI11_PARSE(app, argc, argv);

  try {
    return run(assemble(flags));
  } catch (const tw::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const tw::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
