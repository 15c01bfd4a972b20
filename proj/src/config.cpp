#include "tweezer/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "tweezer/kernels.hpp"

namespace tw {

namespace {

const std::map<std::string, std::set<std::string>> known_keys = {
    {"physical",
     {"mass_kg", "depth_static_2pi_mhz", "sigma_static_um", "n_static", "separation_um",
      "sigma_moving_um"}},
    {"grid", {"padding_um", "dx_target_um"}},
    {"evolution", {"n_steps", "scheme", "record_stride", "occupation_stride", "k_states"}},
    {"pulse", {"family", "xi", "a_max_2pi_mhz", "sta_calibrate"}},
    {"run", {"total_time_ms", "out_dir", "jobs", "seed", "record_occupation"}},
    {"sweep", {"t_ms", "amax_2pi_mhz", "families", "threshold"}},
    {"optimizer",
     {"n_functions", "n_superiterations", "max_evals_per_si", "simplex_init_scale",
      "convergence_tol", "controls", "amplitude_cap_2pi_mhz"}},
};

double to_double(const std::string& section, const std::string& key, const std::string& raw) {
  try {
    std::size_t used = 0;
    const double v = std::stod(raw, &used);
    if (used != raw.size()) throw std::invalid_argument(raw);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("[" + section + "] " + key + ": cannot parse '" + raw + "' as a number");
  }
}

long to_int(const std::string& section, const std::string& key, const std::string& raw) {
  try {
    std::size_t used = 0;
    const long v = std::stol(raw, &used);
    if (used != raw.size()) throw std::invalid_argument(raw);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("[" + section + "] " + key + ": cannot parse '" + raw + "' as an integer");
  }
}

bool to_bool(const std::string& section, const std::string& key, const std::string& raw) {
  if (raw == "true" || raw == "1" || raw == "yes") return true;
  if (raw == "false" || raw == "0" || raw == "no") return false;
  throw ConfigError("[" + section + "] " + key + ": cannot parse '" + raw + "' as a boolean");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// t_ms accepts "log:lo,hi,n" or an explicit comma list.
std::vector<double> parse_time_list(const std::string& raw) {
  std::vector<double> out;
  if (raw.rfind("log:", 0) == 0) {
    const auto parts = split(raw.substr(4), ',');
    if (parts.size() != 3) throw ConfigError("[sweep] t_ms: log:lo,hi,n needs three fields");
    const double lo = to_double("sweep", "t_ms", parts[0]);
    const double hi = to_double("sweep", "t_ms", parts[1]);
    const long n = to_int("sweep", "t_ms", parts[2]);
    if (!(lo > 0.0 && hi > lo) || n < 2) throw ConfigError("[sweep] t_ms: bad log range");
    for (long i = 0; i < n; ++i)
      out.push_back(units::time_from_ms(lo * std::pow(hi / lo, static_cast<double>(i) /
                                                                   static_cast<double>(n - 1))));
    return out;
  }
  for (const auto& part : split(raw, ','))
    out.push_back(units::time_from_ms(to_double("sweep", "t_ms", part)));
  return out;
}

}  // namespace

PulseSelect parse_pulse_name(const std::string& name, const PulseSelect& base) {
  PulseSelect sel = base;
  const auto colon = name.find(':');
  sel.family = name.substr(0, colon);
  if (colon != std::string::npos)
    sel.xi = to_double("pulse", "family", name.substr(colon + 1));
  static const std::set<std::string> families = {"linear", "quadratic", "min_jerk",
                                                 "hybrid", "sta", "sta_approx"};
  if (!families.count(sel.family))
    throw ConfigError("unknown pulse family '" + sel.family + "'");
  return sel;
}

RunConfig default_config() { return RunConfig{}; }

RunConfig load_config(const std::string& path) {
  boost::property_tree::ptree pt;
  try {
    boost::property_tree::ini_parser::read_ini(path, pt);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("cannot read config: ") + e.what());
  }

  for (const auto& [section, sub] : pt) {
    const auto it = known_keys.find(section);
    if (it == known_keys.end()) throw ConfigError("unknown config section [" + section + "]");
    for (const auto& [key, val] : sub)
      if (!it->second.count(key))
        throw ConfigError("unknown key '" + key + "' in section [" + section + "]");
  }

  RunConfig cfg;
  auto get = [&](const std::string& sec, const std::string& key) {
    return pt.get_optional<std::string>(sec + "." + key);
  };

  if (auto v = get("physical", "mass_kg")) cfg.physical.mass = to_double("physical", "mass_kg", *v);
  if (auto v = get("physical", "depth_static_2pi_mhz"))
    cfg.physical.a_static = units::depth_from_2pi_mhz(to_double("physical", "depth_static_2pi_mhz", *v));
  if (auto v = get("physical", "sigma_static_um"))
    cfg.physical.sigma_static = units::length_from_um(to_double("physical", "sigma_static_um", *v));
  if (auto v = get("physical", "n_static"))
    cfg.physical.n_static = static_cast<int>(to_int("physical", "n_static", *v));
  if (auto v = get("physical", "separation_um"))
    cfg.physical.separation = units::length_from_um(to_double("physical", "separation_um", *v));
  if (auto v = get("physical", "sigma_moving_um"))
    cfg.physical.sigma_moving = units::length_from_um(to_double("physical", "sigma_moving_um", *v));

  if (auto v = get("grid", "padding_um"))
    cfg.padding = units::length_from_um(to_double("grid", "padding_um", *v));
  if (auto v = get("grid", "dx_target_um"))
    cfg.dx_target = units::length_from_um(to_double("grid", "dx_target_um", *v));

  if (auto v = get("evolution", "n_steps"))
    cfg.evolution.n_steps = static_cast<int>(to_int("evolution", "n_steps", *v));
  if (auto v = get("evolution", "scheme")) {
    if (*v == "strang") cfg.evolution.scheme = Splitting::strang;
    else if (*v == "single") cfg.evolution.scheme = Splitting::single;
    else throw ConfigError("[evolution] scheme must be strang or single");
  }
  if (auto v = get("evolution", "record_stride"))
    cfg.evolution.record_stride = static_cast<int>(to_int("evolution", "record_stride", *v));
  if (auto v = get("evolution", "occupation_stride"))
    cfg.evolution.occupation_stride = static_cast<int>(to_int("evolution", "occupation_stride", *v));
  if (auto v = get("evolution", "k_states"))
    cfg.evolution.k_states = static_cast<int>(to_int("evolution", "k_states", *v));

  if (auto v = get("pulse", "family")) cfg.pulse = parse_pulse_name(*v, cfg.pulse);
  if (auto v = get("pulse", "xi")) cfg.pulse.xi = to_double("pulse", "xi", *v);
  if (auto v = get("pulse", "a_max_2pi_mhz"))
    cfg.pulse.a_max = units::depth_from_2pi_mhz(to_double("pulse", "a_max_2pi_mhz", *v));
  if (auto v = get("pulse", "sta_calibrate"))
    cfg.pulse.sta_calibrate = to_bool("pulse", "sta_calibrate", *v);

  if (auto v = get("run", "total_time_ms"))
    cfg.total_time = units::time_from_ms(to_double("run", "total_time_ms", *v));
  if (auto v = get("run", "out_dir")) cfg.out_dir = *v;
  if (auto v = get("run", "jobs")) cfg.jobs = static_cast<int>(to_int("run", "jobs", *v));
  if (auto v = get("run", "seed"))
    cfg.seed = static_cast<std::uint64_t>(to_int("run", "seed", *v));
  if (auto v = get("run", "record_occupation"))
    cfg.record_occupation = to_bool("run", "record_occupation", *v);

  if (auto v = get("sweep", "t_ms")) cfg.sweep.t_values = parse_time_list(*v);
  if (auto v = get("sweep", "amax_2pi_mhz"))
    for (const auto& part : split(*v, ','))
      cfg.sweep.amax_values.push_back(
          units::depth_from_2pi_mhz(to_double("sweep", "amax_2pi_mhz", part)));
  if (auto v = get("sweep", "families"))
    for (const auto& part : split(*v, ','))
      cfg.sweep.families.push_back(parse_pulse_name(part, cfg.pulse));
  if (auto v = get("sweep", "threshold"))
    cfg.sweep.threshold = to_double("sweep", "threshold", *v);

  if (auto v = get("optimizer", "n_functions"))
    cfg.basis.n_functions = static_cast<int>(to_int("optimizer", "n_functions", *v));
  if (auto v = get("optimizer", "n_superiterations"))
    cfg.optimizer.n_superiterations = static_cast<int>(to_int("optimizer", "n_superiterations", *v));
  if (auto v = get("optimizer", "max_evals_per_si"))
    cfg.optimizer.max_evals_per_si = static_cast<int>(to_int("optimizer", "max_evals_per_si", *v));
  if (auto v = get("optimizer", "simplex_init_scale"))
    cfg.optimizer.simplex_init_scale = to_double("optimizer", "simplex_init_scale", *v);
  if (auto v = get("optimizer", "convergence_tol"))
    cfg.optimizer.convergence_tol = to_double("optimizer", "convergence_tol", *v);
  if (auto v = get("optimizer", "controls")) {
    const auto parts = split(*v, ',');
    const bool pos = std::find(parts.begin(), parts.end(), "position") != parts.end();
    const bool amp = std::find(parts.begin(), parts.end(), "amplitude") != parts.end();
    if (static_cast<std::size_t>(pos) + static_cast<std::size_t>(amp) != parts.size() ||
        parts.empty())
      throw ConfigError("[optimizer] controls must list position and/or amplitude");
    cfg.optimizer.controls = pos && amp ? ControlSelect::both
                             : pos      ? ControlSelect::position_only
                                        : ControlSelect::amplitude_only;
  }
  if (auto v = get("optimizer", "amplitude_cap_2pi_mhz")) {
    const double cap = to_double("optimizer", "amplitude_cap_2pi_mhz", *v);
    cfg.optimizer.amplitude_cap = cap > 0.0 ? units::depth_from_2pi_mhz(cap) : 0.0;
  }

  cfg.validate();
  return cfg;
}

void RunConfig::validate() const {
  try {
    physical.validate();
    evolution.validate();
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  if (!(padding > 0.0)) throw ConfigError("[grid] padding_um must be positive");
  if (!(dx_target > 0.0)) throw ConfigError("[grid] dx_target_um must be positive");
  if (!(total_time > 0.0)) throw ConfigError("[run] total_time_ms must be positive");
  if (!(pulse.a_max > 0.0)) throw ConfigError("[pulse] a_max_2pi_mhz must be positive");
  if (pulse.family == "hybrid" && !(pulse.xi >= 0.0 && pulse.xi <= 1.0))
    throw ConfigError("[pulse] xi must lie in [0,1]");
  if (jobs < 0) throw ConfigError("[run] jobs must be >= 0");
  if (!(sweep.threshold > 0.0 && sweep.threshold < 1.0))
    throw ConfigError("[sweep] threshold must lie in (0,1)");
  if (basis.n_functions < 1) throw ConfigError("[optimizer] n_functions must be >= 1");
  if (optimizer.n_superiterations < 0)
    throw ConfigError("[optimizer] n_superiterations must be >= 0");
  if (optimizer.max_evals_per_si < 1)
    throw ConfigError("[optimizer] max_evals_per_si must be >= 1");
  if (!(optimizer.simplex_init_scale > 0.0))
    throw ConfigError("[optimizer] simplex_init_scale must be positive");
  if (!(optimizer.convergence_tol >= 0.0))
    throw ConfigError("[optimizer] convergence_tol must be >= 0");
}

int effective_jobs(const RunConfig& cfg) {
  if (cfg.jobs > 0) return cfg.jobs;
  if (const char* env = std::getenv("TWEEZER_JOBS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return kernels::max_threads();
}

}  // namespace tw
