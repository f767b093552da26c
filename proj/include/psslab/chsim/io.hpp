#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "psslab/chsim/solver.hpp"

namespace psslab::chsim {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Named initial datum.
///   gaussian:     amplitude * exp(-((x - center) / width)^2)
///   antisym_tanh: -tanh(steepness * x) * exp(-(x / 4)^2)
///   cosine:       amplitude * cos(k x), k = pi j / L for an integer j
///   zero:         0
struct InitialDatum {
  std::string preset = "gaussian";
  std::map<std::string, double> params;

  double param(const std::string& name, double fallback) const;
  /// Throws ConfigError for unknown presets or inadmissible parameters.
  Field sample(const GridSpec& g) const;
};

struct RunConfig {
  GridSpec grid;
  SolverConfig solver;
  InitialDatum initial;
};

/// Throws ConfigError on bad keys, types, or values.
RunConfig run_config_from_json(const nlohmann::json& j);
nlohmann::json run_config_to_json(const RunConfig& c);
RunConfig read_run_config(const std::filesystem::path& path);

/// max(|u|, |u_x|) over the two boundary points.
double edge_magnitude(const Field& u, const GridSpec& g);

nlohmann::json to_json(const Diagnostics& d);

/// Columns t,x,u,u_x,m for every saved state, written with %.17g.
void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& tr);
/// Grid, config, stop reason, drifts and per-save diagnostics.
nlohmann::json trajectory_summary(const Trajectory& tr, const InitialDatum& init);

/// Reads the pair written above (trajectory.csv and diagnostics.json in dir).
Trajectory read_trajectory(const std::filesystem::path& dir);

}  // namespace psslab::chsim
