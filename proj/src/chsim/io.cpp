#include "psslab/chsim/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <numbers>
#include <set>
#include <sstream>

namespace psslab::chsim {

using nlohmann::json;

double InitialDatum::param(const std::string& name, double fallback) const {
  auto it = params.find(name);
  return it == params.end() ? fallback : it->second;
}

Field InitialDatum::sample(const GridSpec& g) const {
  Field u(g.N);
  if (preset == "gaussian") {
    double c = param("center", 0.0), w = param("width", 1.0), a = param("amplitude", 1.0);
    if (!(w > 0)) throw ConfigError("gaussian width must be positive");
    for (int j = 0; j < g.N; ++j) {
      double s = (g.x(j) - c) / w;
      u[j] = a * std::exp(-s * s);
    }
  } else if (preset == "antisym_tanh") {
    double k = param("steepness", 5.0);
    for (int j = 0; j < g.N; ++j) {
      double x = g.x(j);
      u[j] = -std::tanh(k * x) * std::exp(-(x / 4) * (x / 4));
    }
  } else if (preset == "cosine") {
    double k = param("k", std::numbers::pi / g.L), a = param("amplitude", 1.0);
    double j = k * g.L / std::numbers::pi;
    if (std::abs(j - std::round(j)) > 1e-9) throw ConfigError("cosine wavenumber is not periodic on the box");
    for (int i = 0; i < g.N; ++i) u[i] = a * std::cos(k * g.x(i));
  } else if (preset == "zero") {
  } else {
    throw ConfigError("unknown initial preset '" + preset + "'");
  }
  return u;
}

namespace {

template <class T>
T get(const json& j, const char* key, T fallback, const char* where) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string(where) + "." + key + ": wrong type");
  }
}

}  // namespace

RunConfig run_config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be an object");
  RunConfig c;
  if (j.contains("grid")) {
    const json& g = j["grid"];
    c.grid.L = get(g, "L", c.grid.L, "grid");
    c.grid.N = get(g, "N", c.grid.N, "grid");
  }
  if (j.contains("solver")) {
    const json& s = j["solver"];
    c.solver.dt = get(s, "dt", c.solver.dt, "solver");
    c.solver.t_end = get(s, "t_end", c.solver.t_end, "solver");
    c.solver.save_every = get(s, "save_every", c.solver.save_every, "solver");
    c.solver.dealias = get(s, "dealias", c.solver.dealias, "solver");
    c.solver.breaking_threshold = get(s, "breaking_threshold", c.solver.breaking_threshold, "solver");
    std::string b = get<std::string>(s, "backend", backend_name(c.solver.backend), "solver");
    if (b == "serial") {
      c.solver.backend = Backend::Serial;
    } else if (b == "openmp") {
      c.solver.backend = Backend::OpenMP;
    } else {
      throw ConfigError("solver.backend must be 'serial' or 'openmp'");
    }
  }
  if (j.contains("initial")) {
    const json& i = j["initial"];
    if (!i.is_object()) throw ConfigError("initial must be an object");
    c.initial.preset = get<std::string>(i, "preset", c.initial.preset, "initial");
    for (const auto& [k, v] : i.items()) {
      if (k == "preset") continue;
      if (!v.is_number()) throw ConfigError("initial." + k + ": expected a number");
      c.initial.params[k] = v.get<double>();
    }
  }
  try {
    c.grid.validate();
    c.solver.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return c;
}

json run_config_to_json(const RunConfig& c) {
  json init{{"preset", c.initial.preset}};
  for (const auto& [k, v] : c.initial.params) init[k] = v;
  return {{"grid", {{"L", c.grid.L}, {"N", c.grid.N}}},
          {"solver",
           {{"dt", c.solver.dt},
            {"t_end", c.solver.t_end},
            {"save_every", c.solver.save_every},
            {"dealias", c.solver.dealias},
            {"breaking_threshold", c.solver.breaking_threshold},
            {"backend", backend_name(c.solver.backend)}}},
          {"initial", init}};
}

RunConfig read_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  // Config files are strict; summaries read back by read_trajectory carry extra keys.
  const std::map<std::string, std::set<std::string>> allowed{
      {"grid", {"L", "N"}},
      {"solver", {"dt", "t_end", "save_every", "dealias", "breaking_threshold", "backend"}},
      {"initial", {}}};
  if (!j.is_object()) throw ConfigError("config must be an object");
  for (const auto& [k, v] : j.items()) {
    auto it = allowed.find(k);
    if (it == allowed.end()) throw ConfigError("unknown config key '" + k + "'");
    if (k == "initial" || !v.is_object()) continue;
    for (const auto& [kk, vv] : v.items())
      if (!it->second.count(kk)) throw ConfigError("unknown config key '" + k + "." + kk + "'");
  }
  return run_config_from_json(j);
}

double edge_magnitude(const Field& u, const GridSpec& g) {
  Field ux = spectral_deriv(u, 1, g);
  return std::max({std::abs(u.front()), std::abs(u.back()), std::abs(ux.front()), std::abs(ux.back())});
}

json to_json(const Diagnostics& d) {
  return {{"t", d.t}, {"h1", d.h1}, {"mass", d.mass}, {"I", d.I},
          {"S", d.S}, {"h", d.h},   {"x_I", d.x_I},   {"x_S", d.x_S}};
}

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& tr) {
  std::unique_ptr<FILE, int (*)(FILE*)> f(std::fopen(path.c_str(), "w"), &std::fclose);
  if (!f) throw ConfigError("cannot write " + path.string());
  std::fputs("t,x,u,u_x,m\n", f.get());
  for (const auto& s : tr.saved)
    for (int j = 0; j < tr.grid.N; ++j)
      std::fprintf(f.get(), "%.17g,%.17g,%.17g,%.17g,%.17g\n", s.t, tr.grid.x(j), s.u[j], s.ux[j], s.m[j]);
}

json trajectory_summary(const Trajectory& tr, const InitialDatum& init) {
  json j = run_config_to_json({tr.grid, tr.config, init});
  j["stop_reason"] = stop_reason_name(tr.stop);
  j["stop_time"] = tr.stop_time;
  j["stop_time_note"] = "numerical lifespan proxy, not a computed lifespan";
  j["steps"] = tr.steps;
  j["h1_drift"] = tr.h1_drift();
  j["mass_drift"] = tr.mass_drift();
  j["sign_structure_ok"] = tr.sign_structure_ok;
  j["initial_tail_ratio"] = tr.initial_tail_ratio;
  j["saved"] = json::array();
  for (const auto& d : tr.diagnostics) j["saved"].push_back(to_json(d));
  j["final"] = to_json(tr.final_diagnostics);
  return j;
}

Trajectory read_trajectory(const std::filesystem::path& dir) {
  std::ifstream js(dir / "diagnostics.json");
  if (!js) throw ConfigError("missing " + (dir / "diagnostics.json").string());
  json summary;
  try {
    summary = json::parse(js);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("diagnostics.json: ") + e.what());
  }
  RunConfig rc = run_config_from_json(summary);
  Trajectory tr;
  tr.grid = rc.grid;
  tr.config = rc.solver;

  std::ifstream csv(dir / "trajectory.csv");
  if (!csv) throw ConfigError("missing " + (dir / "trajectory.csv").string());
  std::string line;
  std::getline(csv, line);
  if (line != "t,x,u,u_x,m") throw ConfigError("trajectory.csv: unexpected header");
  const int N = tr.grid.N;
  ChState cur;
  int filled = 0;
  while (std::getline(csv, line)) {
    if (line.empty()) continue;
    double v[5];
    const char* p = line.c_str();
    for (int k = 0; k < 5; ++k) {
      char* end = nullptr;
      v[k] = std::strtod(p, &end);
      if (end == p) throw ConfigError("trajectory.csv: malformed row");
      p = end + (*end == ',' ? 1 : 0);
    }
    if (filled == 0) cur = ChState{v[0], Field(N), Field(N), Field(N)};
    cur.u[filled] = v[2];
    cur.ux[filled] = v[3];
    cur.m[filled] = v[4];
    if (++filled == N) {
      tr.saved.push_back(cur);
      tr.diagnostics.push_back(diagnostics(cur, tr.grid));
      filled = 0;
    }
  }
  if (filled != 0 || tr.saved.empty()) throw ConfigError("trajectory.csv: incomplete slice");
  tr.final_state = tr.saved.back();
  tr.final_diagnostics = tr.diagnostics.back();
  std::string stop = summary.value("stop_reason", "completed");
  tr.stop = stop == "breaking" ? StopReason::Breaking : stop == "non-finite" ? StopReason::NonFinite
                                                                             : StopReason::Completed;
  tr.stop_time = summary.value("stop_time", tr.final_state.t);
  tr.steps = summary.value("steps", 0L);
  tr.sign_structure_ok = summary.value("sign_structure_ok", true);
  return tr;
}

}  // namespace psslab::chsim
