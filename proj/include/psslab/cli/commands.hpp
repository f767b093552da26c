#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace psslab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;

const char* tool_version();

std::string sha256_hex(std::string_view bytes);
/// Throws std::runtime_error if the file cannot be read.
std::string sha256_file(const std::filesystem::path& path);
/// Digest of the built-in catalog, serialized canonically.
std::string catalog_digest();

/// Collects the outputs of one command and writes manifest.json next to them.
class RunRecorder {
 public:
  RunRecorder(std::string command, std::filesystem::path out_dir);

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path path(const std::string& name) const { return dir_ / name; }

  void set_arguments(nlohmann::json args) { args_ = std::move(args); }
  void add_input(const std::string& role, const std::filesystem::path& file);
  void add_seed(std::uint64_t seed) { seeds_.push_back(seed); }
  void use_catalog() { catalog_ = true; }

  /// Writes j with two-space indentation and registers the file.
  void write_json(const std::string& name, const nlohmann::json& j);
  /// Registers a file already written to dir().
  void add_output(const std::string& name);
  /// Writes manifest.json. Call once, after every output is in place.
  void finish();

 private:
  std::string command_;
  std::filesystem::path dir_;
  nlohmann::json args_ = nlohmann::json::object();
  nlohmann::json inputs_ = nlohmann::json::object();
  std::vector<std::uint64_t> seeds_;
  std::vector<std::string> outputs_;
  bool catalog_ = false;
  double started_;
};

struct VerifyOptions {
  std::string catalog;
  std::filesystem::path triad_file;
  std::string pde;
  std::string mode = "auto";
  std::string perturb;
  std::uint64_t seed = 0x5eed;
  std::filesystem::path out_dir = "out/verify";
};

struct ZeroCurvOptions {
  std::string catalog;
  std::filesystem::path form_file;
  std::string pde;
  std::string sign = "-";
  std::uint64_t seed = 0x5eed;
  std::filesystem::path out_dir = "out/zero-curv";
};

struct SolveOptions {
  std::filesystem::path config;
  std::filesystem::path out_dir = "out/solve";
};

struct MetricOptions {
  std::filesystem::path trajectory_dir;
  std::optional<double> exact_sg;
  double lambda = 2;
  std::optional<double> w_min;
  /// Only every stride-th x column goes to fields.csv.
  std::size_t stride = 1;
  std::filesystem::path out_dir = "out/metric";
};

struct ReportOptions {
  std::filesystem::path run_dir;
};

/// Exit 0 iff the triad is PSS-verified, 1 if not, 2 on bad input.
int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err);
/// Exit 0 iff every zero-curvature residual vanishes (modulo the PDE when one is known).
int cmd_zero_curv(const ZeroCurvOptions& o, std::ostream& out, std::ostream& err);
/// Exit 0 for completed or breaking runs, 1 for a non-finite stop, 2 on bad config.
int cmd_solve(const SolveOptions& o, std::ostream& out, std::ostream& err);
/// Exit 1 if a produced certificate does not hold.
int cmd_metric(const MetricOptions& o, std::ostream& out, std::ostream& err);
/// Writes consolidated.json and summary.txt into the run directory. Exit 2 if the
/// manifest or a listed output is missing.
int cmd_report(const ReportOptions& o, std::ostream& out, std::ostream& err);

}  // namespace psslab::cli
