#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include <json.hpp>

#include "psslab/cli/commands.hpp"

namespace fs = std::filesystem;
using namespace psslab::cli;
using nlohmann::json;

namespace {

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / "psslab_cli_test" / name;
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

json load(const fs::path& p) { return json::parse(slurp(p)); }

std::set<std::string> listing(const fs::path& dir) {
  std::set<std::string> s;
  for (const auto& e : fs::recursive_directory_iterator(dir)) s.insert(fs::relative(e.path(), dir).string());
  return s;
}

const fs::path kConfigs = PSSLAB_CONFIG_DIR;
const fs::path kData = PSSLAB_DATA_DIR;

struct Io {
  std::ostringstream out, err;
};

int verify(const std::string& catalog, const fs::path& dir, const std::string& perturb = "") {
  Io io;
  VerifyOptions o;
  o.catalog = catalog;
  o.perturb = perturb;
  o.out_dir = dir;
  return cmd_verify(o, io.out, io.err);
}

}  // namespace

TEST(Digest, KnownVectors) {
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Verify, SineGordonCatalog) {
  fs::path d = scratch("verify_sg");
  ASSERT_EQ(verify("sg", d), kExitOk);
  json r = load(d / "report.json");
  EXPECT_EQ(r["verification"]["status"], "PSS-verified");
  EXPECT_EQ(r["verification"]["multipliers"], json({"0", "0", "-1"}));
  EXPECT_EQ(r["geometry"]["degenerate_factors"].size(), 1u);
  EXPECT_EQ(listing(d), (std::set<std::string>{"manifest.json", "report.json"}));
}

TEST(Verify, CamassaHolmCatalog) {
  fs::path d = scratch("verify_ch");
  ASSERT_EQ(verify("ch", d), kExitOk);
  EXPECT_EQ(load(d / "report.json")["verification"]["multipliers"], json({"1", "0", "-1"}));
}

TEST(Verify, PerturbedFails) {
  for (const char* spec : {"w1*2", "w2*2", "w3*2", "w2.dt*2"}) EXPECT_EQ(verify("sg", scratch("verify_p"), spec), kExitFailed) << spec;
}

TEST(Verify, PrintedAknsWritesErratum) {
  fs::path d = scratch("verify_akns_printed");
  EXPECT_EQ(verify("sg-akns-printed", d), kExitFailed);
  json a = load(d / "akns.json");
  EXPECT_FALSE(a["reduces_to_zero"].get<bool>());
  EXPECT_TRUE(a.contains("erratum"));
}

TEST(Verify, CorrectedAknsVerifies) {
  fs::path d = scratch("verify_akns");
  EXPECT_EQ(verify("sg-akns", d), kExitOk);
  EXPECT_TRUE(load(d / "akns.json")["reduces_to_zero"].get<bool>());
}

TEST(Verify, InputErrorsExitTwo) {
  EXPECT_EQ(verify("no-such-entry", scratch("verify_bad")), kExitUsage);
  EXPECT_EQ(verify("sg", scratch("verify_bad"), "w4*2"), kExitUsage);
  Io io;
  VerifyOptions o;
  o.out_dir = scratch("verify_bad");
  EXPECT_EQ(cmd_verify(o, io.out, io.err), kExitUsage);
  o.catalog = "sg";
  o.mode = "guess";
  EXPECT_EQ(cmd_verify(o, io.out, io.err), kExitUsage);
  o.mode = "auto";
  o.pde = "kdv";
  EXPECT_EQ(cmd_verify(o, io.out, io.err), kExitUsage);
  EXPECT_FALSE(fs::exists(o.out_dir / "manifest.json"));
}

TEST(ZeroCurv, ExitCodes) {
  Io io;
  ZeroCurvOptions o;
  o.catalog = "sg-akns";
  o.out_dir = scratch("zc");
  EXPECT_EQ(cmd_zero_curv(o, io.out, io.err), kExitOk);
  o.sign = "+";
  EXPECT_EQ(cmd_zero_curv(o, io.out, io.err), kExitFailed);
  o.sign = "-";
  o.catalog = "sg-akns-printed";
  EXPECT_EQ(cmd_zero_curv(o, io.out, io.err), kExitFailed);
  EXPECT_NE(io.out.str().find("residual["), std::string::npos);
  o.sign = "*";
  EXPECT_EQ(cmd_zero_curv(o, io.out, io.err), kExitUsage);
}

TEST(ZeroCurv, ZeroMatrices) {
  Io io;
  ZeroCurvOptions o;
  o.form_file = kData / "zero_matrix.json";
  o.out_dir = scratch("zc_zero");
  EXPECT_EQ(cmd_zero_curv(o, io.out, io.err), kExitOk);
  EXPECT_TRUE(load(o.out_dir / "zero_curvature.json")["zero_curvature"].get<bool>());
}

TEST(Solve, ZeroDatumIsTrivial) {
  Io io;
  SolveOptions o{kConfigs / "zero.json", scratch("solve_zero")};
  ASSERT_EQ(cmd_solve(o, io.out, io.err), kExitOk);
  json d = load(o.out_dir / "diagnostics.json");
  EXPECT_EQ(d["stop_reason"], "completed");
  EXPECT_EQ(d["h1_drift"].get<double>(), 0);
  EXPECT_EQ(listing(o.out_dir), (std::set<std::string>{"diagnostics.json", "manifest.json", "trajectory.csv"}));
}

TEST(Solve, GaussianPrintsDrift) {
  Io io;
  SolveOptions o{kConfigs / "gaussian.json", scratch("solve_gauss")};
  ASSERT_EQ(cmd_solve(o, io.out, io.err), kExitOk);
  EXPECT_NE(io.out.str().find("h1 drift: "), std::string::npos);
  EXPECT_LT(load(o.out_dir / "diagnostics.json")["h1_drift"].get<double>(), 1e-6);
}

TEST(Solve, SteepBreaks) {
  Io io;
  SolveOptions o{kConfigs / "steep.json", scratch("solve_steep")};
  ASSERT_EQ(cmd_solve(o, io.out, io.err), kExitOk);
  EXPECT_EQ(load(o.out_dir / "diagnostics.json")["stop_reason"], "breaking");
  EXPECT_NE(io.out.str().find("breaking: yes"), std::string::npos);
}

TEST(Solve, BadConfigExitTwo) {
  Io io;
  EXPECT_EQ(cmd_solve({kData / "missing.json", scratch("solve_bad")}, io.out, io.err), kExitUsage);
  EXPECT_EQ(cmd_solve({kData / "zero_matrix.json", scratch("solve_bad")}, io.out, io.err), kExitUsage);
}

TEST(Metric, GaussianRun) {
  Io io;
  fs::path run = scratch("metric_run");
  ASSERT_EQ(cmd_solve({kConfigs / "gaussian.json", run}, io.out, io.err), kExitOk);
  MetricOptions o;
  o.trajectory_dir = run;
  o.out_dir = scratch("metric_gauss");
  o.stride = 4;
  ASSERT_EQ(cmd_metric(o, io.out, io.err), kExitOk) << io.err.str();
  json disc = load(o.out_dir / "discs.json");
  EXPECT_TRUE(disc["found"].get<bool>());
  EXPECT_TRUE(disc["recheck"]["ok"].get<bool>());
  EXPECT_EQ(disc["discs"].size(), 2u);
  json loc = load(o.out_dir / "locus.json");
  EXPECT_TRUE(loc["every_slice_has_zero"].get<bool>());
  for (const auto& s : loc["slices"]) EXPECT_GE(s["ux_zeros"].size(), 1u);
  EXPECT_LE(load(o.out_dir / "metric.json")["det_identity_error"].get<double>(), 1e-10);
  EXPECT_EQ(listing(o.out_dir), (std::set<std::string>{"K.svg", "W.svg", "curvature.json", "discs.json",
                                                      "fields.csv", "locus.json", "manifest.json", "metric.json"}));
}

TEST(Metric, ConstantRunIsDegenerate) {
  Io io;
  fs::path run = scratch("metric_zero_run");
  ASSERT_EQ(cmd_solve({kConfigs / "zero.json", run}, io.out, io.err), kExitOk);
  MetricOptions o;
  o.trajectory_dir = run;
  o.out_dir = scratch("metric_zero");
  ASSERT_EQ(cmd_metric(o, io.out, io.err), kExitOk);
  json m = load(o.out_dir / "metric.json");
  EXPECT_TRUE(m["everywhere_degenerate"].get<bool>());
  for (const auto& s : load(o.out_dir / "locus.json")["slices"]) EXPECT_TRUE(s["everywhere_degenerate"].get<bool>());
  EXPECT_FALSE(load(o.out_dir / "discs.json")["found"].get<bool>());
}

TEST(Metric, ExactKinkMedian) {
  Io io;
  MetricOptions o;
  o.exact_sg = 1.0;
  o.stride = 50;
  o.out_dir = scratch("metric_sg");
  ASSERT_EQ(cmd_metric(o, io.out, io.err), kExitOk);
  EXPECT_LT(load(o.out_dir / "curvature.json")["median_abs_K_plus_1"].get<double>(), 1e-3);
}

TEST(Metric, InputErrors) {
  Io io;
  MetricOptions o;
  o.out_dir = scratch("metric_bad");
  EXPECT_EQ(cmd_metric(o, io.out, io.err), kExitUsage);
  o.trajectory_dir = scratch("metric_nothing");
  EXPECT_EQ(cmd_metric(o, io.out, io.err), kExitUsage);
  o.trajectory_dir.clear();
  o.exact_sg = 0.0;
  EXPECT_EQ(cmd_metric(o, io.out, io.err), kExitUsage);
}

TEST(Report, IdempotentAndWarnsOnDigest) {
  fs::path d = scratch("report");
  ASSERT_EQ(verify("sg", d), kExitOk);
  Io io;
  ASSERT_EQ(cmd_report({d}, io.out, io.err), kExitOk);
  const std::string first = slurp(d / "consolidated.json"), text = slurp(d / "summary.txt");
  ASSERT_EQ(cmd_report({d}, io.out, io.err), kExitOk);
  EXPECT_EQ(slurp(d / "consolidated.json"), first);
  EXPECT_EQ(slurp(d / "summary.txt"), text);
  EXPECT_NE(text.find("PSS-verified"), std::string::npos);
  EXPECT_TRUE(io.err.str().empty());

  json r = load(d / "report.json");
  r["verification"]["status"] = "tampered";
  std::ofstream(d / "report.json") << r.dump();
  Io io2;
  EXPECT_EQ(cmd_report({d}, io2.out, io2.err), kExitOk);
  EXPECT_NE(io2.err.str().find("digest mismatch"), std::string::npos);
}

TEST(Report, MissingFilesExitTwo) {
  Io io;
  EXPECT_EQ(cmd_report({scratch("report_none")}, io.out, io.err), kExitUsage);
  fs::path d = scratch("report_missing");
  ASSERT_EQ(verify("sg", d), kExitOk);
  fs::remove(d / "report.json");
  EXPECT_EQ(cmd_report({d}, io.out, io.err), kExitUsage);
}

TEST(Manifest, Fields) {
  fs::path d = scratch("manifest");
  ASSERT_EQ(verify("ch", d), kExitOk);
  json m = load(d / "manifest.json");
  for (const char* k : {"command", "config_digest", "catalog_digest", "seeds", "outputs", "tool_version",
                        "wall_clock_seconds"})
    EXPECT_TRUE(m.contains(k)) << k;
  EXPECT_EQ(m["command"], "verify");
  for (const auto& o : m["outputs"]) EXPECT_EQ(o["sha256"], sha256_file(d / o["path"].get<std::string>()));
}

// Same inputs, same bytes: every CSV/JSON output except the manifest.
TEST(Property, Determinism) {
  Io io;
  fs::path a = scratch("det_a"), b = scratch("det_b");
  ASSERT_EQ(cmd_solve({kConfigs / "gaussian.json", a / "run"}, io.out, io.err), kExitOk);
  ASSERT_EQ(cmd_solve({kConfigs / "gaussian.json", b / "run"}, io.out, io.err), kExitOk);
  for (const fs::path& root : {a, b}) {
    MetricOptions o;
    o.trajectory_dir = root / "run";
    o.out_dir = root / "metric";
    o.stride = 8;
    ASSERT_EQ(cmd_metric(o, io.out, io.err), kExitOk);
    ASSERT_EQ(verify("ch", root / "verify"), kExitOk);
  }
  std::size_t compared = 0;
  for (const auto& e : fs::recursive_directory_iterator(a)) {
    if (!e.is_regular_file() || e.path().filename() == "manifest.json") continue;
    const auto ext = e.path().extension();
    if (ext != ".csv" && ext != ".json") continue;
    EXPECT_EQ(slurp(e.path()), slurp(b / fs::relative(e.path(), a))) << e.path();
    ++compared;
  }
  EXPECT_GE(compared, 8u);
  // Output digests in the manifests agree as well.
  EXPECT_EQ(load(a / "metric/manifest.json")["outputs"], load(b / "metric/manifest.json")["outputs"]);
}
