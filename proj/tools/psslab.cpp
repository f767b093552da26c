#include <iostream>

#include <CLI11.hpp>

#include "psslab/cli/commands.hpp"

using namespace psslab::cli;

int main(int argc, char** argv) {
  CLI::App app{"Pseudospherical-surface toolkit: symbolic verification, Camassa-Holm runs, metric analysis"};
  app.set_version_flag("--version", tool_version());
  app.require_subcommand(1);

  VerifyOptions v;
  auto* verify = app.add_subcommand("verify", "Check the structure equations of a triad against a PDE");
  auto* vcat = verify->add_option("--catalog", v.catalog, "Catalog entry name");
  verify->add_option("--triad", v.triad_file, "Triad or matrix definition file")->excludes(vcat);
  verify->add_option("--pde", v.pde, "sg, ch, or a PDE JSON file (defaults to the entry's PDE)");
  verify->add_option("--mode", v.mode, "multiplier, substitution or auto")->capture_default_str();
  verify->add_option("--perturb", v.perturb, "Scale one coefficient, e.g. w3*2 or w1.dt*-1");
  verify->add_option("--seed", v.seed, "Seed for numeric certificates")->capture_default_str();
  verify->add_option("--out", v.out_dir, "Output directory")->capture_default_str();

  ZeroCurvOptions z;
  auto* zc = app.add_subcommand("zero-curv", "Zero-curvature residual of a matrix pair, reduced modulo the PDE");
  auto* zcat = zc->add_option("--catalog", z.catalog, "Catalog entry name");
  zc->add_option("--triad", z.form_file, "Triad or matrix definition file")->excludes(zcat);
  zc->add_option("--pde", z.pde, "sg, ch, or a PDE JSON file");
  zc->add_option("--sign", z.sign, "Sign in front of D_x T: + or -")->capture_default_str();
  zc->add_option("--seed", z.seed, "Seed for numeric certificates")->capture_default_str();
  zc->add_option("--out", z.out_dir, "Output directory")->capture_default_str();

  SolveOptions s;
  auto* solve = app.add_subcommand("solve", "Integrate Camassa-Holm from a run configuration");
  solve->add_option("--config", s.config, "Run configuration JSON")->required();
  solve->add_option("--out", s.out_dir, "Output directory")->capture_default_str();

  MetricOptions m;
  auto* metric = app.add_subcommand("metric", "Metric, degenerate locus, discs and curvature of a run");
  auto* mtraj = metric->add_option("trajectory", m.trajectory_dir, "Directory written by solve");
  metric->add_option("--exact-sg", m.exact_sg, "Use the exact sine-Gordon kink with parameter a")->excludes(mtraj);
  metric->add_option("--lambda", m.lambda, "Spectral parameter")->capture_default_str();
  metric->add_option("--wmin", m.w_min, "Mask threshold on |W| (default 1e-3 max|W|)");
  metric->add_option("--stride", m.stride, "Write every n-th x column to fields.csv")->capture_default_str();
  metric->add_option("--out", m.out_dir, "Output directory")->capture_default_str();

  ReportOptions r;
  auto* report = app.add_subcommand("report", "Consolidate a run directory into consolidated.json and summary.txt");
  report->add_option("run", r.run_dir, "Run directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (*verify) return cmd_verify(v, std::cout, std::cerr);
  if (*zc) return cmd_zero_curv(z, std::cout, std::cerr);
  if (*solve) return cmd_solve(s, std::cout, std::cerr);
  if (*metric) return cmd_metric(m, std::cout, std::cerr);
  return cmd_report(r, std::cout, std::cerr);
}
