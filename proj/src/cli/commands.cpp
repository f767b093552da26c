#include "psslab/cli/commands.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "psslab/chsim/io.hpp"
#include "psslab/forms/io.hpp"
#include "psslab/geolab/geolab.hpp"
#include "psslab/geolab/io.hpp"
#include "psslab/pss/pss.hpp"
#include "psslab/symcore/calculus.hpp"
#include "psslab/symcore/normal_form.hpp"
#include "psslab/symcore/parse.hpp"

#ifndef PSSLAB_VERSION
#define PSSLAB_VERSION "0.0.0"
#endif

namespace psslab::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

double now_seconds() {
  using namespace std::chrono;
  return duration<double>(steady_clock::now().time_since_epoch()).count();
}

std::string utc_timestamp() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

json read_json_file(const fs::path& p) {
  std::string text = read_file(p);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw forms::FormatError(p.string() + ": " + e.what());
  }
}

// Input errors: exit 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const sym::ParseError& e) {
    err << "parse error: " << e.what() << "\n";
  } catch (const forms::FormatError& e) {
    err << "format error: " << e.what() << "\n";
  } catch (const chsim::ConfigError& e) {
    err << "config error: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "failed: " << e.what() << "\n";
    return kExitFailed;
  }
  return kExitUsage;
}

pss::Pde resolve_pde(const std::string& spec) {
  if (spec.empty()) throw UsageError("no PDE given");
  if (spec == "sg" || spec == "ch") return pss::pde_by_name(spec);
  if (fs::exists(spec)) return pss::pde_from_json(read_json_file(spec));
  throw UsageError("unknown PDE '" + spec + "' (expected sg, ch, or a JSON file)");
}

std::string expr_str(const sym::Expr& e) { return sym::normalize(e).str(); }

json fundamental_json(const forms::Triad& t) {
  pss::FundamentalForm I = pss::first_fundamental(t);
  json deg = json::array();
  for (const auto& f : pss::degenerate_conditions(t)) deg.push_back(f.str());
  return {{"E", expr_str(I.E)},
          {"F", expr_str(I.F)},
          {"G", expr_str(I.G)},
          {"wedge12", expr_str(pss::generic_wedge(t))},
          {"degenerate_factors", deg}};
}

std::string multipliers_line(const pss::VerifyReport& r) {
  std::string s = "(";
  for (int i = 0; i < 3; ++i) {
    if (i) s += ", ";
    s += r.multipliers[i] ? sym::normalize(*r.multipliers[i]).str() : "-";
  }
  return s + ")";
}

forms::CurvatureSign parse_sign(const std::string& s) {
  if (s == "+" || s == "plus") return forms::CurvatureSign::Plus;
  if (s == "-" || s == "minus") return forms::CurvatureSign::Minus;
  throw UsageError("--sign must be + or -");
}

}  // namespace

const char* tool_version() { return "psslab " PSSLAB_VERSION; }

std::string sha256_hex(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string s;
  s.reserve(2 * len);
  for (unsigned i = 0; i < len; ++i) {
    s += hex[md[i] >> 4];
    s += hex[md[i] & 15];
  }
  return s;
}

std::string sha256_file(const fs::path& path) { return sha256_hex(read_file(path)); }

std::string catalog_digest() {
  json j = json::array();
  for (const auto& e : pss::catalog()) j.push_back(e.to_json());
  return sha256_hex(j.dump());
}

// ---- RunRecorder

RunRecorder::RunRecorder(std::string command, fs::path out_dir)
    : command_(std::move(command)), dir_(std::move(out_dir)), started_(now_seconds()) {
  if (dir_.empty()) throw UsageError("empty output directory");
  fs::create_directories(dir_);
}

void RunRecorder::add_input(const std::string& role, const fs::path& file) {
  inputs_[role] = {{"path", file.string()}, {"sha256", sha256_file(file)}};
}

void RunRecorder::write_json(const std::string& name, const json& j) {
  std::ofstream o(path(name), std::ios::binary);
  if (!o) throw std::runtime_error("cannot write " + path(name).string());
  o << j.dump(2) << "\n";
  o.close();
  add_output(name);
}

void RunRecorder::add_output(const std::string& name) {
  if (name == "manifest.json") throw std::logic_error("manifest is not an output");
  outputs_.push_back(name);
}

void RunRecorder::finish() {
  json m;
  m["command"] = command_;
  m["arguments"] = args_;
  m["inputs"] = inputs_;
  // Arguments and input bytes together pin what the command was asked to do.
  m["config_digest"] = sha256_hex(json{{"arguments", args_}, {"inputs", inputs_}}.dump());
  if (catalog_) m["catalog_digest"] = catalog_digest();
  m["seeds"] = seeds_;
  json outs = json::array();
  for (const auto& n : outputs_) outs.push_back({{"path", n}, {"sha256", sha256_file(path(n))}});
  m["outputs"] = outs;
  m["tool_version"] = tool_version();
  m["finished_utc"] = utc_timestamp();
  m["wall_clock_seconds"] = now_seconds() - started_;
  std::ofstream o(path("manifest.json"), std::ios::binary);
  if (!o) throw std::runtime_error("cannot write manifest");
  o << m.dump(2) << "\n";
}

// ---- verify

int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (o.catalog.empty() == o.triad_file.empty()) throw UsageError("give exactly one of --catalog and --triad");
    const pss::CatalogEntry* entry = nullptr;
    forms::Triad triad;
    std::string pde_spec = o.pde;
    json input;
    if (!o.catalog.empty()) {
      entry = &pss::catalog_entry(o.catalog);
      triad = entry->triad ? *entry->triad : pss::akns_entry_triad(*entry);
      if (pde_spec.empty()) pde_spec = entry->pde;
      input["catalog"] = entry->name;
      input["provenance"] = entry->provenance;
    } else {
      forms::FormDocument doc = forms::read_form_file(o.triad_file);
      triad = doc.is_triad() ? doc.triad() : forms::sasaki_triad(doc.matrix());
      input["triad_file"] = o.triad_file.string();
      input["name"] = doc.name;
    }
    pss::Pde pde = resolve_pde(pde_spec);
    pss::VerifyMode mode = pss::mode_from_name(o.mode);
    if (!o.perturb.empty()) {
      triad = pss::perturb(triad, o.perturb);
      input["perturb"] = o.perturb;
    }

    RunRecorder rec("verify", o.out_dir);
    rec.set_arguments({{"catalog", o.catalog},
                       {"triad", o.triad_file.string()},
                       {"pde", pde_spec},
                       {"mode", o.mode},
                       {"perturb", o.perturb},
                       {"seed", o.seed}});
    if (!o.triad_file.empty()) rec.add_input("triad", o.triad_file);
    if (!o.pde.empty() && fs::exists(o.pde)) rec.add_input("pde", o.pde);
    if (entry) rec.use_catalog();
    rec.add_seed(o.seed);

    sym::ZeroTestOptions zt;
    zt.seed = o.seed;
    pss::VerifyReport rep = pss::verify_pss(triad, pde, mode, zt);
    json j{{"input", input},
           {"triad", {forms::to_json(triad.w1), forms::to_json(triad.w2), forms::to_json(triad.w3)}},
           {"verification", rep.to_json()},
           {"geometry", fundamental_json(triad)}};
    rec.write_json("report.json", j);

    out << "status: " << pss::status_name(rep.status) << "\n";
    out << "mode: " << pss::mode_name(rep.mode) << "\n";
    out << "multipliers: " << multipliers_line(rep) << "\n";
    if (!rep.detail.empty()) out << "detail: " << rep.detail << "\n";

    if (entry && entry->akns) {
      pss::AknsReport ar = pss::verify_akns(*entry, o.seed);
      json aj = ar.to_json();
      if (!ar.reduces_to_zero)
        aj["erratum"] = "AKNS compatibility fails modulo the equation for the data as given (" + entry->provenance +
                        ")";
      rec.write_json("akns.json", aj);
      out << "akns: " << (ar.reduces_to_zero ? "compatible" : "NOT compatible, erratum written to akns.json")
          << "\n";
    }
    rec.finish();
    return rep.status == pss::VerifyStatus::Verified ? kExitOk : kExitFailed;
  });
}

// ---- zero-curv

int cmd_zero_curv(const ZeroCurvOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (o.catalog.empty() == o.form_file.empty()) throw UsageError("give exactly one of --catalog and --triad");
    const forms::CurvatureSign sign = parse_sign(o.sign);
    forms::MatrixOneForm M;
    std::string pde_spec = o.pde;
    json input;
    if (!o.catalog.empty()) {
      const auto& e = pss::catalog_entry(o.catalog);
      M = e.akns ? forms::akns_matrix(*e.akns) : forms::triad_to_matrix(*e.triad);
      if (pde_spec.empty()) pde_spec = e.pde;
      input["catalog"] = e.name;
      input["provenance"] = e.provenance;
    } else {
      forms::FormDocument doc = forms::read_form_file(o.form_file);
      M = doc.is_triad() ? forms::triad_to_matrix(doc.triad()) : doc.matrix();
      input["file"] = o.form_file.string();
      input["name"] = doc.name;
    }
    std::optional<pss::Pde> pde;
    if (!pde_spec.empty()) pde = resolve_pde(pde_spec);
    if (pde && !pde->solved) throw UsageError("PDE '" + pde->name + "' has no solved form to reduce with");

    RunRecorder rec("zero-curv", o.out_dir);
    rec.set_arguments(
        {{"catalog", o.catalog}, {"file", o.form_file.string()}, {"pde", pde_spec}, {"sign", o.sign}, {"seed", o.seed}});
    if (!o.form_file.empty()) rec.add_input("form", o.form_file);
    if (!o.pde.empty() && fs::exists(o.pde)) rec.add_input("pde", o.pde);
    if (!o.catalog.empty()) rec.use_catalog();
    rec.add_seed(o.seed);

    sym::ZeroTestOptions zt;
    zt.seed = o.seed;
    forms::ExprMatrix R = forms::zero_curvature_residual(M.X, M.T, sign);
    bool all_zero = true;
    json entries = json::array();
    for (int i = 0; i < 2; ++i)
      for (int k = 0; k < 2; ++k) {
        sym::Expr red = pde ? sym::substitute(R[i][k], pde->solved->first, pde->solved->second, true) : R[i][k];
        red = sym::normalize(red);
        const bool z = sym::is_zero(red, zt);
        all_zero = all_zero && z;
        entries.push_back({{"entry", {i + 1, k + 1}},
                           {"residual", expr_str(R[i][k])},
                           {"reduced", red.str()},
                           {"zero", z}});
        if (!z) out << "residual[" << i + 1 << "," << k + 1 << "] = " << red.str() << "\n";
      }
    json j{{"input", input},
           {"sign", sign == forms::CurvatureSign::Plus ? "+" : "-"},
           {"pde", pde ? json(pde->name) : json(nullptr)},
           {"residuals", entries},
           {"zero_curvature", all_zero}};
    rec.write_json("zero_curvature.json", j);
    rec.finish();
    out << "zero curvature: " << (all_zero ? "yes" : "no") << "\n";
    return all_zero ? kExitOk : kExitFailed;
  });
}

// ---- solve

int cmd_solve(const SolveOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (o.config.empty()) throw UsageError("--config is required");
    chsim::RunConfig rc = chsim::read_run_config(o.config);
    chsim::Field u0 = rc.initial.sample(rc.grid);

    RunRecorder rec("solve", o.out_dir);
    rec.set_arguments({{"config", o.config.string()}, {"resolved", chsim::run_config_to_json(rc)}});
    rec.add_input("config", o.config);

    chsim::Trajectory tr = chsim::integrate(u0, rc.solver, rc.grid);
    chsim::write_trajectory_csv(rec.path("trajectory.csv"), tr);
    rec.add_output("trajectory.csv");
    rec.write_json("diagnostics.json", chsim::trajectory_summary(tr, rc.initial));
    rec.finish();

    out << std::setprecision(6);
    out << "stop: " << chsim::stop_reason_name(tr.stop) << " at t = " << tr.stop_time << " after " << tr.steps
        << " steps\n";
    if (tr.stop == chsim::StopReason::Breaking) out << "breaking: yes (min u_x " << tr.final_diagnostics.I << ")\n";
    out << "h1 drift: " << tr.h1_drift() << "\n";
    out << "mass drift: " << tr.mass_drift() << "\n";
    if (tr.final_diagnostics.I == 0 && tr.final_diagnostics.S == 0)
      out << "trivial datum: u_x vanishes identically\n";
    else
      out << "sign structure I < 0 < S: " << (tr.sign_structure_ok ? "yes" : "no") << "\n";
    return tr.stop == chsim::StopReason::NonFinite ? kExitFailed : kExitOk;
  });
}

// ---- metric

namespace {

struct Subsampled {
  geo::Lattice grid;
  std::vector<geo::Plane> planes;
};

Subsampled subsample_x(const geo::Lattice& g, const std::vector<const geo::Plane*>& planes, std::size_t stride) {
  Subsampled s;
  s.grid.t = g.t;
  for (std::size_t ix = 0; ix < g.nx(); ix += stride) s.grid.x.push_back(g.x[ix]);
  for (const auto* p : planes) {
    geo::Plane q;
    q.reserve(s.grid.size());
    for (std::size_t it = 0; it < g.nt(); ++it)
      for (std::size_t ix = 0; ix < g.nx(); ix += stride) q.push_back((*p)[g.index(it, ix)]);
    s.planes.push_back(std::move(q));
  }
  return s;
}

void write_fields(RunRecorder& rec, const geo::Lattice& g, const std::vector<std::string>& names,
                  const std::vector<const geo::Plane*>& planes, std::size_t stride) {
  if (stride <= 1) {
    geo::write_planes_csv(rec.path("fields.csv"), g, names, planes);
  } else {
    Subsampled s = subsample_x(g, planes, stride);
    std::vector<const geo::Plane*> ptrs;
    for (const auto& p : s.planes) ptrs.push_back(&p);
    geo::write_planes_csv(rec.path("fields.csv"), s.grid, names, ptrs);
  }
  rec.add_output("fields.csv");
}

double max_abs(const geo::Plane& p) {
  double m = 0;
  for (double v : p)
    if (std::isfinite(v)) m = std::max(m, std::abs(v));
  return m;
}

void write_plots(RunRecorder& rec, const geo::MetricField& mf, const geo::CurvatureField& K,
                 const geo::SingularLocus* zeros) {
  geo::HeatmapOptions w;
  w.title = "W = w1 ^ w2 coefficient";
  w.half_range = std::max(max_abs(mf.W), 1e-300);
  w.zeros = zeros;
  geo::write_heatmap_svg(rec.path("W.svg"), mf.grid, mf.W, w);
  rec.add_output("W.svg");

  geo::HeatmapOptions k;
  k.title = "Gaussian curvature K (hatched: masked)";
  k.center = -1;
  k.half_range = 1;
  k.mask = &K.mask;
  k.zeros = zeros;
  geo::write_heatmap_svg(rec.path("K.svg"), K.grid, K.K, k);
  rec.add_output("K.svg");
}

}  // namespace

int cmd_metric(const MetricOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (o.trajectory_dir.empty() == !o.exact_sg.has_value())
      throw UsageError("give exactly one of a trajectory directory and --exact-sg");
    if (o.stride == 0) throw UsageError("--stride must be positive");
    if (o.w_min && !(*o.w_min >= 0)) throw UsageError("--wmin must be non-negative");
    out << std::setprecision(6);

    if (o.exact_sg) {
      const double a = *o.exact_sg;
      geo::MetricField mf = geo::sg_exact_metric(a);
      RunRecorder rec("metric", o.out_dir);
      rec.set_arguments({{"exact_sg", a}, {"wmin", o.w_min ? json(*o.w_min) : json(nullptr)}, {"stride", o.stride}});
      geo::CurvatureField K = geo::brioschi_curvature(mf, o.w_min);
      geo::CurvatureStats st = geo::curvature_stats(K);
      const double det = geo::det_identity_error(mf);
      write_fields(rec, mf.grid, {"E", "F", "G", "W", "K"}, {&mf.E, &mf.F, &mf.G, &mf.W, &K.K}, o.stride);
      json cj = geo::to_json(st);
      cj["w_min"] = K.w_min;
      cj["expected_K"] = -1;
      rec.write_json("curvature.json", cj);
      geo::Window win;
      rec.write_json("metric.json", {{"source", "exact sine-Gordon kink"},
                                     {"a", a},
                                     {"window", {{"x", {win.x_min, win.x_max}}, {"t", {win.t_min, win.t_max}}}},
                                     {"h", win.h},
                                     {"kink_residual", geo::sg_kink_residual(a, win)},
                                     {"det_identity_error", det},
                                     {"curvature", cj}});
      write_plots(rec, mf, K, nullptr);
      rec.finish();
      out << "det identity error: " << det << "\n";
      out << "median |K+1|: " << st.median_abs_dev << ", max |K+1|: " << st.max_abs_dev << " over " << st.unmasked
          << " unmasked points\n";
      return det <= 1e-10 ? kExitOk : kExitFailed;
    }

    chsim::Trajectory tr = chsim::read_trajectory(o.trajectory_dir);
    RunRecorder rec("metric", o.out_dir);
    rec.set_arguments({{"trajectory", o.trajectory_dir.string()},
                       {"lambda", o.lambda},
                       {"wmin", o.w_min ? json(*o.w_min) : json(nullptr)},
                       {"stride", o.stride}});
    rec.add_input("trajectory.csv", o.trajectory_dir / "trajectory.csv");
    rec.add_input("diagnostics.json", o.trajectory_dir / "diagnostics.json");

    geo::SolutionPlanes sp = geo::solution_planes(tr);
    geo::OmegaFields om = geo::omega_fields(sp, o.lambda);
    geo::MetricField mf = geo::metric_field(om);
    geo::CurvatureField K = geo::brioschi_curvature(mf, o.w_min);
    geo::CurvatureStats st = geo::curvature_stats(K);
    const double det = geo::det_identity_error(mf);
    geo::SingularLocus loc = geo::singular_locus(tr, o.lambda);
    geo::DiscReport discs = geo::generic_discs(tr, o.lambda, o.w_min);

    write_fields(rec, mf.grid, {"u", "u_x", "m", "f11", "f12", "f22", "E", "F", "G", "W", "K"},
                 {&sp.u, &sp.ux, &sp.m, &om.f11, &om.f12, &om.f22, &mf.E, &mf.F, &mf.G, &mf.W, &K.K}, o.stride);
    rec.write_json("locus.json", geo::to_json(loc));

    const bool degenerate_run = loc.degenerate_slices() == loc.slices.size();
    bool ok = det <= 1e-10;
    json dj = geo::to_json(discs);
    if (discs.found) {
      geo::DiscCheck chk = geo::recheck_discs(tr, discs);
      dj["recheck"] = {{"ok", chk.ok}, {"reason", chk.reason}};
      json constancy = json::array();
      for (const geo::Rect* r : {&discs.negative, &discs.positive}) {
        geo::ConstancyCheck lc = geo::nonconstancy_check(tr, *r);
        constancy.push_back({{"m_variance", lc.m_variance},
                         {"m_nonconstant", lc.m_nonconstant},
                         {"ux_sign_definite", lc.ux_sign_definite},
                         {"violated", lc.violated()}});
        ok = ok && !lc.violated();
      }
      dj["constancy_checks"] = constancy;
      ok = ok && chk.ok;
    } else if (!degenerate_run) {
      ok = false;
    }
    rec.write_json("discs.json", dj);

    json cj = geo::to_json(st);
    cj["w_min"] = K.w_min;
    cj["note"] = "deviation from K = -1; masked points excluded";
    rec.write_json("curvature.json", cj);

    std::vector<double> h;
    for (const auto& d : tr.diagnostics) h.push_back(d.h);
    bool h_negative = !h.empty();
    for (double v : h) h_negative = h_negative && v < 0;
    rec.write_json("metric.json", {{"source", "trajectory"},
                                   {"lambda", o.lambda},
                                   {"m_level", geo::m_level(o.lambda)},
                                   {"nx", mf.grid.nx()},
                                   {"nt", mf.grid.nt()},
                                   {"det_identity_error", det},
                                   {"every_slice_has_zero", loc.every_slice_has_zero()},
                                   {"everywhere_degenerate_slices", loc.degenerate_slices()},
                                   {"everywhere_degenerate", degenerate_run},
                                   {"discs_found", discs.found},
                                   {"h_negative_at_every_save", h_negative},
                                   {"curvature", cj}});
    write_plots(rec, mf, K, &loc);
    rec.finish();

    for (const auto& s : loc.slices) ok = ok && !s.missing_zero;
    out << "det identity error: " << det << "\n";
    out << "slices: " << loc.slices.size() << ", every slice has a u_x zero: "
        << (loc.every_slice_has_zero() ? "yes" : "no") << ", everywhere degenerate: " << loc.degenerate_slices()
        << "\n";
    out << "discs: " << (discs.found ? "found" : "not found (" + discs.failure + ")") << "\n";
    out << "h < 0 at every save: " << (h_negative ? "yes" : "no") << "\n";
    out << "median |K+1|: " << st.median_abs_dev << " over " << st.unmasked << " unmasked points\n";
    return ok ? kExitOk : kExitFailed;
  });
}

// ---- report

namespace {

std::string summary_text(const json& man, const json& docs) {
  std::ostringstream s;
  s << "command: " << man.value("command", "?") << "\n";
  s << "tool: " << man.value("tool_version", "?") << "\n";
  s << "config digest: " << man.value("config_digest", "?") << "\n";
  auto get = [&](const char* doc, const json::json_pointer& p) -> std::string {
    if (!docs.contains(doc) || !docs[doc].contains(p)) return "?";
    const json& v = docs[doc][p];
    return v.is_string() ? v.get<std::string>() : v.dump();
  };
  using P = json::json_pointer;
  const std::string cmd = man.value("command", "");
  if (cmd == "verify") {
    s << "status: " << get("report.json", P("/verification/status")) << "\n";
    s << "multipliers: " << get("report.json", P("/verification/multipliers")) << "\n";
    if (docs.contains("akns.json")) s << "akns compatible: " << get("akns.json", P("/reduces_to_zero")) << "\n";
  } else if (cmd == "zero-curv") {
    s << "zero curvature: " << get("zero_curvature.json", P("/zero_curvature")) << "\n";
  } else if (cmd == "solve") {
    s << "stop: " << get("diagnostics.json", P("/stop_reason")) << " at t = "
      << get("diagnostics.json", P("/stop_time")) << "\n";
    s << "h1 drift: " << get("diagnostics.json", P("/h1_drift")) << "\n";
    s << "mass drift: " << get("diagnostics.json", P("/mass_drift")) << "\n";
  } else if (cmd == "metric") {
    s << "det identity error: " << get("metric.json", P("/det_identity_error")) << "\n";
    s << "median |K+1|: " << get("curvature.json", P("/median_abs_K_plus_1")) << "\n";
    if (docs.contains("discs.json")) {
      s << "every slice has a u_x zero: " << get("metric.json", P("/every_slice_has_zero")) << "\n";
      s << "discs found: " << get("discs.json", P("/found")) << "\n";
    }
  }
  return s.str();
}

}  // namespace

int cmd_report(const ReportOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const fs::path man_path = o.run_dir / "manifest.json";
    if (!fs::exists(man_path)) throw UsageError("missing " + man_path.string());
    json man = read_json_file(man_path);
    if (!man.contains("outputs") || !man["outputs"].is_array()) throw UsageError("manifest lists no outputs");

    json docs = json::object(), files = json::array(), warnings = json::array();
    for (const auto& entry : man["outputs"]) {
      const std::string name = entry.value("path", "");
      const fs::path p = o.run_dir / name;
      if (name.empty() || !fs::exists(p)) throw UsageError("missing output " + p.string());
      const std::string digest = sha256_file(p);
      const bool match = digest == entry.value("sha256", "");
      if (!match) {
        warnings.push_back("digest mismatch: " + name);
        err << "warning: digest mismatch for " << name << "\n";
      }
      files.push_back({{"path", name}, {"sha256", digest}, {"matches_manifest", match}});
      if (p.extension() != ".json") continue;
      try {
        docs[name] = json::parse(read_file(p));
      } catch (const json::parse_error&) {
        warnings.push_back("not valid JSON: " + name);
        err << "warning: " << name << " is not valid JSON\n";
      }
    }
    json report{{"manifest", man}, {"files", files}, {"documents", docs}, {"warnings", warnings}};
    std::ofstream(o.run_dir / "consolidated.json", std::ios::binary) << report.dump(2) << "\n";
    std::string text = summary_text(man, docs);
    for (const auto& w : warnings) text += "warning: " + w.get<std::string>() + "\n";
    std::ofstream(o.run_dir / "summary.txt", std::ios::binary) << text;
    out << text;
    return kExitOk;
  });
}

}  // namespace psslab::cli
