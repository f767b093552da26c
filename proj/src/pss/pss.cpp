#include "psslab/pss/pss.hpp"

#include <algorithm>
#include <stdexcept>

#include "psslab/forms/io.hpp"
#include "psslab/symcore/calculus.hpp"
#include "psslab/symcore/normal_form.hpp"
#include "psslab/symcore/parse.hpp"

namespace psslab::pss {

using nlohmann::json;
using sym::Atom;
using sym::Poly;
using sym::RatFunc;

namespace {

Expr P(std::string_view s) { return sym::parse(s); }

bool params_only(const Poly& p) {
  for (const auto& a : p.atoms())
    if (a.kind != Atom::Kind::Param) return false;
  return true;
}

std::string jet_name(JetCoord c) { return c.name(); }

}  // namespace

Pde sine_gordon() { return {"sg", P("u_xt - sin(u)"), std::make_pair(JetCoord{1, 1}, P("sin(u)"))}; }

Pde camassa_holm() {
  return {"ch", P("u_t - u_xxt + 3*u*u_x - 2*u_x*u_xx - u*u_xxx"),
          std::make_pair(JetCoord{2, 1}, P("u_t + 3*u*u_x - 2*u_x*u_xx - u*u_xxx"))};
}

Pde pde_by_name(std::string_view name) {
  if (name == "sg") return sine_gordon();
  if (name == "ch") return camassa_holm();
  throw std::invalid_argument("unknown equation '" + std::string(name) + "'");
}

json pde_to_json(const Pde& p) {
  json j{{"name", p.name}, {"E", p.E.str()}};
  if (p.solved) j["solved"] = {{"jet", jet_name(p.solved->first)}, {"expr", p.solved->second.str()}};
  return j;
}

Pde pde_from_json(const json& j) {
  if (!j.is_object() || !j.contains("E") || !j["E"].is_string())
    throw forms::FormatError("equation document needs a string field 'E'");
  Pde p;
  p.name = j.value("name", "");
  p.E = sym::parse(j["E"].get<std::string>());
  if (j.contains("solved")) {
    const json& s = j["solved"];
    if (!s.is_object() || !s.contains("jet") || !s.contains("expr"))
      throw forms::FormatError("'solved' needs 'jet' and 'expr'");
    Expr z = sym::parse(s["jet"].get<std::string>());
    if (z.kind() != Expr::Kind::Jet) throw forms::FormatError("'solved.jet' must be a jet coordinate");
    p.solved = std::make_pair(z.jet_coord(), sym::parse(s["expr"].get<std::string>()));
  }
  return p;
}

std::array<TwoForm, 3> structure_residuals(const Triad& t) {
  using forms::ext_d;
  using forms::wedge;
  return {ext_d(t.w1) - wedge(t.w3, t.w2), ext_d(t.w2) - wedge(t.w1, t.w3), ext_d(t.w3) - wedge(t.w1, t.w2)};
}

const char* status_name(VerifyStatus s) {
  switch (s) {
    case VerifyStatus::Verified: return "PSS-verified";
    case VerifyStatus::IdenticallyFlat: return "identically-flat";
    case VerifyStatus::Failed: return "failed";
  }
  return "?";
}

const char* mode_name(VerifyMode m) {
  switch (m) {
    case VerifyMode::Multiplier: return "multiplier";
    case VerifyMode::Substitution: return "substitution";
    case VerifyMode::Auto: return "auto";
  }
  return "?";
}

VerifyMode mode_from_name(std::string_view s) {
  if (s == "multiplier") return VerifyMode::Multiplier;
  if (s == "substitution") return VerifyMode::Substitution;
  if (s == "auto") return VerifyMode::Auto;
  throw std::invalid_argument("unknown mode '" + std::string(s) + "'");
}

json VerifyReport::to_json() const {
  json j;
  j["pde"] = pde;
  j["status"] = status_name(status);
  j["mode"] = mode_name(mode);
  j["residuals"] = json::array();
  j["multipliers"] = json::array();
  j["reduced"] = json::array();
  for (int i = 0; i < 3; ++i) {
    j["residuals"].push_back(sym::normalize(residuals[i].c).str());
    j["multipliers"].push_back(multipliers[i] ? json(sym::normalize(*multipliers[i]).str()) : json(nullptr));
    j["reduced"].push_back(reduced[i] ? json(reduced[i]->str()) : json(nullptr));
  }
  j["wedge12"] = wedge12.str();
  j["pivot"] = pivot ? json(jet_name(*pivot)) : json(nullptr);
  j["detail"] = detail;
  return j;
}

namespace {

struct Pivot {
  Atom z;
  Expr E_scale;  // den(E) / a, where E = (a z + b) / den(E)
};

// Highest-ranked jet that enters E linearly with a parameter-only coefficient.
std::optional<Pivot> find_pivot(const Expr& E) {
  RatFunc rf = sym::to_ratfunc(E);
  if (!rf.den.is_constant() && !params_only(rf.den)) return std::nullopt;
  for (const auto& a : rf.num.atoms()) {
    if (a.kind != Atom::Kind::Jet) continue;
    if (rf.num.degree_in(a) != 1 || rf.num.min_degree_in(a) < 0) continue;
    auto coeffs = rf.num.coefficients_in(a);
    const Poly& c1 = coeffs.at(1);
    if (!params_only(c1)) continue;
    return Pivot{a, rf.den.to_expr() / c1.to_expr()};
  }
  return std::nullopt;
}

// mu with R = mu E, or nullopt.
std::optional<Expr> divide_by_equation(const Expr& R, const Expr& E, const Pivot& pv,
                                       const sym::ZeroTestOptions& zt) {
  RatFunc rr = sym::to_ratfunc(R);
  if (rr.num.is_zero()) return Expr(0);
  if (rr.den.degree_in(pv.z) != 0 || rr.den.min_degree_in(pv.z) != 0) return std::nullopt;
  if (rr.num.degree_in(pv.z) != 1 || rr.num.min_degree_in(pv.z) < 0) return std::nullopt;
  Poly c1 = rr.num.coefficients_in(pv.z).at(1);
  Expr mu = sym::normalize(c1.to_expr() * pv.E_scale / rr.den.to_expr());
  if (sym::free_jets(mu).count(pv.z.jet)) return std::nullopt;
  if (!sym::is_zero(R - mu * E, zt)) return std::nullopt;
  return mu;
}

}  // namespace

VerifyReport verify_pss(const Triad& t, const Pde& p, VerifyMode mode, const sym::ZeroTestOptions& zt) {
  VerifyReport rep;
  rep.pde = p.name;
  rep.residuals = structure_residuals(t);
  rep.wedge12 = generic_wedge(t);
  try {
    bool flat = true;
    for (const auto& r : rep.residuals) flat = flat && sym::is_zero(r.c, zt);
    if (flat) {
      rep.mode = VerifyMode::Multiplier;
      rep.status = VerifyStatus::IdenticallyFlat;
      for (auto& m : rep.multipliers) m = Expr(0);
      rep.detail = "structure equations hold without the equation";
      return rep;
    }

    std::string why;
    if (mode != VerifyMode::Substitution) {
      auto pv = find_pivot(p.E);
      if (pv) {
        rep.pivot = pv->z.jet;
        bool all = true;
        for (int i = 0; i < 3; ++i) {
          rep.multipliers[i] = divide_by_equation(rep.residuals[i].c, p.E, *pv, zt);
          if (!rep.multipliers[i]) {
            all = false;
            why = "residual " + std::to_string(i + 1) + " is not a multiple of E";
          }
        }
        if (all) {
          rep.mode = VerifyMode::Multiplier;
          rep.status = VerifyStatus::Verified;
          return rep;
        }
      } else {
        why = "E has no jet entering linearly with a parameter-only coefficient";
      }
    }
    rep.mode = VerifyMode::Multiplier;
    if (mode != VerifyMode::Multiplier) {
      if (!p.solved) {
        rep.detail = why.empty() ? "equation has no solved form" : why + "; equation has no solved form";
        return rep;
      }
      for (auto& m : rep.multipliers) m.reset();
      rep.mode = VerifyMode::Substitution;
      bool all = true;
      for (int i = 0; i < 3; ++i) {
        Expr red = sym::normalize(sym::substitute(rep.residuals[i].c, p.solved->first, p.solved->second, true));
        rep.reduced[i] = red;
        if (!sym::is_zero(red, zt)) {
          all = false;
          why = "residual " + std::to_string(i + 1) + " does not vanish modulo " + p.solved->first.name() +
                " = " + p.solved->second.str();
        }
      }
      if (all) {
        rep.status = VerifyStatus::Verified;
        return rep;
      }
    }
    rep.detail = why;
  } catch (const sym::ZeroTestInconclusive& e) {
    rep.status = VerifyStatus::Failed;
    rep.detail = std::string("zero test inconclusive: ") + e.what();
  } catch (const sym::SubstitutionCycle& e) {
    rep.status = VerifyStatus::Failed;
    rep.detail = std::string("substitution cycle: ") + e.what();
  }
  return rep;
}

FundamentalForm first_fundamental(const Triad& t) {
  const Expr &f11 = t.w1.dx, &f12 = t.w1.dt, &f21 = t.w2.dx, &f22 = t.w2.dt;
  return {sym::normalize(f11 * f11 + f21 * f21), sym::normalize(f11 * f12 + f21 * f22),
          sym::normalize(f12 * f12 + f22 * f22)};
}

Expr generic_wedge(const Triad& t) { return sym::normalize(forms::wedge(t.w1, t.w2).c); }

std::vector<Expr> degenerate_conditions(const Triad& t) {
  RatFunc rf = sym::to_ratfunc(forms::wedge(t.w1, t.w2).c);
  std::vector<Expr> out;
  if (rf.num.is_zero()) return out;
  sym::Monomial content;
  for (const auto& a : rf.num.atoms()) {
    int lo = rf.num.min_degree_in(a);
    if (lo == 0) continue;
    content.emplace_back(a, lo);
    if (lo > 0 && a.kind != Atom::Kind::Param) out.push_back(a.expr);
  }
  Poly rest = rf.num.times_monomial(sym::mono_inverse(content));
  if (!params_only(rest)) {
    auto [m, c] = rest.leading();
    sym::Monomial param_part;
    for (const auto& [a, e] : m)
      if (a.kind == Atom::Kind::Param) param_part.emplace_back(a, e);
    rest = rest.times_monomial(sym::mono_inverse(param_part)).scaled(c.inverse());
    out.push_back(rest.to_expr());
  }
  return out;
}

Expr ch_m_form(int alpha, int beta, const Expr& m) {
  Expr u = Expr::u();
  Expr ux = Expr::jet(JetCoord{1, 0});
  return sym::total_derivative(m, sym::Var::T) + Expr(alpha) * u * sym::total_derivative(m, sym::Var::X) +
         Expr(beta) * ux * m;
}

json MFormReport::to_json() const {
  json j = json::array();
  for (const auto& r : rows)
    j.push_back({{"alpha", r.alpha},
                 {"beta", r.beta},
                 {"expansion", sym::normalize(r.expansion).str()},
                 {"difference", r.difference.str()},
                 {"matches", r.matches}});
  return j;
}

MFormReport ch_form_equivalence() {
  Expr m = P("u - u_xx");
  Expr E = camassa_holm().E;
  MFormReport rep;
  for (auto [a, b] : {std::pair{2, 1}, std::pair{1, 2}}) {
    MFormExpansion row;
    row.alpha = a;
    row.beta = b;
    row.expansion = ch_m_form(a, b, m);
    row.difference = sym::normalize(row.expansion - E);
    row.matches = sym::is_zero(row.difference);
    rep.rows.push_back(row);
  }
  return rep;
}

// Catalog.

namespace {

OneForm F(std::string_view dx, std::string_view dt) { return {P(dx), P(dt)}; }

std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> c;

  CatalogEntry sg;
  sg.name = "sg";
  sg.family = "sine-gordon-triad";
  sg.parameters = {"eta"};
  sg.triad = Triad{F("0", "sin(u)/eta"), F("eta", "cos(u)/eta"), F("u_x", "0")};
  sg.pde = "sg";
  sg.provenance = "as published";
  c.push_back(sg);

  CatalogEntry ch;
  ch.name = "ch";
  ch.family = "camassa-holm-triad";
  ch.parameters = {"lambda"};
  ch.triad = Triad{
      F("lambda/2 + 1/(2*lambda) - (u - u_xx)",
        "u*(u - u_xx) + lambda/2*u - u/(2*lambda) - 1/2 - lambda^2/2"),
      F("0", "-u_x"),
      F("(u - u_xx) + 1/(2*lambda) - lambda/2",
        "lambda^2/2 - 1/2 - u/(2*lambda) - lambda/2*u - u*(u - u_xx)")};
  ch.pde = "ch";
  ch.provenance = "as published, m = u - u_xx expanded";
  c.push_back(ch);

  forms::AknsData sgd;
  sgd.q = P("-u_x/2");
  sgd.r = P("u_x/2");
  sgd.B = P("i*sin(u)/(4*zeta)");
  sgd.C = sgd.B;

  CatalogEntry sgp;
  sgp.name = "sg-akns-printed";
  sgp.family = "sine-gordon-akns";
  sgp.parameters = {"zeta"};
  sgp.akns = sgd;
  sgp.akns->A = P("i*cos(u)/4");
  sgp.pde = "sg";
  sgp.provenance = "as published, A = i cos(u)/4; under investigation: first AKNS residual does not vanish";
  sgp.expected_to_verify = false;
  c.push_back(sgp);

  CatalogEntry sga = sgp;
  sga.name = "sg-akns";
  sga.akns->A = P("i*cos(u)/(4*zeta)");
  sga.provenance = "corrected: published A divided by zeta";
  sga.expected_to_verify = true;
  c.push_back(sga);

  CatalogEntry cha;
  cha.name = "ch-akns";
  cha.family = "camassa-holm-akns";
  cha.parameters = {"eta", "beta"};
  forms::AknsData chd;
  const char* m = "(u - u_xx)";
  chd.A = P("(u_x - eta*u - beta/eta)/2");
  chd.B = P("(beta*u - 1 + beta*u/eta^2 + u + u/eta^2)/2");
  chd.C = P(std::string("(2/eta^2 - 2*u*") + m +
            " + beta*u + beta*u/eta^2 - u - 2*beta*u_x/eta + 2*u_x/eta - u - (2*beta + u)/eta^2)/2");
  chd.r = P(std::string("(1 - 2*") + m + " - beta + (beta + 1)/eta^2)/2");
  chd.q = P("((beta - 1)/eta^2 - 1 - beta)/2");
  cha.akns = chd;
  cha.pde = "ch";
  cha.constraint = P("eta^4 - eta^2 + beta^2*eta^2 - (beta^2 + 1 - 2*beta)");
  cha.provenance = "as published with zeta = i*eta/2 and the eta, beta constraint; under investigation";
  cha.expected_to_verify = false;
  c.push_back(cha);
  return c;
}

json akns_to_json(const forms::AknsData& d) {
  return {{"q", d.q.str()}, {"r", d.r.str()}, {"A", d.A.str()},
          {"B", d.B.str()}, {"C", d.C.str()}, {"spectral", d.spectral}};
}

forms::AknsData akns_from_json(const json& j) {
  auto leaf = [&](const char* k) {
    if (!j.contains(k) || !j[k].is_string()) throw forms::FormatError(std::string("akns: missing '") + k + "'");
    return sym::parse(j[k].get<std::string>());
  };
  forms::AknsData d{leaf("q"), leaf("r"), leaf("A"), leaf("B"), leaf("C")};
  d.spectral = j.value("spectral", "zeta");
  return d;
}

// Entries without their own spectral parameter are written in eta = -2 i zeta.
Expr in_entry_parameters(const CatalogEntry& e, const Expr& x) {
  const std::string& z = e.akns->spectral;
  for (const auto& p : e.parameters)
    if (p == z) return x;
  return sym::substitute_param(x, z, Expr::imag_unit() * Expr::param("eta") / 2);
}

}  // namespace

json CatalogEntry::to_json() const {
  json j;
  j["name"] = name;
  j["family"] = family;
  j["parameters"] = parameters;
  j["pde"] = pde;
  j["provenance"] = provenance;
  j["expected_to_verify"] = expected_to_verify;
  if (constraint) j["constraint"] = constraint->str();
  if (triad) {
    j["w1"] = forms::to_json(triad->w1);
    j["w2"] = forms::to_json(triad->w2);
    j["w3"] = forms::to_json(triad->w3);
  }
  if (akns) j["akns"] = akns_to_json(*akns);
  return j;
}

CatalogEntry CatalogEntry::from_json(const json& j) {
  CatalogEntry e;
  e.name = j.value("name", "");
  e.family = j.value("family", "");
  e.pde = j.value("pde", "");
  e.provenance = j.value("provenance", "");
  e.expected_to_verify = j.value("expected_to_verify", true);
  if (j.contains("parameters")) e.parameters = j["parameters"].get<std::vector<std::string>>();
  if (j.contains("constraint")) e.constraint = sym::parse(j["constraint"].get<std::string>());
  if (j.contains("w1")) e.triad = forms::form_from_json(j).triad();
  if (j.contains("akns")) e.akns = akns_from_json(j["akns"]);
  if (!e.triad && !e.akns) throw forms::FormatError("catalog entry needs a triad or AKNS data");
  return e;
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = build_catalog();
  return entries;
}

const CatalogEntry& catalog_entry(std::string_view name) {
  for (const auto& e : catalog())
    if (e.name == name) return e;
  throw std::invalid_argument("unknown catalog entry '" + std::string(name) + "'");
}

std::size_t catalog_family_count() {
  std::vector<std::string> seen;
  for (const auto& e : catalog())
    if (std::find(seen.begin(), seen.end(), e.family) == seen.end()) seen.push_back(e.family);
  return seen.size();
}

Triad akns_entry_triad(const CatalogEntry& e) {
  if (!e.akns) throw std::invalid_argument("catalog entry '" + e.name + "' has no AKNS data");
  Triad t = forms::sasaki_triad(forms::akns_matrix(*e.akns));
  Expr zeta_of_eta = Expr::imag_unit() * Expr::param("eta") / 2;
  return map_coefficients(t, [&](const Expr& c) { return sym::substitute_param(c, e.akns->spectral, zeta_of_eta); });
}

json AknsReport::to_json() const {
  json j;
  j["name"] = name;
  j["residuals"] = json::array();
  j["reduced"] = json::array();
  for (int i = 0; i < 3; ++i) {
    j["residuals"].push_back(sym::normalize(residuals[i]).str());
    j["reduced"].push_back(reduced[i].str());
  }
  j["reduces_to_zero"] = reduces_to_zero;
  j["on_constraint_max"] = on_constraint_max ? json(*on_constraint_max) : json(nullptr);
  return j;
}

namespace {

// Max |f_i| over random jets with the last constraint parameter solved from
// the (at most quadratic) constraint.
double constraint_sample(const std::array<Expr, 3>& f, const CatalogEntry& e, std::uint64_t seed) {
  const std::string& solve_for = e.parameters.back();
  Atom target = Atom::of_param(solve_for);
  RatFunc rc = sym::to_ratfunc(*e.constraint);
  auto coeffs = rc.num.coefficients_in(target);
  if (rc.num.degree_in(target) > 2 || rc.num.min_degree_in(target) < 0)
    throw std::invalid_argument("constraint is not a quadratic in " + solve_for);
  Expr all = f[0] + f[1] + f[2] + *e.constraint;
  double worst = 0;
  for (int k = 0; k < 8; ++k) {
    sym::Assignment a = sym::random_assignment(all, seed + 7919u * k);
    auto c_at = [&](int d) {
      auto it = coeffs.find(d);
      return it == coeffs.end() ? std::complex<double>(0) : sym::eval_numeric(it->second.to_expr(), a);
    };
    std::complex<double> c2 = c_at(2), c1 = c_at(1), c0 = c_at(0);
    std::complex<double> root =
        std::abs(c2) < 1e-14 ? -c0 / c1 : (-c1 + std::sqrt(c1 * c1 - 4.0 * c2 * c0)) / (2.0 * c2);
    a[solve_for] = root;
    for (const auto& x : f) worst = std::max(worst, std::abs(sym::eval_numeric(x, a)));
  }
  return worst;
}

}  // namespace

AknsReport verify_akns(const CatalogEntry& e, std::uint64_t seed) {
  if (!e.akns) throw std::invalid_argument("catalog entry '" + e.name + "' has no AKNS data");
  Pde p = pde_by_name(e.pde);
  forms::AknsResiduals r = forms::akns_compatibility(*e.akns);
  AknsReport rep;
  rep.name = e.name;
  rep.residuals = {in_entry_parameters(e, r.first), in_entry_parameters(e, r.second),
                   in_entry_parameters(e, r.third)};
  rep.reduces_to_zero = true;
  for (int i = 0; i < 3; ++i) {
    rep.reduced[i] = sym::normalize(sym::substitute(rep.residuals[i], p.solved->first, p.solved->second, true));
    rep.reduces_to_zero = rep.reduces_to_zero && sym::is_zero(rep.reduced[i]);
  }
  if (e.constraint) rep.on_constraint_max = constraint_sample(rep.reduced, e, seed);
  return rep;
}

Triad perturb(const Triad& t, std::string_view spec) {
  auto bad = [&] { return std::invalid_argument("bad perturbation '" + std::string(spec) + "'"); };
  auto star = spec.find('*');
  if (spec.size() < 2 || spec[0] != 'w' || star == std::string_view::npos) throw bad();
  int idx = spec[1] - '1';
  if (idx < 0 || idx > 2) throw bad();
  std::string_view part = spec.substr(2, star - 2);
  Expr s = sym::parse(spec.substr(star + 1));
  Triad out = t;
  if (part.empty()) {
    out[idx] = s * t[idx];
  } else if (part == ".dx") {
    out[idx].dx = s * t[idx].dx;
  } else if (part == ".dt") {
    out[idx].dt = s * t[idx].dt;
  } else {
    throw bad();
  }
  return out;
}

}  // namespace psslab::pss
