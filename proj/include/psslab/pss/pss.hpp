#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "psslab/forms/forms.hpp"
#include "psslab/symcore/numeric.hpp"

namespace psslab::pss {

using forms::OneForm;
using forms::Triad;
using forms::TwoForm;
using sym::Expr;
using sym::JetCoord;

/// E = 0 in jet variables. `solved`, when present, is a coordinate z and an
/// expression g with E = 0 equivalent to z = g.
struct Pde {
  std::string name;
  Expr E;
  std::optional<std::pair<JetCoord, Expr>> solved;
};

/// u_xt - sin u, solved for u_xt.
Pde sine_gordon();
/// u_t - u_xxt + 3 u u_x - 2 u_x u_xx - u u_xxx, solved for u_xxt.
Pde camassa_holm();
/// "sg" or "ch"; throws std::invalid_argument otherwise.
Pde pde_by_name(std::string_view name);

nlohmann::json pde_to_json(const Pde& p);
/// {name, E, solved: {jet, expr}}; throws forms::FormatError.
Pde pde_from_json(const nlohmann::json& j);

/// (d w1 - w3^w2, d w2 - w1^w3, d w3 - w1^w2).
std::array<TwoForm, 3> structure_residuals(const Triad& t);

enum class VerifyStatus { Verified, IdenticallyFlat, Failed };
enum class VerifyMode { Multiplier, Substitution, Auto };

const char* status_name(VerifyStatus s);
const char* mode_name(VerifyMode m);
/// "multiplier", "substitution" or "auto"; throws std::invalid_argument.
VerifyMode mode_from_name(std::string_view s);

struct VerifyReport {
  std::string pde;
  std::array<TwoForm, 3> residuals;
  /// R_i = mu_i E, set in multiplier mode.
  std::array<std::optional<Expr>, 3> multipliers;
  /// Residuals after reduction modulo the solved form, set in substitution mode.
  std::array<std::optional<Expr>, 3> reduced;
  VerifyMode mode = VerifyMode::Multiplier;
  VerifyStatus status = VerifyStatus::Failed;
  Expr wedge12;
  /// The jet the multipliers are required to be free of.
  std::optional<JetCoord> pivot;
  std::string detail;

  /// Residuals and multipliers are printed in normal form.
  nlohmann::json to_json() const;
};

/// Multiplier mode first: R_i = mu_i E with mu_i free of the pivot jet of E.
/// Falls back to substitution mode when allowed and P.solved is present.
VerifyReport verify_pss(const Triad& t, const Pde& p, VerifyMode mode = VerifyMode::Auto,
                        const sym::ZeroTestOptions& zt = {});

struct FundamentalForm {
  Expr E;
  Expr F;
  Expr G;
};

/// I = w1^2 + w2^2 = E dx^2 + 2 F dx dt + G dt^2.
FundamentalForm first_fundamental(const Triad& t);
/// Coefficient of w1^w2.
Expr generic_wedge(const Triad& t);
/// Factors of generic_wedge whose vanishing makes the triad degenerate.
/// Parameter-only factors are dropped; each factor is scaled so that its
/// leading coefficient in normal form is 1.
std::vector<Expr> degenerate_conditions(const Triad& t);

struct MFormExpansion {
  int alpha = 0;
  int beta = 0;
  Expr expansion;   // m_t + alpha u m_x + beta u_x m with m := u - u_xx
  Expr difference;  // normal form of expansion - E
  bool matches = false;
};

/// m_t + alpha u m_x + beta u_x m with m replaced by `m_of_u`.
Expr ch_m_form(int alpha, int beta, const Expr& m_of_u);

struct MFormReport {
  std::vector<MFormExpansion> rows;
  nlohmann::json to_json() const;
};

/// Expands the printed (2, 1) and the conventional (1, 2) coefficients
/// and compares each with the Camassa-Holm E.
MFormReport ch_form_equivalence();

struct CatalogEntry {
  std::string name;
  std::string family;
  std::vector<std::string> parameters;
  std::optional<Triad> triad;
  std::optional<forms::AknsData> akns;
  std::string pde;
  /// Parameter relation that must vanish, if any.
  std::optional<Expr> constraint;
  std::string provenance;
  /// False for entries shipped as printed that are known not to verify.
  bool expected_to_verify = true;

  nlohmann::json to_json() const;
  static CatalogEntry from_json(const nlohmann::json& j);
};

const std::vector<CatalogEntry>& catalog();
/// Throws std::invalid_argument for unknown names.
const CatalogEntry& catalog_entry(std::string_view name);
std::size_t catalog_family_count();

/// Sasaki triad of an AKNS entry with zeta written through eta = -2 i zeta.
Triad akns_entry_triad(const CatalogEntry& e);

struct AknsReport {
  std::string name;
  std::array<Expr, 3> residuals;
  std::array<Expr, 3> reduced;
  bool reduces_to_zero = false;
  /// Max |reduced residual| at random jets with the parameters on the
  /// constraint; only for entries that carry a constraint.
  std::optional<double> on_constraint_max;
  nlohmann::json to_json() const;
};

/// AKNS compatibility residuals of an entry, reduced modulo its PDE.
AknsReport verify_akns(const CatalogEntry& e, std::uint64_t seed = 0x5eed);

/// Scales one coefficient: "w3*2" (both components), "w1.dt*2", "w2.dx*-1/2".
/// Throws std::invalid_argument for malformed specs.
Triad perturb(const Triad& t, std::string_view spec);

/// Applies f to all six coefficients.
template <class F>
Triad map_coefficients(const Triad& t, F&& f) {
  Triad out;
  for (int i = 0; i < 3; ++i) out[i] = {f(t[i].dx), f(t[i].dt)};
  return out;
}

}  // namespace psslab::pss
