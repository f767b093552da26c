#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "psslab/chsim/solver.hpp"

namespace psslab::geo {

using chsim::Backend;

/// Values over (t, x) sample points, row-major with one row per time.
using Plane = std::vector<double>;

struct Lattice {
  std::vector<double> x;
  std::vector<double> t;

  std::size_t nx() const { return x.size(); }
  std::size_t nt() const { return t.size(); }
  std::size_t size() const { return nx() * nt(); }
  std::size_t index(std::size_t it, std::size_t ix) const { return it * nx() + ix; }
  /// Spacing of an equispaced axis; throws std::invalid_argument otherwise.
  double hx() const;
  double ht() const;
};

/// u, u_x and m of every saved state of a trajectory, stacked into planes.
struct SolutionPlanes {
  Lattice grid;
  Plane u, ux, m;
};

SolutionPlanes solution_planes(const chsim::Trajectory& tr);

/// Coefficients of the CH triad w1 = f11 dx + f12 dt, w2 = f22 dt (f21 = 0).
struct OmegaFields {
  Lattice grid;
  double lambda = 2.0;
  Plane f11, f12, f22;
};

/// lambda/2 + 1/(2 lambda), the level of m on which f11 vanishes.
double m_level(double lambda);

/// Throws std::invalid_argument for lambda = 0.
OmegaFields omega_fields(const SolutionPlanes& s, double lambda, Backend backend = Backend::OpenMP);
OmegaFields omega_fields(const chsim::Trajectory& tr, double lambda, Backend backend = Backend::OpenMP);

/// Coefficient of w1 ^ w2: f11 f22 - f12 f21 = -f11 u_x.
Plane wedge_field(const OmegaFields& f, Backend backend = Backend::OpenMP);

/// First fundamental form E dx^2 + 2F dx dt + G dt^2 and the wedge coefficient W.
struct MetricField {
  Lattice grid;
  /// lambda for CH fields, the kink parameter a for the exact sG metric.
  double lambda = 0;
  Plane E, F, G, W;
};

MetricField metric_field(const OmegaFields& f, Backend backend = Backend::OpenMP);

/// max over points of |E G - F^2 - W^2| / max(E G, W^2); zero where both vanish.
double det_identity_error(const MetricField& mf);

/// Sample window for the exact sine-Gordon metric.
struct Window {
  double x_min = -5, x_max = 5;
  double t_min = -5, t_max = 5;
  double h = 1e-2;
};

/// The kink u = 4 atan(exp(a x + t / a)) and its mixed derivative u_xt.
double sg_kink(double a, double x, double t);
double sg_kink_xt(double a, double x, double t);
/// max |u_xt - sin u| of the kink over the window.
double sg_kink_residual(double a, const Window& w);

/// E = a^2, F = cos u, G = 1/a^2, W = -sin u on the kink. Throws for a = 0.
MetricField sg_exact_metric(double a, const Window& w = {});

// ---- curvature

struct CurvatureField {
  Lattice grid;
  /// NaN at masked points.
  Plane K;
  /// 1 where excluded: boundary stencil, |W| < w_min, or a non-finite estimate.
  std::vector<std::uint8_t> mask;
  double w_min = 0;
};

/// 1e-3 * max |W|.
double default_w_min(const MetricField& mf);

/// Gaussian curvature from E, F, G by the Brioschi formula with second-order
/// central differences of spacing hx along x and ht along t.
CurvatureField brioschi_curvature(const MetricField& mf, double hx, double ht, double w_min,
                                  Backend backend = Backend::OpenMP);
/// Spacings taken from the lattice; w_min defaults to default_w_min.
CurvatureField brioschi_curvature(const MetricField& mf, std::optional<double> w_min = std::nullopt,
                                  Backend backend = Backend::OpenMP);

struct CurvatureStats {
  std::size_t unmasked = 0;
  std::size_t masked = 0;
  double median_abs_dev = 0;  // median |K + 1|
  double max_abs_dev = 0;     // max |K + 1|
};

CurvatureStats curvature_stats(const CurvatureField& c);

// ---- degenerate locus

/// [lo, hi] with f(lo) and f(hi) of strictly opposite sign. hi may exceed L for
/// the bracket that crosses the periodic seam.
struct Bracket {
  double lo = 0, hi = 0;
  double f_lo = 0, f_hi = 0;
  double mid() const { return 0.5 * (lo + hi); }
};

struct SliceZeros {
  double t = 0;
  std::vector<Bracket> ux_zeros;
  /// Sign changes of m - m_level(lambda); empty unless requested.
  std::vector<Bracket> level_crossings;
  bool everywhere_degenerate = false;
  /// Non-degenerate slice without any u_x sign change.
  bool missing_zero = false;
};

struct SingularLocus {
  std::optional<double> lambda;
  std::vector<SliceZeros> slices;

  bool every_slice_has_zero() const;
  std::size_t degenerate_slices() const;
};

/// Bracket width after refinement.
inline constexpr double kBracketWidth = 1e-8;
/// Samples below this fraction of the slice maximum carry no sign.
inline constexpr double kNoiseFloor = 1e-10;

/// Sign changes of u_x on every saved slice, refined by bisection on the
/// trigonometric interpolant.
SingularLocus ux_zero_slices(const chsim::Trajectory& tr);
/// As above, plus the crossings of m through m_level(lambda).
SingularLocus singular_locus(const chsim::Trajectory& tr, double lambda);

/// Bisection on the trigonometric interpolant of one periodic slice.
std::vector<Bracket> sign_change_brackets(const chsim::Field& f, const chsim::GridSpec& g);

// ---- generic discs

/// Closed axis-aligned block of lattice points.
struct Rect {
  std::size_t ix0 = 0, ix1 = 0, it0 = 0, it1 = 0;
  double x0 = 0, x1 = 0, t0 = 0, t1 = 0;
  int ux_sign = 0;
  double min_abs_W = 0;

  bool contains(std::size_t it, std::size_t ix) const { return it0 <= it && it <= it1 && ix0 <= ix && ix <= ix1; }
  std::size_t points() const { return (ix1 - ix0 + 1) * (it1 - it0 + 1); }
};

bool disjoint(const Rect& a, const Rect& b);

struct DiscReport {
  bool found = false;
  std::string failure;
  double lambda = 0;
  double w_min = 0;
  std::size_t seed_slice = 0;
  /// u_x < 0 and u_x > 0 respectively.
  Rect negative, positive;
  bool disjoint = false;
};

/// Two rectangles seeded at argmin and argmax of u_x on the middle saved slice
/// and grown while sign(u_x) is constant and |f11|, |W| >= w_min.
DiscReport generic_discs(const chsim::Trajectory& tr, double lambda, std::optional<double> w_min = std::nullopt);

struct DiscCheck {
  bool ok = false;
  std::string reason;
};

/// Re-validates a report from the raw saved states, without the field planes.
DiscCheck recheck_discs(const chsim::Trajectory& tr, const DiscReport& r);

// ---- constancy of m where u_x is sign-definite

struct ConstancyCheck {
  double m_variance = 0;
  bool m_nonconstant = false;
  bool ux_sign_definite = false;
  /// u_x sign-definite on the block while m is constant.
  bool violated() const { return ux_sign_definite && !m_nonconstant; }
};

inline constexpr double kVarianceThreshold = 1e-10;

ConstancyCheck nonconstancy_check(const Lattice& grid, const Plane& m, const Plane& ux, const Rect& block);
ConstancyCheck nonconstancy_check(const chsim::Trajectory& tr, const Rect& block);

}  // namespace psslab::geo
