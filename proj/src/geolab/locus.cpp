#include <algorithm>
#include <cmath>
#include <complex>

#include "psslab/geolab/geolab.hpp"

namespace psslab::geo {

namespace {

/// Trigonometric interpolant of one periodic slice.
class Interpolant {
 public:
  Interpolant(const chsim::Field& f, const chsim::GridSpec& g) : g_(g), fh_(g.N / 2 + 1) {
    chsim::Spectral sp(g);
    sp.forward(f.data(), fh_.data());
  }

  double operator()(double x) const {
    const int N = g_.N;
    const double s = x + g_.L;
    double sum = fh_[0].real();
    for (int j = 1; j < N / 2; ++j) sum += 2 * (fh_[j] * std::polar(1.0, g_.k(j) * s)).real();
    sum += fh_[N / 2].real() * std::cos(g_.k(N / 2) * s);
    return sum / N;
  }

 private:
  chsim::GridSpec g_;
  std::vector<std::complex<double>> fh_;
};

int sign_of(double v) { return (v > 0) - (v < 0); }

Bracket bisect(const Interpolant& f, double a, double b) {
  double fa = f(a), fb = f(b);
  while (b - a >= kBracketWidth) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    const double fm = f(mid);
    if (fm == 0) {
      const double d = kBracketWidth / 4;
      const double l = f(mid - d), r = f(mid + d);
      if (sign_of(l) * sign_of(r) < 0) return {mid - d, mid + d, l, r};
    }
    if (sign_of(fm) == sign_of(fa) || fm == 0) {
      a = mid;
      fa = fm == 0 ? fa : fm;
    } else {
      b = mid;
      fb = fm;
    }
  }
  return {a, b, fa, fb};
}

bool trivial_slice(const chsim::ChState& s) {
  double ux = 0, u = 0;
  for (std::size_t i = 0; i < s.ux.size(); ++i) {
    ux = std::max(ux, std::abs(s.ux[i]));
    u = std::max(u, std::abs(s.u[i]));
  }
  return ux <= 1e-12 * std::max(1.0, u);
}

}  // namespace

std::vector<Bracket> sign_change_brackets(const chsim::Field& f, const chsim::GridSpec& g) {
  if (static_cast<int>(f.size()) != g.N) throw std::invalid_argument("slice length does not match the grid");
  double peak = 0;
  for (double v : f) peak = std::max(peak, std::abs(v));
  std::vector<int> sig;
  for (int j = 0; j < g.N; ++j)
    if (std::abs(f[j]) > kNoiseFloor * peak) sig.push_back(j);
  std::vector<Bracket> out;
  if (sig.size() < 2) return out;
  const Interpolant interp(f, g);
  for (std::size_t k = 0; k < sig.size(); ++k) {
    const int a = sig[k], b = sig[(k + 1) % sig.size()];
    if (sign_of(f[a]) * sign_of(f[b]) >= 0) continue;
    const double xa = g.x(a);
    const double xb = k + 1 < sig.size() ? g.x(b) : g.x(b) + 2 * g.L;
    out.push_back(bisect(interp, xa, xb));
  }
  return out;
}

bool SingularLocus::every_slice_has_zero() const {
  return std::all_of(slices.begin(), slices.end(), [](const SliceZeros& s) { return !s.ux_zeros.empty(); });
}

std::size_t SingularLocus::degenerate_slices() const {
  return static_cast<std::size_t>(
      std::count_if(slices.begin(), slices.end(), [](const SliceZeros& s) { return s.everywhere_degenerate; }));
}

SingularLocus ux_zero_slices(const chsim::Trajectory& tr) {
  SingularLocus loc;
  for (const auto& s : tr.saved) {
    SliceZeros z;
    z.t = s.t;
    if (trivial_slice(s)) {
      z.everywhere_degenerate = true;
    } else {
      z.ux_zeros = sign_change_brackets(s.ux, tr.grid);
      z.missing_zero = z.ux_zeros.empty();
    }
    loc.slices.push_back(std::move(z));
  }
  return loc;
}

SingularLocus singular_locus(const chsim::Trajectory& tr, double lambda) {
  if (lambda == 0 || !std::isfinite(lambda)) throw std::invalid_argument("lambda must be finite and nonzero");
  SingularLocus loc = ux_zero_slices(tr);
  loc.lambda = lambda;
  const double level = m_level(lambda);
  for (std::size_t i = 0; i < tr.saved.size(); ++i) {
    chsim::Field d(tr.saved[i].m);
    for (double& v : d) v -= level;
    loc.slices[i].level_crossings = sign_change_brackets(d, tr.grid);
  }
  return loc;
}

// ---- discs

bool disjoint(const Rect& a, const Rect& b) {
  return a.ix1 < b.ix0 || b.ix1 < a.ix0 || a.it1 < b.it0 || b.it1 < a.it0;
}

namespace {

struct DiscContext {
  const Lattice& grid;
  const Plane& ux;
  const Plane& f11;
  const Plane& W;
  double w_min;

  bool admissible(std::size_t it, std::size_t ix, int sign) const {
    const std::size_t i = grid.index(it, ix);
    return sign_of(ux[i]) == sign && std::abs(f11[i]) > w_min && std::abs(W[i]) >= w_min;
  }
  bool row_ok(std::size_t it, std::size_t ix0, std::size_t ix1, int sign) const {
    for (std::size_t ix = ix0; ix <= ix1; ++ix)
      if (!admissible(it, ix, sign)) return false;
    return true;
  }
  bool col_ok(std::size_t ix, std::size_t it0, std::size_t it1, int sign) const {
    for (std::size_t it = it0; it <= it1; ++it)
      if (!admissible(it, ix, sign)) return false;
    return true;
  }

  Rect grow(std::size_t it, std::size_t ix, int sign) const {
    Rect r{ix, ix, it, it};
    r.ux_sign = sign;
    for (bool changed = true; changed;) {
      changed = false;
      if (r.ix0 > 0 && col_ok(r.ix0 - 1, r.it0, r.it1, sign)) --r.ix0, changed = true;
      if (r.ix1 + 1 < grid.nx() && col_ok(r.ix1 + 1, r.it0, r.it1, sign)) ++r.ix1, changed = true;
      if (r.it0 > 0 && row_ok(r.it0 - 1, r.ix0, r.ix1, sign)) --r.it0, changed = true;
      if (r.it1 + 1 < grid.nt() && row_ok(r.it1 + 1, r.ix0, r.ix1, sign)) ++r.it1, changed = true;
    }
    r.x0 = grid.x[r.ix0];
    r.x1 = grid.x[r.ix1];
    r.t0 = grid.t[r.it0];
    r.t1 = grid.t[r.it1];
    r.min_abs_W = std::abs(W[grid.index(r.it0, r.ix0)]);
    for (std::size_t a = r.it0; a <= r.it1; ++a)
      for (std::size_t b = r.ix0; b <= r.ix1; ++b) r.min_abs_W = std::min(r.min_abs_W, std::abs(W[grid.index(a, b)]));
    return r;
  }
};

}  // namespace

DiscReport generic_discs(const chsim::Trajectory& tr, double lambda, std::optional<double> w_min) {
  DiscReport rep;
  rep.lambda = lambda;
  if (tr.saved.empty()) {
    rep.failure = "trajectory has no saved states";
    return rep;
  }
  const SolutionPlanes s = solution_planes(tr);
  const OmegaFields f = omega_fields(s, lambda);
  const MetricField mf = metric_field(f);
  rep.w_min = w_min.value_or(default_w_min(mf));
  const Lattice& g = s.grid;
  rep.seed_slice = g.nt() / 2;

  double peak = 0;
  for (double w : mf.W) peak = std::max(peak, std::abs(w));
  if (peak == 0) {
    rep.failure = "wedge coefficient vanishes identically (no generic point)";
    return rep;
  }

  const std::size_t row = g.index(rep.seed_slice, 0);
  const auto first = s.ux.begin() + static_cast<std::ptrdiff_t>(row);
  const auto last = first + static_cast<std::ptrdiff_t>(g.nx());
  const auto lo = static_cast<std::size_t>(std::min_element(first, last) - first);
  const auto hi = static_cast<std::size_t>(std::max_element(first, last) - first);

  const DiscContext ctx{g, s.ux, f.f11, mf.W, rep.w_min};
  if (!ctx.admissible(rep.seed_slice, lo, -1)) {
    rep.failure = "argmin of u_x on the seed slice is not a generic point with u_x < 0";
    return rep;
  }
  if (!ctx.admissible(rep.seed_slice, hi, +1)) {
    rep.failure = "argmax of u_x on the seed slice is not a generic point with u_x > 0";
    return rep;
  }
  rep.negative = ctx.grow(rep.seed_slice, lo, -1);
  rep.positive = ctx.grow(rep.seed_slice, hi, +1);
  rep.disjoint = disjoint(rep.negative, rep.positive);
  rep.found = rep.disjoint && rep.negative.min_abs_W > 0 && rep.positive.min_abs_W > 0;
  if (!rep.found) rep.failure = "rectangles are not disjoint or touch the degenerate locus";
  return rep;
}

DiscCheck recheck_discs(const chsim::Trajectory& tr, const DiscReport& r) {
  if (!r.found) return {false, "report carries no discs"};
  const double level = m_level(r.lambda);
  const std::size_t nt = tr.saved.size(), nx = static_cast<std::size_t>(tr.grid.N);
  for (const Rect* rect : {&r.negative, &r.positive}) {
    const Rect& b = *rect;
    if (b.ix0 > b.ix1 || b.it0 > b.it1 || b.ix1 >= nx || b.it1 >= nt) return {false, "rectangle outside the lattice"};
    if (b.x0 != tr.grid.x(static_cast<int>(b.ix0)) || b.x1 != tr.grid.x(static_cast<int>(b.ix1)) ||
        b.t0 != tr.saved[b.it0].t || b.t1 != tr.saved[b.it1].t)
      return {false, "rectangle coordinates disagree with the lattice"};
    double min_w = INFINITY;
    for (std::size_t it = b.it0; it <= b.it1; ++it) {
      const auto& st = tr.saved[it];
      for (std::size_t ix = b.ix0; ix <= b.ix1; ++ix) {
        if (sign_of(st.ux[ix]) != b.ux_sign) return {false, "u_x changes sign inside a rectangle"};
        const double w = std::abs((level - st.m[ix]) * st.ux[ix]);
        min_w = std::min(min_w, w);
      }
    }
    if (!(min_w > 0)) return {false, "wedge coefficient vanishes inside a rectangle"};
    if (std::abs(min_w - b.min_abs_W) > 1e-12 * min_w) return {false, "reported min |W| does not reproduce"};
  }
  if (r.negative.ux_sign != -1 || r.positive.ux_sign != 1) return {false, "u_x signs are not opposite"};
  if (!disjoint(r.negative, r.positive)) return {false, "rectangles intersect"};
  return {true, ""};
}

ConstancyCheck nonconstancy_check(const Lattice& grid, const Plane& m, const Plane& ux, const Rect& block) {
  if (m.size() != grid.size() || ux.size() != grid.size()) throw std::invalid_argument("planes do not match lattice");
  if (block.ix1 >= grid.nx() || block.it1 >= grid.nt() || block.ix0 > block.ix1 || block.it0 > block.it1)
    throw std::invalid_argument("block outside the lattice");
  ConstancyCheck c;
  double mean = 0;
  int sign = 0;
  bool definite = true;
  for (std::size_t it = block.it0; it <= block.it1; ++it)
    for (std::size_t ix = block.ix0; ix <= block.ix1; ++ix) {
      const std::size_t i = grid.index(it, ix);
      mean += m[i];
      const int s = sign_of(ux[i]);
      if (s == 0 || (sign != 0 && s != sign)) definite = false;
      sign = s;
    }
  const auto n = static_cast<double>(block.points());
  mean /= n;
  double ss = 0;
  for (std::size_t it = block.it0; it <= block.it1; ++it)
    for (std::size_t ix = block.ix0; ix <= block.ix1; ++ix) {
      const double d = m[grid.index(it, ix)] - mean;
      ss += d * d;
    }
  c.m_variance = n > 1 ? ss / (n - 1) : 0;
  c.m_nonconstant = c.m_variance > kVarianceThreshold;
  c.ux_sign_definite = definite;
  return c;
}

ConstancyCheck nonconstancy_check(const chsim::Trajectory& tr, const Rect& block) {
  const SolutionPlanes s = solution_planes(tr);
  return nonconstancy_check(s.grid, s.m, s.ux, block);
}

}  // namespace psslab::geo
