#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "psslab/geolab/geolab.hpp"
#include "psslab/geolab/kernels.hpp"

namespace psslab::geo {

namespace {

double axis_spacing(const std::vector<double>& a, const char* name) {
  if (a.size() < 2) throw std::invalid_argument(std::string(name) + " axis has fewer than two samples");
  const double h = (a.back() - a.front()) / static_cast<double>(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i)
    if (std::abs((a[i] - a[i - 1]) - h) > 1e-9 * std::max(1.0, std::abs(h)))
      throw std::invalid_argument(std::string(name) + " axis is not equispaced");
  return h;
}

std::vector<double> axis(double lo, double hi, double h) {
  if (!(h > 0) || !(hi > lo)) throw std::invalid_argument("window needs h > 0 and a non-empty range");
  const auto n = static_cast<std::size_t>(std::llround((hi - lo) / h)) + 1;
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = lo + static_cast<double>(i) * h;
  return v;
}

}  // namespace

double Lattice::hx() const { return axis_spacing(x, "x"); }
double Lattice::ht() const { return axis_spacing(t, "t"); }

SolutionPlanes solution_planes(const chsim::Trajectory& tr) {
  SolutionPlanes s;
  s.grid.x = tr.grid.points();
  for (const auto& st : tr.saved) s.grid.t.push_back(st.t);
  const std::size_t n = s.grid.size();
  s.u.reserve(n);
  s.ux.reserve(n);
  s.m.reserve(n);
  for (const auto& st : tr.saved) {
    s.u.insert(s.u.end(), st.u.begin(), st.u.end());
    s.ux.insert(s.ux.end(), st.ux.begin(), st.ux.end());
    s.m.insert(s.m.end(), st.m.begin(), st.m.end());
  }
  return s;
}

double m_level(double lambda) { return lambda / 2 + 1 / (2 * lambda); }

OmegaFields omega_fields(const SolutionPlanes& s, double lambda, Backend backend) {
  if (lambda == 0 || !std::isfinite(lambda)) throw std::invalid_argument("lambda must be finite and nonzero");
  const std::size_t n = s.grid.size();
  if (s.u.size() != n || s.ux.size() != n || s.m.size() != n)
    throw std::invalid_argument("solution planes do not match their lattice");
  OmegaFields f{s.grid, lambda, Plane(n), Plane(n), Plane(n)};
  (backend == Backend::OpenMP ? omp::omega : serial::omega)(n, lambda, s.u.data(), s.ux.data(), s.m.data(),
                                                            f.f11.data(), f.f12.data(), f.f22.data());
  return f;
}

OmegaFields omega_fields(const chsim::Trajectory& tr, double lambda, Backend backend) {
  return omega_fields(solution_planes(tr), lambda, backend);
}

Plane wedge_field(const OmegaFields& f, Backend backend) {
  return metric_field(f, backend).W;
}

MetricField metric_field(const OmegaFields& f, Backend backend) {
  const std::size_t n = f.grid.size();
  MetricField mf{f.grid, f.lambda, Plane(n), Plane(n), Plane(n), Plane(n)};
  (backend == Backend::OpenMP ? omp::metric : serial::metric)(n, f.f11.data(), f.f12.data(), f.f22.data(),
                                                              mf.E.data(), mf.F.data(), mf.G.data(), mf.W.data());
  return mf;
}

double det_identity_error(const MetricField& mf) {
  double worst = 0;
  for (std::size_t i = 0; i < mf.E.size(); ++i) {
    const double eg = mf.E[i] * mf.G[i], w2 = mf.W[i] * mf.W[i];
    const double scale = std::max(eg, w2);
    if (scale == 0) continue;
    worst = std::max(worst, std::abs(eg - mf.F[i] * mf.F[i] - w2) / scale);
  }
  return worst;
}

double sg_kink(double a, double x, double t) {
  const double th = a * x + t / a;
  // Stay on the small-argument side of atan for accuracy in both tails.
  return th <= 0 ? 4 * std::atan(std::exp(th)) : 2 * std::numbers::pi - 4 * std::atan(std::exp(-th));
}

double sg_kink_xt(double a, double x, double t) {
  const double th = a * x + t / a;
  return -2 * std::tanh(th) / std::cosh(th);
}

double sg_kink_residual(double a, const Window& w) {
  if (a == 0) throw std::invalid_argument("kink parameter must be nonzero");
  double worst = 0;
  for (double t : axis(w.t_min, w.t_max, w.h))
    for (double x : axis(w.x_min, w.x_max, w.h))
      worst = std::max(worst, std::abs(sg_kink_xt(a, x, t) - std::sin(sg_kink(a, x, t))));
  return worst;
}

MetricField sg_exact_metric(double a, const Window& w) {
  if (a == 0 || !std::isfinite(a)) throw std::invalid_argument("kink parameter must be finite and nonzero");
  MetricField mf;
  mf.lambda = a;
  mf.grid.x = axis(w.x_min, w.x_max, w.h);
  mf.grid.t = axis(w.t_min, w.t_max, w.h);
  const std::size_t n = mf.grid.size();
  mf.E.assign(n, a * a);
  mf.G.assign(n, 1 / (a * a));
  mf.F.resize(n);
  mf.W.resize(n);
  for (std::size_t it = 0; it < mf.grid.nt(); ++it)
    for (std::size_t ix = 0; ix < mf.grid.nx(); ++ix) {
      const double u = sg_kink(a, mf.grid.x[ix], mf.grid.t[it]);
      const std::size_t i = mf.grid.index(it, ix);
      mf.F[i] = std::cos(u);
      mf.W[i] = -std::sin(u);
    }
  return mf;
}

double default_w_min(const MetricField& mf) {
  double m = 0;
  for (double w : mf.W) m = std::max(m, std::abs(w));
  return 1e-3 * m;
}

CurvatureField brioschi_curvature(const MetricField& mf, double hx, double ht, double w_min, Backend backend) {
  if (!(hx > 0) || !(ht > 0)) throw std::invalid_argument("stencil spacings must be positive");
  const std::size_t n = mf.grid.size();
  if (mf.E.size() != n || mf.F.size() != n || mf.G.size() != n || mf.W.size() != n)
    throw std::invalid_argument("metric planes do not match their lattice");
  CurvatureField c{mf.grid, Plane(n), std::vector<std::uint8_t>(n), w_min};
  (backend == Backend::OpenMP ? omp::brioschi : serial::brioschi)(mf.grid.nx(), mf.grid.nt(), hx, ht, w_min,
                                                                  mf.E.data(), mf.F.data(), mf.G.data(),
                                                                  mf.W.data(), c.K.data(), c.mask.data());
  return c;
}

CurvatureField brioschi_curvature(const MetricField& mf, std::optional<double> w_min, Backend backend) {
  return brioschi_curvature(mf, mf.grid.hx(), mf.grid.ht(), w_min.value_or(default_w_min(mf)), backend);
}

CurvatureStats curvature_stats(const CurvatureField& c) {
  CurvatureStats s;
  std::vector<double> dev;
  for (std::size_t i = 0; i < c.K.size(); ++i) {
    if (c.mask[i]) {
      ++s.masked;
      continue;
    }
    dev.push_back(std::abs(c.K[i] + 1));
  }
  s.unmasked = dev.size();
  if (dev.empty()) return s;
  s.max_abs_dev = *std::max_element(dev.begin(), dev.end());
  const std::size_t mid = dev.size() / 2;
  std::nth_element(dev.begin(), dev.begin() + static_cast<std::ptrdiff_t>(mid), dev.end());
  double med = dev[mid];
  if (dev.size() % 2 == 0) {
    const double below = *std::max_element(dev.begin(), dev.begin() + static_cast<std::ptrdiff_t>(mid));
    med = 0.5 * (med + below);
  }
  s.median_abs_dev = med;
  return s;
}

}  // namespace psslab::geo
