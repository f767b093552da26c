#include "psslab/geolab/kernels.hpp"

#include <cmath>
#include <limits>

namespace psslab::geo {

namespace {

struct OmegaConstants {
  double level, c0, c1;  // f11 = level - m; f12 = u m + c1 u + c0
  explicit OmegaConstants(double lambda)
      : level(lambda / 2 + 1 / (2 * lambda)), c0(-0.5 - lambda * lambda / 2), c1(lambda / 2 - 1 / (2 * lambda)) {}
};

inline void omega_at(std::size_t i, const OmegaConstants& k, const double* u, const double* ux, const double* m,
                     double* f11, double* f12, double* f22) {
  f11[i] = k.level - m[i];
  f12[i] = u[i] * m[i] + k.c1 * u[i] + k.c0;
  f22[i] = -ux[i];
}

inline void metric_at(std::size_t i, const double* f11, const double* f12, const double* f22, double* E, double* F,
                      double* G, double* W) {
  E[i] = f11[i] * f11[i];
  F[i] = f11[i] * f12[i];
  G[i] = f12[i] * f12[i] + f22[i] * f22[i];
  W[i] = f11[i] * f22[i];
}

inline double det3(double a, double b, double c, double d, double e, double f, double g, double h, double i) {
  return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
}

struct Stencil {
  std::size_t nx, nt;
  double hx, ht, w_min;
  const double *E, *F, *G, *W;
};

// u = x (columns), v = t (rows).
inline void brioschi_at(std::size_t it, std::size_t ix, const Stencil& s, double* K, std::uint8_t* mask) {
  const std::size_t i = it * s.nx + ix;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (it == 0 || ix == 0 || it + 1 == s.nt || ix + 1 == s.nx || !(std::abs(s.W[i]) >= s.w_min)) {
    K[i] = nan;
    mask[i] = 1;
    return;
  }
  const std::size_t e = i + 1, w = i - 1, n = i + s.nx, so = i - s.nx;
  auto du = [&](const double* f) { return (f[e] - f[w]) / (2 * s.hx); };
  auto dv = [&](const double* f) { return (f[n] - f[so]) / (2 * s.ht); };
  auto duu = [&](const double* f) { return (f[e] - 2 * f[i] + f[w]) / (s.hx * s.hx); };
  auto dvv = [&](const double* f) { return (f[n] - 2 * f[i] + f[so]) / (s.ht * s.ht); };
  auto duv = [&](const double* f) { return (f[n + 1] - f[n - 1] - f[so + 1] + f[so - 1]) / (4 * s.hx * s.ht); };

  const double E = s.E[i], F = s.F[i], G = s.G[i];
  const double Eu = du(s.E), Ev = dv(s.E), Fu = du(s.F), Fv = dv(s.F), Gu = du(s.G), Gv = dv(s.G);
  const double a = -0.5 * dvv(s.E) + duv(s.F) - 0.5 * duu(s.G);
  const double first = det3(a, 0.5 * Eu, Fu - 0.5 * Ev, Fv - 0.5 * Gu, E, F, 0.5 * Gv, F, G);
  const double second = det3(0.0, 0.5 * Ev, 0.5 * Gu, 0.5 * Ev, E, F, 0.5 * Gu, F, G);
  const double g = E * G - F * F;
  const double k = (first - second) / (g * g);
  if (std::isfinite(k)) {
    K[i] = k;
    mask[i] = 0;
  } else {
    K[i] = nan;
    mask[i] = 1;
  }
}

}  // namespace

namespace serial {

void omega(std::size_t n, double lambda, const double* u, const double* ux, const double* m, double* f11,
           double* f12, double* f22) {
  const OmegaConstants k(lambda);
  for (std::size_t i = 0; i < n; ++i) omega_at(i, k, u, ux, m, f11, f12, f22);
}

void metric(std::size_t n, const double* f11, const double* f12, const double* f22, double* E, double* F, double* G,
            double* W) {
  for (std::size_t i = 0; i < n; ++i) metric_at(i, f11, f12, f22, E, F, G, W);
}

void brioschi(std::size_t nx, std::size_t nt, double hx, double ht, double w_min, const double* E, const double* F,
              const double* G, const double* W, double* K, std::uint8_t* mask) {
  const Stencil s{nx, nt, hx, ht, w_min, E, F, G, W};
  for (std::size_t it = 0; it < nt; ++it)
    for (std::size_t ix = 0; ix < nx; ++ix) brioschi_at(it, ix, s, K, mask);
}

}  // namespace serial

namespace omp {

void omega(std::size_t n, double lambda, const double* u, const double* ux, const double* m, double* f11,
           double* f12, double* f22) {
  const OmegaConstants k(lambda);
  const auto len = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < len; ++i) omega_at(static_cast<std::size_t>(i), k, u, ux, m, f11, f12, f22);
}

void metric(std::size_t n, const double* f11, const double* f12, const double* f22, double* E, double* F, double* G,
            double* W) {
  const auto len = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < len; ++i) metric_at(static_cast<std::size_t>(i), f11, f12, f22, E, F, G, W);
}

void brioschi(std::size_t nx, std::size_t nt, double hx, double ht, double w_min, const double* E, const double* F,
              const double* G, const double* W, double* K, std::uint8_t* mask) {
  const Stencil s{nx, nt, hx, ht, w_min, E, F, G, W};
  const auto rows = static_cast<std::ptrdiff_t>(nt);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t it = 0; it < rows; ++it)
    for (std::size_t ix = 0; ix < nx; ++ix) brioschi_at(static_cast<std::size_t>(it), ix, s, K, mask);
}

}  // namespace omp

}  // namespace psslab::geo
