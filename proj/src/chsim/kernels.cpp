#include "psslab/chsim/kernels.hpp"

#include <cstddef>

namespace psslab::chsim {

const char* backend_name(Backend b) { return b == Backend::OpenMP ? "openmp" : "serial"; }

namespace serial {

void ch_products(std::size_t n, const double* u, const double* ux, const double* m, const double* mx, double* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = -(u[i] * mx[i] + 2.0 * ux[i] * m[i]);
}

void axpy(std::size_t n, const double* y, double a, const double* k, double* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = y[i] + a * k[i];
}

void rk4_combine(std::size_t n, const double* y, double h, const double* k1, const double* k2, const double* k3,
                 const double* k4, double* out) {
  const double w = h / 6.0;
  for (std::size_t i = 0; i < n; ++i) out[i] = y[i] + w * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

}  // namespace serial

namespace omp {

void ch_products(std::size_t n, const double* u, const double* ux, const double* m, const double* mx, double* out) {
  const auto len = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < len; ++i) out[i] = -(u[i] * mx[i] + 2.0 * ux[i] * m[i]);
}

void axpy(std::size_t n, const double* y, double a, const double* k, double* out) {
  const auto len = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < len; ++i) out[i] = y[i] + a * k[i];
}

void rk4_combine(std::size_t n, const double* y, double h, const double* k1, const double* k2, const double* k3,
                 const double* k4, double* out) {
  const double w = h / 6.0;
  const auto len = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < len; ++i) out[i] = y[i] + w * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

}  // namespace omp

}  // namespace psslab::chsim
