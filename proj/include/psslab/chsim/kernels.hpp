#pragma once

#include <cstddef>

namespace psslab::chsim {

enum class Backend { Serial, OpenMP };

const char* backend_name(Backend b);

/// Pointwise kernels of the time stepper. The serial versions are the
/// reference; the OpenMP versions perform the same arithmetic per element
/// and must agree bitwise.
namespace serial {
/// out = -(u mx + 2 ux m)
void ch_products(std::size_t n, const double* u, const double* ux, const double* m, const double* mx, double* out);
/// out = y + a k
void axpy(std::size_t n, const double* y, double a, const double* k, double* out);
/// out = y + h/6 (k1 + 2 k2 + 2 k3 + k4)
void rk4_combine(std::size_t n, const double* y, double h, const double* k1, const double* k2, const double* k3,
                 const double* k4, double* out);
}  // namespace serial

namespace omp {
void ch_products(std::size_t n, const double* u, const double* ux, const double* m, const double* mx, double* out);
void axpy(std::size_t n, const double* y, double a, const double* k, double* out);
void rk4_combine(std::size_t n, const double* y, double h, const double* k1, const double* k2, const double* k3,
                 const double* k4, double* out);
}  // namespace omp

inline void ch_products(Backend b, std::size_t n, const double* u, const double* ux, const double* m,
                        const double* mx, double* out) {
  b == Backend::OpenMP ? omp::ch_products(n, u, ux, m, mx, out) : serial::ch_products(n, u, ux, m, mx, out);
}

inline void axpy(Backend b, std::size_t n, const double* y, double a, const double* k, double* out) {
  b == Backend::OpenMP ? omp::axpy(n, y, a, k, out) : serial::axpy(n, y, a, k, out);
}

inline void rk4_combine(Backend b, std::size_t n, const double* y, double h, const double* k1, const double* k2,
                        const double* k3, const double* k4, double* out) {
  b == Backend::OpenMP ? omp::rk4_combine(n, y, h, k1, k2, k3, k4, out)
                       : serial::rk4_combine(n, y, h, k1, k2, k3, k4, out);
}

}  // namespace psslab::chsim
