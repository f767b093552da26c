#pragma once

#include <cstddef>
#include <cstdint>

namespace psslab::geo {

/// Grid kernels. The serial versions are the reference; the OpenMP versions
/// do the same per-point arithmetic and must agree bitwise.
namespace serial {

/// f11 = c - m, f12 = u m + (lambda/2) u - u/(2 lambda) - 1/2 - lambda^2/2, f22 = -u_x
void omega(std::size_t n, double lambda, const double* u, const double* ux, const double* m, double* f11,
           double* f12, double* f22);
/// E = f11^2, F = f11 f12, G = f12^2 + f22^2, W = f11 f22
void metric(std::size_t n, const double* f11, const double* f12, const double* f22, double* E, double* F, double* G,
            double* W);
/// Brioschi curvature on an nt x nx row-major lattice. Writes K and mask for
/// every point; boundary points are masked.
void brioschi(std::size_t nx, std::size_t nt, double hx, double ht, double w_min, const double* E, const double* F,
              const double* G, const double* W, double* K, std::uint8_t* mask);

}  // namespace serial

namespace omp {

void omega(std::size_t n, double lambda, const double* u, const double* ux, const double* m, double* f11,
           double* f12, double* f22);
void metric(std::size_t n, const double* f11, const double* f12, const double* f22, double* E, double* F, double* G,
            double* W);
void brioschi(std::size_t nx, std::size_t nt, double hx, double ht, double w_min, const double* E, const double* F,
              const double* G, const double* W, double* K, std::uint8_t* mask);

}  // namespace omp

}  // namespace psslab::geo
