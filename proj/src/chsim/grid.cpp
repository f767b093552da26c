#include "psslab/chsim/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace psslab::chsim {

namespace {
// FFTW's planner is not reentrant.
std::mutex planner_mutex;
}  // namespace

Field GridSpec::points() const {
  Field x(N);
  for (int j = 0; j < N; ++j) x[j] = this->x(j);
  return x;
}

double GridSpec::k(int j) const { return std::numbers::pi * j / L; }

void GridSpec::validate() const {
  if (!(L > 0)) throw std::invalid_argument("grid half-length must be positive");
  if (N < 16 || (N & (N - 1)) != 0) throw std::invalid_argument("grid size must be a power of two >= 16");
}

struct Spectral::Plans {
  double* real = nullptr;
  fftw_complex* cplx = nullptr;
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
};

Spectral::Spectral(const GridSpec& g) : grid_(g), p_(std::make_unique<Plans>()), work_(g.N / 2 + 1) {
  g.validate();
  p_->real = fftw_alloc_real(g.N);
  p_->cplx = fftw_alloc_complex(g.N / 2 + 1);
  std::lock_guard lock(planner_mutex);
  p_->r2c = fftw_plan_dft_r2c_1d(g.N, p_->real, p_->cplx, FFTW_ESTIMATE);
  p_->c2r = fftw_plan_dft_c2r_1d(g.N, p_->cplx, p_->real, FFTW_ESTIMATE);
}

Spectral::~Spectral() {
  std::lock_guard lock(planner_mutex);
  fftw_destroy_plan(p_->r2c);
  fftw_destroy_plan(p_->c2r);
  fftw_free(p_->real);
  fftw_free(p_->cplx);
}

void Spectral::forward(const double* f, std::complex<double>* fh) {
  std::copy(f, f + grid_.N, p_->real);
  fftw_execute(p_->r2c);
  auto* c = reinterpret_cast<std::complex<double>*>(p_->cplx);
  std::copy(c, c + modes(), fh);
}

void Spectral::inverse(const std::complex<double>* fh, double* f) {
  auto* c = reinterpret_cast<std::complex<double>*>(p_->cplx);
  std::copy(fh, fh + modes(), c);
  fftw_execute(p_->c2r);
  const double s = 1.0 / grid_.N;
  for (int i = 0; i < grid_.N; ++i) f[i] = p_->real[i] * s;
}

void Spectral::helmholtz_invert(const double* m, double* u) {
  forward(m, work_.data());
  for (int j = 0; j < modes(); ++j) {
    double k = grid_.k(j);
    work_[j] /= 1.0 + k * k;
  }
  inverse(work_.data(), u);
}

void Spectral::derivative(const double* f, int order, double* out) {
  if (order < 1) throw std::invalid_argument("derivative order must be positive");
  forward(f, work_.data());
  const int nyq = grid_.N / 2;
  for (int j = 0; j < modes(); ++j) {
    if (j == nyq && order % 2 == 1) {
      work_[j] = 0;
      continue;
    }
    std::complex<double> ik(0, grid_.k(j)), factor = 1;
    for (int n = 0; n < order; ++n) factor *= ik;
    work_[j] *= factor;
  }
  inverse(work_.data(), out);
}

void Spectral::dealias(double* f) {
  forward(f, work_.data());
  const int cut = grid_.N / 3;
  for (int j = cut + 1; j < modes(); ++j) work_[j] = 0;
  inverse(work_.data(), f);
}

double Spectral::tail_ratio(const double* f) {
  forward(f, work_.data());
  const int cut = grid_.N / 3;
  double all = 0, tail = 0;
  for (int j = 0; j < modes(); ++j) {
    double a = std::abs(work_[j]);
    all = std::max(all, a);
    if (j > cut) tail = std::max(tail, a);
  }
  return all == 0 ? 0.0 : tail / all;
}

namespace {
void check_length(const Field& f, const GridSpec& g) {
  if (static_cast<int>(f.size()) != g.N)
    throw std::invalid_argument("field has " + std::to_string(f.size()) + " values, grid has " +
                                std::to_string(g.N));
}
}  // namespace

Field helmholtz_invert(const Field& m, const GridSpec& g) {
  check_length(m, g);
  Spectral s(g);
  Field u(g.N);
  s.helmholtz_invert(m.data(), u.data());
  return u;
}

Field spectral_deriv(const Field& f, int order, const GridSpec& g) {
  check_length(f, g);
  Spectral s(g);
  Field out(g.N);
  s.derivative(f.data(), order, out.data());
  return out;
}

}  // namespace psslab::chsim
