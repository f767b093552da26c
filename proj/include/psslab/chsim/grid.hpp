#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

namespace psslab::chsim {

using Field = std::vector<double>;

/// Periodic box [-L, L) with N equispaced points.
struct GridSpec {
  double L = 20.0;
  int N = 512;

  double dx() const { return 2.0 * L / N; }
  double x(int j) const { return -L + j * dx(); }
  Field points() const;
  /// Wavenumber of r2c mode j (0 <= j <= N/2).
  double k(int j) const;
  /// Throws std::invalid_argument unless N >= 16 is a power of two and L > 0.
  void validate() const;
};

/// Real-to-complex FFT pair on one grid. Owns its plans and aligned buffers;
/// not safe to share between threads.
class Spectral {
 public:
  explicit Spectral(const GridSpec& g);
  ~Spectral();
  Spectral(const Spectral&) = delete;
  Spectral& operator=(const Spectral&) = delete;

  const GridSpec& grid() const { return grid_; }
  int modes() const { return grid_.N / 2 + 1; }

  /// Unnormalized forward transform.
  void forward(const double* f, std::complex<double>* fh);
  /// Inverse transform including the 1/N factor.
  void inverse(const std::complex<double>* fh, double* f);

  /// (1 - d^2/dx^2)^{-1}.
  void helmholtz_invert(const double* m, double* u);
  /// d^order/dx^order. The Nyquist mode is dropped for odd orders.
  void derivative(const double* f, int order, double* out);
  /// Zeroes modes above 2/3 of the Nyquist wavenumber.
  void dealias(double* f);

  /// max |fh_j| over j > 2N/6 relative to max |fh_j|.
  double tail_ratio(const double* f);

 private:
  struct Plans;
  GridSpec grid_;
  std::unique_ptr<Plans> p_;
  std::vector<std::complex<double>> work_;
};

/// Free-function forms; each call builds a transform pair.
/// Throws std::invalid_argument when m.size() != g.N.
Field helmholtz_invert(const Field& m, const GridSpec& g);
Field spectral_deriv(const Field& f, int order, const GridSpec& g);

}  // namespace psslab::chsim
