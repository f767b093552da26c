#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

#include "psslab/symcore/expr.hpp"

namespace psslab::sym {

/// Values for atoms, keyed by atom name ("x", "t", "u", "u_xt", "lambda").
using Assignment = std::map<std::string, std::complex<double>>;

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class MissingAtom : public EvalError {
 public:
  using EvalError::EvalError;
};
class PoleError : public EvalError {
 public:
  using EvalError::EvalError;
};

/// Divisors with magnitude below this are treated as poles.
inline constexpr double kPoleThreshold = 1e-14;

std::complex<double> eval_numeric(const Expr& e, const Assignment& assignment);

struct ZeroTestOptions {
  std::uint64_t seed = 0x5eed;
  int points = 8;
  int rounds = 5;
  double tolerance = 1e-9;
  double annulus_inner = 0.5;
  double annulus_outer = 1.5;
};

/// The certifier could not find pole-free sample points.
class ZeroTestInconclusive : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The exact normal form and the numeric certificate disagree.
class CertificateMismatch : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Exact zero test via normalize(), certified by evaluation at random complex
/// points drawn from an annulus. Expressions carrying opaque function atoms
/// (anything but sin u, cos u) may be zero without a zero normal form; for
/// those the numeric certificate decides.
bool is_zero(const Expr& e, const ZeroTestOptions& options = {});

/// Random assignment for every atom of e, reproducible from the seed.
Assignment random_assignment(const Expr& e, std::uint64_t seed, double inner = 0.5,
                             double outer = 1.5);

}  // namespace psslab::sym
