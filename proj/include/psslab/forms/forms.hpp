#pragma once

#include <array>
#include <stdexcept>
#include <string>

#include "psslab/symcore/expr.hpp"

namespace psslab::forms {

using sym::Expr;

/// f dx + g dt.
struct OneForm {
  Expr dx;
  Expr dt;

  friend OneForm operator+(const OneForm& a, const OneForm& b) { return {a.dx + b.dx, a.dt + b.dt}; }
  friend OneForm operator-(const OneForm& a, const OneForm& b) { return {a.dx - b.dx, a.dt - b.dt}; }
  friend OneForm operator-(const OneForm& a) { return {-a.dx, -a.dt}; }
  friend OneForm operator*(const Expr& s, const OneForm& a) { return {s * a.dx, s * a.dt}; }
};

/// c dx^dt.
struct TwoForm {
  Expr c;

  friend TwoForm operator+(const TwoForm& a, const TwoForm& b) { return {a.c + b.c}; }
  friend TwoForm operator-(const TwoForm& a, const TwoForm& b) { return {a.c - b.c}; }
};

using ExprMatrix = std::array<std::array<Expr, 2>, 2>;
using TwoFormMatrix = std::array<std::array<TwoForm, 2>, 2>;

/// Omega = X dx + T dt with 2x2 coefficient matrices.
struct MatrixOneForm {
  ExprMatrix X;
  ExprMatrix T;

  OneForm entry(int i, int j) const { return {X[i][j], T[i][j]}; }
  void set(int i, int j, const OneForm& w) {
    X[i][j] = w.dx;
    T[i][j] = w.dt;
  }
  /// Decided with sym::is_zero on both traces.
  bool is_trace_zero() const;
};

struct Triad {
  OneForm w1;
  OneForm w2;
  OneForm w3;

  const OneForm& operator[](int i) const { return i == 0 ? w1 : i == 1 ? w2 : w3; }
  OneForm& operator[](int i) { return i == 0 ? w1 : i == 1 ? w2 : w3; }
};

/// d(f dx + g dt) = (D_x g - D_t f) dx^dt.
TwoForm ext_d(const OneForm& w);
TwoForm wedge(const OneForm& a, const OneForm& b);

TwoFormMatrix matrix_ext_d(const MatrixOneForm& m);
/// (Omega ^ Psi)_ij = sum_k Omega_ik ^ Psi_kj.
TwoFormMatrix matrix_wedge(const MatrixOneForm& a, const MatrixOneForm& b);
/// d Omega - Omega ^ Omega.
TwoFormMatrix curvature_matrix(const MatrixOneForm& m);

ExprMatrix commutator(const ExprMatrix& a, const ExprMatrix& b);

/// Sign in front of D_x T in D_t X + s D_x T + [X, T].
enum class CurvatureSign { Plus = 1, Minus = -1 };

/// The sign that annihilates the sine-Gordon catalog pair; see
/// tests/golden/zero_curvature_sign.txt.
inline constexpr CurvatureSign kDefaultCurvatureSign = CurvatureSign::Minus;

ExprMatrix zero_curvature_residual(const ExprMatrix& X, const ExprMatrix& T, CurvatureSign sign);

struct AknsResiduals {
  Expr first;   // D_x A - (q C - r B)
  Expr second;  // D_x B + 2 i zeta B - (D_t q - 2 A q)
  Expr third;   // D_x C - 2 i zeta C - (D_t r + 2 A r)
};

struct AknsData {
  Expr q, r, A, B, C;
  std::string spectral = "zeta";
};

AknsResiduals akns_compatibility(const AknsData& d);

/// Omega = [[-i zeta dx + A dt, q dx + B dt], [r dx + C dt, i zeta dx - A dt]].
MatrixOneForm akns_matrix(const AknsData& d);

class NotTraceZero : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// w1 = O12 + O21, w2 = 2 O11, w3 = O21 - O12. Throws NotTraceZero.
Triad sasaki_triad(const MatrixOneForm& m);
/// Inverse of sasaki_triad: O11 = w2/2, O22 = -w2/2, O12 = (w1 - w3)/2,
/// O21 = (w1 + w3)/2.
MatrixOneForm triad_to_matrix(const Triad& t);

}  // namespace psslab::forms
