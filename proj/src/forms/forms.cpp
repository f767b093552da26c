#include "psslab/forms/forms.hpp"

#include "psslab/symcore/calculus.hpp"
#include "psslab/symcore/numeric.hpp"

namespace psslab::forms {

using sym::Var;

bool MatrixOneForm::is_trace_zero() const {
  return sym::is_zero(X[0][0] + X[1][1]) && sym::is_zero(T[0][0] + T[1][1]);
}

TwoForm ext_d(const OneForm& w) {
  return {sym::total_derivative(w.dt, Var::X) - sym::total_derivative(w.dx, Var::T)};
}

TwoForm wedge(const OneForm& a, const OneForm& b) { return {a.dx * b.dt - a.dt * b.dx}; }

TwoFormMatrix matrix_ext_d(const MatrixOneForm& m) {
  TwoFormMatrix out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out[i][j] = ext_d(m.entry(i, j));
  return out;
}

TwoFormMatrix matrix_wedge(const MatrixOneForm& a, const MatrixOneForm& b) {
  TwoFormMatrix out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out[i][j] = wedge(a.entry(i, 0), b.entry(0, j)) + wedge(a.entry(i, 1), b.entry(1, j));
  return out;
}

TwoFormMatrix curvature_matrix(const MatrixOneForm& m) {
  TwoFormMatrix d = matrix_ext_d(m);
  TwoFormMatrix w = matrix_wedge(m, m);
  TwoFormMatrix out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out[i][j] = d[i][j] - w[i][j];
  return out;
}

ExprMatrix commutator(const ExprMatrix& a, const ExprMatrix& b) {
  ExprMatrix out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j] - b[i][0] * a[0][j] - b[i][1] * a[1][j];
  return out;
}

ExprMatrix zero_curvature_residual(const ExprMatrix& X, const ExprMatrix& T, CurvatureSign sign) {
  ExprMatrix c = commutator(X, T);
  Expr s(static_cast<long>(sign));
  ExprMatrix out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out[i][j] = sym::total_derivative(X[i][j], Var::T) + s * sym::total_derivative(T[i][j], Var::X) + c[i][j];
  return out;
}

AknsResiduals akns_compatibility(const AknsData& d) {
  using sym::total_derivative;
  Expr zeta = Expr::param(d.spectral);
  Expr two_i_zeta = Expr(2) * Expr::imag_unit() * zeta;
  return {
      total_derivative(d.A, Var::X) - (d.q * d.C - d.r * d.B),
      total_derivative(d.B, Var::X) + two_i_zeta * d.B - (total_derivative(d.q, Var::T) - Expr(2) * d.A * d.q),
      total_derivative(d.C, Var::X) - two_i_zeta * d.C - (total_derivative(d.r, Var::T) + Expr(2) * d.A * d.r),
  };
}

MatrixOneForm akns_matrix(const AknsData& d) {
  Expr i_zeta = Expr::imag_unit() * Expr::param(d.spectral);
  MatrixOneForm m;
  m.X = {{{-i_zeta, d.q}, {d.r, i_zeta}}};
  m.T = {{{d.A, d.B}, {d.C, -d.A}}};
  return m;
}

Triad sasaki_triad(const MatrixOneForm& m) {
  if (!m.is_trace_zero()) throw NotTraceZero("matrix one-form is not trace-free");
  OneForm o11 = m.entry(0, 0), o12 = m.entry(0, 1), o21 = m.entry(1, 0);
  return {o12 + o21, Expr(2) * o11, o21 - o12};
}

MatrixOneForm triad_to_matrix(const Triad& t) {
  Expr half = sym::frac(1, 2);
  MatrixOneForm m;
  m.set(0, 0, half * t.w2);
  m.set(1, 1, -(half * t.w2));
  m.set(0, 1, half * (t.w1 - t.w3));
  m.set(1, 0, half * (t.w1 + t.w3));
  return m;
}

}  // namespace psslab::forms
