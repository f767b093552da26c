#include <fstream>
#include <string>

#include <gtest/gtest.h>

#include "../support/random_expr.hpp"
#include "psslab/forms/forms.hpp"
#include "psslab/forms/io.hpp"
#include "psslab/symcore/calculus.hpp"
#include "psslab/symcore/numeric.hpp"
#include "psslab/symcore/parse.hpp"

namespace psslab::forms {
namespace {

using sym::is_zero;
using sym::JetCoord;

Expr P(std::string_view s) { return sym::parse(s); }

const Expr u = Expr::u();
const Expr eta = Expr::param("eta");
const Expr zeta = Expr::param("zeta");
const Expr I = Expr::imag_unit();

OneForm F(std::string_view dx, std::string_view dt) { return {P(dx), P(dt)}; }

// u_xt := sin u with prolongation.
Expr on_sine_gordon(const Expr& e) { return sym::substitute(e, JetCoord{1, 1}, sym::sin(u), true); }

Triad sg_triad() {
  return {F("0", "sin(u)/eta"), F("eta", "cos(u)/eta"), F("u_x", "0")};
}

AknsData sg_akns(bool printed) {
  AknsData d;
  d.q = P("-u_x/2");
  d.r = P("u_x/2");
  d.A = printed ? P("i*cos(u)/4") : P("i*cos(u)/(4*zeta)");
  d.B = P("i*sin(u)/(4*zeta)");
  d.C = d.B;
  return d;
}

TEST(ExtD, OfUxDx) {
  TwoForm d = ext_d(F("u_x", "0"));
  EXPECT_TRUE(is_zero(d.c + P("u_xt")));
}

TEST(ExtD, SecondSineGordonForm) {
  TwoForm d = ext_d(F("eta", "cos(u)/eta"));
  EXPECT_TRUE(is_zero(d.c + P("u_x*sin(u)/eta")));
}

TEST(ExtD, OfXDt) { EXPECT_TRUE(is_zero(ext_d(F("0", "x")).c - 1)); }

TEST(ExtD, ConstantCoefficientsGiveZero) {
  EXPECT_TRUE(is_zero(ext_d(F("3/2 + eta", "i*lambda")).c));
}

TEST(Wedge, SineGordonW1W2) {
  Triad t = sg_triad();
  EXPECT_TRUE(is_zero(wedge(t.w1, t.w2).c + sym::sin(u)));
}

TEST(Wedge, CamassaHolmW1W2) {
  OneForm w1 = F("lambda/2 + 1/(2*lambda) - u + u_xx",
                 "(u - u_xx)*u + lambda/2*u - u/(2*lambda) - 1/2 - lambda^2/2");
  OneForm w2 = F("0", "-u_x");
  EXPECT_TRUE(is_zero(wedge(w1, w2).c + P("(lambda/2 + 1/(2*lambda) - u + u_xx)*u_x")));
}

TEST(Wedge, SelfWedgeVanishes) {
  OneForm a = F("sin(u)*x + lambda", "u_t^2/eta");
  EXPECT_TRUE(is_zero(wedge(a, a).c));
}

MatrixOneForm constant_matrix() {
  MatrixOneForm m;
  m.X = {{{P("1/2"), P("i")}, {P("lambda"), P("-1/2")}}};
  m.T = {{{P("3"), P("0")}, {P("eta"), P("-3")}}};
  return m;
}

TEST(MatrixForms, ZeroMatrixHasZeroDerivativeAndCurvature) {
  MatrixOneForm z;
  for (const auto& row : curvature_matrix(z))
    for (const auto& e : row) EXPECT_TRUE(is_zero(e.c));
  for (const auto& row : matrix_ext_d(z))
    for (const auto& e : row) EXPECT_TRUE(is_zero(e.c));
}

TEST(MatrixForms, ConstantEntriesHaveZeroDerivative) {
  for (const auto& row : matrix_ext_d(constant_matrix()))
    for (const auto& e : row) EXPECT_TRUE(is_zero(e.c));
}

TEST(MatrixForms, ExtDIsEntrywise) {
  MatrixOneForm m = akns_matrix(sg_akns(false));
  TwoFormMatrix d = matrix_ext_d(m);
  // Hand expansion: d(A dt) = D_x A dx^dt, d(q dx) = -D_t q dx^dt.
  EXPECT_TRUE(is_zero(d[0][0].c - P("-i*u_x*sin(u)/(4*zeta)")));
  EXPECT_TRUE(is_zero(d[0][1].c - P("i*u_x*cos(u)/(4*zeta) + u_xt/2")));
  EXPECT_TRUE(is_zero(d[1][0].c - P("i*u_x*cos(u)/(4*zeta) - u_xt/2")));
  EXPECT_TRUE(is_zero(d[1][1].c - P("i*u_x*sin(u)/(4*zeta)")));
}

TEST(MatrixForms, DiagonalWithEqualEntriesSquaresToZero) {
  MatrixOneForm m;
  OneForm w = F("u*x", "sin(u) + eta");
  m.set(0, 0, w);
  m.set(1, 1, w);
  for (const auto& row : matrix_wedge(m, m))
    for (const auto& e : row) EXPECT_TRUE(is_zero(e.c));
}

TEST(MatrixForms, AknsSquareIsCommutator) {
  Expr q = P("u_x*lambda"), r = P("u - 1"), A = P("cos(u)"), B = P("u_t"), C = P("x*u");
  AknsData d{q, r, A, B, C};
  TwoFormMatrix w = matrix_wedge(akns_matrix(d), akns_matrix(d));
  Expr iz = I * zeta;
  EXPECT_TRUE(is_zero(w[0][0].c - (q * C - r * B)));
  EXPECT_TRUE(is_zero(w[0][1].c - (-2 * iz * B - 2 * A * q)));
  EXPECT_TRUE(is_zero(w[1][0].c - (2 * iz * C + 2 * A * r)));
  EXPECT_TRUE(is_zero(w[1][1].c - (r * B - q * C)));
}

TEST(MatrixForms, ScalarFormsWedgeAntisymmetrically) {
  MatrixOneForm a, b;
  OneForm f = F("u", "x"), g = F("t", "u_x");
  for (int i = 0; i < 2; ++i) {
    a.set(i, i, f);
    b.set(i, i, g);
  }
  TwoFormMatrix ab = matrix_wedge(a, b), ba = matrix_wedge(b, a);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) EXPECT_TRUE(is_zero(ab[i][j].c + ba[i][j].c));
}

TEST(Curvature, ConstantDiagonalIsFlat) {
  MatrixOneForm m;
  m.set(0, 0, F("2", "lambda"));
  m.set(1, 1, F("-2", "-lambda"));
  for (const auto& row : curvature_matrix(m))
    for (const auto& e : row) EXPECT_TRUE(is_zero(e.c));
}

TEST(Curvature, SineGordonAknsReducesOnSolutions) {
  TwoFormMatrix s = curvature_matrix(akns_matrix(sg_akns(false)));
  bool some_nonzero = false;
  for (const auto& row : s)
    for (const auto& e : row) {
      EXPECT_TRUE(is_zero(on_sine_gordon(e.c)));
      some_nonzero = some_nonzero || !is_zero(e.c);
    }
  EXPECT_TRUE(some_nonzero);
}

TEST(ZeroCurvature, ZeroAndCommutingConstantsVanish) {
  ExprMatrix z{};
  for (auto sign : {CurvatureSign::Plus, CurvatureSign::Minus})
    for (const auto& row : zero_curvature_residual(z, z, sign))
      for (const auto& e : row) EXPECT_TRUE(is_zero(e));
  ExprMatrix X{{{P("2"), P("0")}, {P("0"), P("-2")}}};
  ExprMatrix T{{{P("lambda"), P("0")}, {P("0"), P("-lambda")}}};
  for (auto sign : {CurvatureSign::Plus, CurvatureSign::Minus})
    for (const auto& row : zero_curvature_residual(X, T, sign))
      for (const auto& e : row) EXPECT_TRUE(is_zero(e));
}

bool annihilates_sine_gordon(CurvatureSign sign) {
  MatrixOneForm m = akns_matrix(sg_akns(false));
  for (const auto& row : zero_curvature_residual(m.X, m.T, sign))
    for (const auto& e : row)
      if (!is_zero(on_sine_gordon(e))) return false;
  return true;
}

TEST(ZeroCurvature, SignMatchesGoldenFile) {
  bool plus = annihilates_sine_gordon(CurvatureSign::Plus);
  bool minus = annihilates_sine_gordon(CurvatureSign::Minus);
  ASSERT_NE(plus, minus);
  std::ifstream in(std::string(PSSLAB_GOLDEN_DIR) + "/zero_curvature_sign.txt");
  ASSERT_TRUE(in.good());
  std::string golden;
  in >> golden;
  EXPECT_EQ(golden, minus ? "-" : "+");
  EXPECT_EQ(kDefaultCurvatureSign, minus ? CurvatureSign::Minus : CurvatureSign::Plus);
}

TEST(ZeroCurvature, ResidualIsMinusCurvature) {
  MatrixOneForm m = akns_matrix({P("u*eta"), P("u_x"), P("sin(u)"), P("x*u_t"), P("lambda")});
  ExprMatrix r = zero_curvature_residual(m.X, m.T, CurvatureSign::Minus);
  TwoFormMatrix s = curvature_matrix(m);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) EXPECT_TRUE(is_zero(r[i][j] + s[i][j].c));
}

TEST(Akns, ZeroData) {
  AknsResiduals r = akns_compatibility({Expr(), Expr(), Expr(), Expr(), Expr()});
  EXPECT_TRUE(is_zero(r.first));
  EXPECT_TRUE(is_zero(r.second));
  EXPECT_TRUE(is_zero(r.third));
}

TEST(Akns, PrintedSineGordonDataFailsFirstEquation) {
  AknsResiduals r = akns_compatibility(sg_akns(true));
  EXPECT_FALSE(is_zero(on_sine_gordon(r.first)));
}

TEST(Akns, CorrectedSineGordonDataReducesOnSolutions) {
  AknsResiduals r = akns_compatibility(sg_akns(false));
  EXPECT_TRUE(is_zero(on_sine_gordon(r.first)));
  EXPECT_TRUE(is_zero(on_sine_gordon(r.second)));
  EXPECT_TRUE(is_zero(on_sine_gordon(r.third)));
  // Second residual is (u_xt - sin u)/2 before reduction.
  EXPECT_TRUE(is_zero(r.second - P("(u_xt - sin(u))/2")));
}

TEST(Sasaki, ZeroMatrixGivesZeroTriad) {
  Triad t = sasaki_triad(MatrixOneForm{});
  for (int i = 0; i < 3; ++i) {
    EXPECT_TRUE(is_zero(t[i].dx));
    EXPECT_TRUE(is_zero(t[i].dt));
  }
}

TEST(Sasaki, RejectsTraceful) {
  MatrixOneForm m;
  m.set(0, 0, F("1", "0"));
  EXPECT_THROW(sasaki_triad(m), NotTraceZero);
}

TEST(Sasaki, SineGordonAknsGivesSineGordonTriad) {
  Triad t = sasaki_triad(akns_matrix(sg_akns(false)));
  Expr zeta_of_eta = I * eta / 2;
  Triad expected = sg_triad();
  for (int i = 0; i < 3; ++i) {
    EXPECT_TRUE(is_zero(sym::substitute_param(t[i].dx, "zeta", zeta_of_eta) - expected[i].dx)) << i;
    EXPECT_TRUE(is_zero(sym::substitute_param(t[i].dt, "zeta", zeta_of_eta) - expected[i].dt)) << i;
  }
}

TEST(Sasaki, CurvatureEntriesAreStructureResiduals) {
  Triad t = sg_triad();
  TwoForm r1 = ext_d(t.w1) - wedge(t.w3, t.w2);
  TwoForm r2 = ext_d(t.w2) - wedge(t.w1, t.w3);
  TwoForm r3 = ext_d(t.w3) - wedge(t.w1, t.w2);
  TwoFormMatrix s = curvature_matrix(triad_to_matrix(t));
  EXPECT_TRUE(is_zero(s[0][0].c - r2.c / 2));
  EXPECT_TRUE(is_zero(s[1][1].c + r2.c / 2));
  EXPECT_TRUE(is_zero(s[0][1].c - (r1.c - r3.c) / 2));
  EXPECT_TRUE(is_zero(s[1][0].c - (r1.c + r3.c) / 2));
}

TEST(FormFile, TriadRoundTrip) {
  FormDocument doc{"sg", {"eta"}, sg_triad()};
  auto path = std::filesystem::temp_directory_path() / "psslab_forms_triad.json";
  write_form_file(path, doc);
  FormDocument back = read_form_file(path);
  EXPECT_EQ(back.name, "sg");
  EXPECT_EQ(back.parameters, doc.parameters);
  ASSERT_TRUE(back.is_triad());
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(back.triad()[i].dx, doc.triad()[i].dx);
    EXPECT_EQ(back.triad()[i].dt, doc.triad()[i].dt);
  }
  std::filesystem::remove(path);
}

TEST(FormFile, MatrixRoundTrip) {
  FormDocument doc{"sg-akns", {"zeta"}, akns_matrix(sg_akns(false))};
  FormDocument back = form_from_json(form_to_json(doc));
  ASSERT_FALSE(back.is_triad());
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      EXPECT_EQ(back.matrix().X[i][j], doc.matrix().X[i][j]);
      EXPECT_EQ(back.matrix().T[i][j], doc.matrix().T[i][j]);
    }
}

TEST(FormFile, Errors) {
  EXPECT_THROW(form_from_json(nlohmann::json::parse(R"({"name": "x"})")), FormatError);
  EXPECT_THROW(form_from_json(nlohmann::json::parse(R"({"w1": {"dx": "u"}})")), FormatError);
  EXPECT_THROW(form_from_json(nlohmann::json::parse(R"({"X": [["1"]], "T": []})")), FormatError);
  EXPECT_THROW(form_from_json(nlohmann::json::parse(
                   R"({"w1": {"dx": "u+", "dt": "0"}, "w2": {"dx": "0", "dt": "0"}, "w3": {"dx": "0", "dt": "0"}})")),
               sym::ParseError);
}

// Randomized properties.

class FormProperties : public ::testing::TestWithParam<int> {
 protected:
  psslab::testing::ExprGen gen{static_cast<std::uint64_t>(GetParam()) * 7919u + 3u, true};
  OneForm form(int depth) { return {gen(depth), gen(depth)}; }
};

TEST_P(FormProperties, DOfExactFormVanishes) {
  Expr f = gen(3);
  OneForm df{sym::total_derivative(f, sym::Var::X), sym::total_derivative(f, sym::Var::T)};
  EXPECT_TRUE(is_zero(ext_d(df).c));
}

TEST_P(FormProperties, WedgeIsAntisymmetricAndBilinear) {
  OneForm a = form(2), b = form(2), c = form(2);
  Expr s = gen(1);
  EXPECT_TRUE(is_zero(wedge(a, b).c + wedge(b, a).c));
  EXPECT_TRUE(is_zero(wedge(a + c, b).c - wedge(a, b).c - wedge(c, b).c));
  EXPECT_TRUE(is_zero(wedge(s * a, b).c - s * wedge(a, b).c));
}

TEST_P(FormProperties, SasakiRoundTrip) {
  Triad t{form(2), form(2), form(2)};
  Triad back = sasaki_triad(triad_to_matrix(t));
  for (int i = 0; i < 3; ++i) {
    EXPECT_TRUE(is_zero(back[i].dx - t[i].dx));
    EXPECT_TRUE(is_zero(back[i].dt - t[i].dt));
  }
}

TEST_P(FormProperties, TraceZeroMatrixRoundTrip) {
  MatrixOneForm m;
  OneForm a = form(2);
  m.set(0, 0, a);
  m.set(1, 1, -a);
  m.set(0, 1, form(2));
  m.set(1, 0, form(2));
  MatrixOneForm back = triad_to_matrix(sasaki_triad(m));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      EXPECT_TRUE(is_zero(back.X[i][j] - m.X[i][j]));
      EXPECT_TRUE(is_zero(back.T[i][j] - m.T[i][j]));
    }
}

bool curvature_vanishes(const Triad& t) {
  for (const auto& row : curvature_matrix(triad_to_matrix(t)))
    for (const auto& e : row)
      if (!is_zero(e.c)) return false;
  return true;
}

bool structure_holds(const Triad& t) {
  return is_zero((ext_d(t.w1) - wedge(t.w3, t.w2)).c) && is_zero((ext_d(t.w2) - wedge(t.w1, t.w3)).c) &&
         is_zero((ext_d(t.w3) - wedge(t.w1, t.w2)).c);
}

TEST_P(FormProperties, CurvatureVanishesIffStructureEquationsHold) {
  Triad generic{form(2), form(2), form(2)};
  EXPECT_EQ(curvature_vanishes(generic), structure_holds(generic));
  // w1 = df, w2 = w3 = e^f dg satisfies the structure equations identically.
  Expr f = gen(2), g = gen(2);
  OneForm df{sym::total_derivative(f, sym::Var::X), sym::total_derivative(f, sym::Var::T)};
  OneForm dg{sym::total_derivative(g, sym::Var::X), sym::total_derivative(g, sym::Var::T)};
  Triad flat{df, sym::exp(f) * dg, sym::exp(f) * dg};
  EXPECT_TRUE(structure_holds(flat));
  EXPECT_TRUE(curvature_vanishes(flat));
}

INSTANTIATE_TEST_SUITE_P(Random, FormProperties, ::testing::Range(0, 25));

}  // namespace
}  // namespace psslab::forms
