#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "psslab/symcore/expr.hpp"

namespace psslab::sym {

/// Indeterminate of the normal form. sin(u) and cos(u) are atoms tied by
/// cos^2 = 1 - sin^2; any other function application is an opaque atom keyed
/// by the printed normal form of the application.
struct Atom {
  enum class Kind : int { Jet = 0, X, T, CosU, SinU, Param, Opaque };
  Kind kind = Kind::Jet;
  JetCoord jet;
  std::string key;
  Expr expr;

  static Atom of_jet(JetCoord c);
  static Atom of_param(const std::string& name);
  static Atom x();
  static Atom t();
  static Atom sin_u();
  static Atom cos_u();
  static Atom opaque(const Expr& application);

  bool is_trig() const { return kind == Kind::CosU || kind == Kind::SinU; }
  /// Negative when *this ranks ahead of `o` in the lexicographic term order.
  /// Jets come first (highest order first), then x, t, cos u, sin u,
  /// parameters and opaque atoms.
  int compare(const Atom& o) const;
  bool operator==(const Atom& o) const { return compare(o) == 0; }
};

/// Laurent monomial: atoms in rank order with non-zero exponents. Trig atoms
/// never carry negative exponents.
using Monomial = std::vector<std::pair<Atom, int>>;

/// >0 if a ranks above b in the lexicographic term order.
int lex_compare(const Monomial& a, const Monomial& b);
Monomial mono_mul(const Monomial& a, const Monomial& b);
Monomial mono_inverse(const Monomial& a);
int mono_exponent(const Monomial& m, const Atom& a);

struct LexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return lex_compare(a, b) > 0; }
};

/// Multivariate Laurent polynomial with Gaussian-rational coefficients,
/// kept reduced modulo cos^2 u + sin^2 u - 1 (cos u degree at most 1).
/// Terms iterate from the leading term down.
class Poly {
 public:
  using Terms = std::map<Monomial, GaussRational, LexGreater>;

  Poly() = default;
  Poly(const GaussRational& c);  // NOLINT(google-explicit-constructor)
  static Poly atom(const Atom& a, int exponent = 1);
  static Poly monomial(const Monomial& m, const GaussRational& c);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::size_t size() const { return terms_.size(); }
  std::pair<Monomial, GaussRational> leading() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly operator-() const;
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly scaled(const GaussRational& c) const;
  Poly times_monomial(const Monomial& m) const;
  Poly pow(int n) const;

  friend bool operator==(const Poly& a, const Poly& b);

  /// Highest exponent of `a` over all terms (0 if absent).
  int degree_in(const Atom& a) const;
  /// Lowest exponent of `a` over all terms (0 if absent from some term).
  int min_degree_in(const Atom& a) const;
  /// Splits into coefficients of powers of `a`.
  std::map<int, Poly> coefficients_in(const Atom& a) const;
  std::vector<Atom> atoms() const;

  Expr to_expr() const;

  /// Exact quotient if `d` divides *this in the (Laurent, trig-reduced) ring,
  /// found by leading-term division; nullopt otherwise.
  std::optional<Poly> try_divide(const Poly& d) const;

 private:
  void add_term(const Monomial& m, const GaussRational& c);
  Terms terms_;
};

/// num/den with den != 0. After simplification den is 1 whenever the
/// expression's denominators are Laurent monomials.
struct RatFunc {
  Poly num{GaussRational(0)};
  Poly den{GaussRational(1)};

  bool is_zero() const { return num.is_zero(); }
  Expr to_expr() const;
};

/// Converts to the rational normal form. Throws std::domain_error when the
/// expression divides by something that is identically zero.
RatFunc to_ratfunc(const Expr& e);

/// Canonical expanded rational form; deterministic and idempotent.
Expr normalize(const Expr& e);

/// True if e contains a function application other than sin(u), cos(u).
bool has_opaque_atoms(const Expr& e);

}  // namespace psslab::sym
