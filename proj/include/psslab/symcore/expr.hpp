#pragma once

#include <compare>
#include <memory>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "psslab/symcore/gauss_rational.hpp"

namespace psslab::sym {

/// A jet coordinate u_{x^nx t^nt}. Mixed partials commute, so the pair of
/// derivative counts identifies the coordinate.
struct JetCoord {
  int nx = 0;
  int nt = 0;

  int order() const { return nx + nt; }
  /// True if this coordinate is obtained from `base` by further differentiation
  /// (including base itself).
  bool is_derivative_of(const JetCoord& base) const { return nx >= base.nx && nt >= base.nt; }
  /// Canonical name: "u", "u_x", "u_xxt" (x's before t's).
  std::string name() const;

  friend auto operator<=>(const JetCoord&, const JetCoord&) = default;
};

enum class Var { X, T };

enum class Func { Sin, Cos, Exp };

const char* func_name(Func f);

/// Immutable symbolic expression. Copies share structure; every operation
/// returns a new value.
///
/// Arithmetic goes through smart constructors that flatten nested sums and
/// products, fold constants into a single term (sums) or leading coefficient
/// (products), and drop identities. They do not reorder or collect terms;
/// that is the job of normalize().
class Expr {
 public:
  enum class Kind { Const, X, T, Jet, Param, Add, Mul, Pow, Func };

  Expr();  // the constant 0
  Expr(long v);                 // NOLINT(google-explicit-constructor)
  Expr(GaussRational v);        // NOLINT(google-explicit-constructor)

  static Expr x();
  static Expr t();
  static Expr u() { return jet(JetCoord{0, 0}); }
  static Expr jet(JetCoord c);
  static Expr jet(std::string_view name);  // "u_xt" etc.
  static Expr param(std::string name);
  static Expr imag_unit() { return Expr(GaussRational::imag_unit()); }
  static Expr variable(Var v) { return v == Var::X ? x() : t(); }

  static Expr sum(std::vector<Expr> terms);
  static Expr product(std::vector<Expr> factors);
  static Expr power(const Expr& base, int exponent);
  static Expr apply(Func f, const Expr& arg);

  Kind kind() const;
  bool is_const() const { return kind() == Kind::Const; }
  bool is_zero_constant() const;
  bool is_one_constant() const;

  const GaussRational& value() const;     // Const
  JetCoord jet_coord() const;              // Jet
  const std::string& param_name() const;   // Param
  int exponent() const;                    // Pow
  Func func() const;                       // Func
  /// Children: summands (Add), factors (Mul), {base} (Pow), {argument} (Func).
  std::span<const Expr> operands() const;

  /// Structural identity of the trees.
  friend bool operator==(const Expr& a, const Expr& b);

  /// Text in the expression grammar; parse(str()) rebuilds the same tree.
  std::string str() const;
  friend std::ostream& operator<<(std::ostream& os, const Expr& e) { return os << e.str(); }

  std::size_t node_count() const;

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
inline Expr& operator+=(Expr& a, const Expr& b) { return a = a + b; }
inline Expr& operator-=(Expr& a, const Expr& b) { return a = a - b; }
inline Expr& operator*=(Expr& a, const Expr& b) { return a = a * b; }
Expr pow(const Expr& base, int exponent);
Expr sin(const Expr& arg);
Expr cos(const Expr& arg);
Expr exp(const Expr& arg);

/// Rational constant num/den.
Expr frac(long num, long den);

std::set<JetCoord> free_jets(const Expr& e);
std::set<std::string> free_params(const Expr& e);
bool depends_on(const Expr& e, Var v);
/// Names of every atom that eval_numeric needs a value for.
std::set<std::string> atom_names(const Expr& e);

}  // namespace psslab::sym
