#include "psslab/symcore/expr.hpp"

#include <stdexcept>

namespace psslab::sym {

struct Expr::Node {
  Kind kind = Kind::Const;
  GaussRational value;
  JetCoord jet;
  std::string name;
  int exponent = 0;
  Func func = Func::Sin;
  std::vector<Expr> ops;
};

namespace {

enum Prec : int { kPrecAdd = 1, kPrecMul = 2, kPrecUnary = 3, kPrecPow = 4, kPrecAtom = 5 };

}  // namespace

std::string JetCoord::name() const {
  if (nx == 0 && nt == 0) return "u";
  return "u_" + std::string(static_cast<std::size_t>(nx), 'x') +
         std::string(static_cast<std::size_t>(nt), 't');
}

const char* func_name(Func f) {
  switch (f) {
    case Func::Sin: return "sin";
    case Func::Cos: return "cos";
    case Func::Exp: return "exp";
  }
  return "?";
}

Expr::Expr() : Expr(GaussRational(0)) {}

Expr::Expr(long v) : Expr(GaussRational(v)) {}

Expr::Expr(GaussRational v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Const;
  n->value = std::move(v);
  node_ = std::move(n);
}

Expr Expr::x() {
  static const Expr e = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::X;
    return Expr(std::shared_ptr<const Node>(std::move(n)));
  }();
  return e;
}

Expr Expr::t() {
  static const Expr e = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::T;
    return Expr(std::shared_ptr<const Node>(std::move(n)));
  }();
  return e;
}

Expr Expr::jet(JetCoord c) {
  if (c.nx < 0 || c.nt < 0) throw std::invalid_argument("negative jet order");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Jet;
  n->jet = c;
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::jet(std::string_view name) {
  if (name == "u") return u();
  if (name.size() < 3 || name.substr(0, 2) != "u_") {
    throw std::invalid_argument("not a jet coordinate: " + std::string(name));
  }
  JetCoord c;
  for (char ch : name.substr(2)) {
    if (ch == 'x') {
      ++c.nx;
    } else if (ch == 't') {
      ++c.nt;
    } else {
      throw std::invalid_argument("not a jet coordinate: " + std::string(name));
    }
  }
  return jet(c);
}

Expr Expr::param(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Param;
  n->name = std::move(name);
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::sum(std::vector<Expr> terms) {
  std::vector<Expr> flat;
  flat.reserve(terms.size());
  GaussRational constant(0);
  std::ptrdiff_t const_pos = -1;
  for (auto& term : terms) {
    auto push = [&](const Expr& e) {
      if (e.is_const()) {
        if (const_pos < 0) const_pos = static_cast<std::ptrdiff_t>(flat.size());
        constant += e.value();
      } else {
        flat.push_back(e);
      }
    };
    if (term.kind() == Kind::Add) {
      for (const auto& sub : term.operands()) push(sub);
    } else {
      push(term);
    }
  }
  if (!constant.is_zero()) {
    flat.insert(flat.begin() + const_pos, Expr(constant));
  }
  if (flat.empty()) return Expr(0);
  if (flat.size() == 1) return flat.front();
  auto n = std::make_shared<Node>();
  n->kind = Kind::Add;
  n->ops = std::move(flat);
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::product(std::vector<Expr> factors) {
  std::vector<Expr> flat;
  flat.reserve(factors.size() + 1);
  GaussRational coeff(1);
  for (auto& f : factors) {
    auto push = [&](const Expr& e) {
      if (e.is_const()) {
        coeff *= e.value();
      } else {
        flat.push_back(e);
      }
    };
    if (f.kind() == Kind::Mul) {
      for (const auto& sub : f.operands()) push(sub);
    } else {
      push(f);
    }
  }
  if (coeff.is_zero()) return Expr(0);
  if (flat.empty()) return Expr(coeff);
  if (flat.size() == 1 && coeff.is_one()) return flat.front();
  if (!coeff.is_one()) flat.insert(flat.begin(), Expr(coeff));
  auto n = std::make_shared<Node>();
  n->kind = Kind::Mul;
  n->ops = std::move(flat);
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::power(const Expr& base, int exponent) {
  if (exponent == 0) return Expr(1);
  if (exponent == 1) return base;
  if (base.is_const()) {
    if (base.value().is_zero() && exponent < 0) {
      throw std::domain_error("division by the zero constant");
    }
    return Expr(base.value().pow(exponent));
  }
  if (base.kind() == Kind::Pow) {
    return power(base.operands()[0], base.exponent() * exponent);
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::Pow;
  n->exponent = exponent;
  n->ops = {base};
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::apply(Func f, const Expr& arg) {
  if (arg.is_zero_constant()) return Expr(f == Func::Sin ? 0 : 1);
  auto n = std::make_shared<Node>();
  n->kind = Kind::Func;
  n->func = f;
  n->ops = {arg};
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr::Kind Expr::kind() const { return node_->kind; }

bool Expr::is_zero_constant() const { return is_const() && node_->value.is_zero(); }

bool Expr::is_one_constant() const { return is_const() && node_->value.is_one(); }

const GaussRational& Expr::value() const {
  if (kind() != Kind::Const) throw std::logic_error("Expr::value on non-constant");
  return node_->value;
}

JetCoord Expr::jet_coord() const {
  if (kind() != Kind::Jet) throw std::logic_error("Expr::jet_coord on non-jet");
  return node_->jet;
}

const std::string& Expr::param_name() const {
  if (kind() != Kind::Param) throw std::logic_error("Expr::param_name on non-parameter");
  return node_->name;
}

int Expr::exponent() const {
  if (kind() != Kind::Pow) throw std::logic_error("Expr::exponent on non-power");
  return node_->exponent;
}

Func Expr::func() const {
  if (kind() != Kind::Func) throw std::logic_error("Expr::func on non-function");
  return node_->func;
}

std::span<const Expr> Expr::operands() const { return node_->ops; }

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  const auto& na = *a.node_;
  const auto& nb = *b.node_;
  if (na.kind != nb.kind) return false;
  switch (na.kind) {
    case Expr::Kind::Const: return na.value == nb.value;
    case Expr::Kind::X:
    case Expr::Kind::T: return true;
    case Expr::Kind::Jet: return na.jet == nb.jet;
    case Expr::Kind::Param: return na.name == nb.name;
    case Expr::Kind::Pow:
      if (na.exponent != nb.exponent) return false;
      break;
    case Expr::Kind::Func:
      if (na.func != nb.func) return false;
      break;
    default: break;
  }
  if (na.ops.size() != nb.ops.size()) return false;
  for (std::size_t i = 0; i < na.ops.size(); ++i) {
    if (!(na.ops[i] == nb.ops[i])) return false;
  }
  return true;
}

std::size_t Expr::node_count() const {
  std::size_t n = 1;
  for (const auto& op : operands()) n += op.node_count();
  return n;
}

namespace {

std::string render(const Expr& e, int ctx);

// True if `e` prints with a leading minus sign that can be pulled out.
bool has_negative_sign(const Expr& e) {
  if (e.is_const()) return e.value().is_negative_real();
  if (e.kind() == Expr::Kind::Mul) {
    const Expr& first = e.operands()[0];
    return first.is_const() && first.value().is_negative_real();
  }
  return false;
}

std::string wrap(std::string s, bool paren) { return paren ? "(" + s + ")" : s; }

std::string render_product(const Expr& e, int ctx) {
  auto ops = e.operands();
  GaussRational coeff(1);
  std::size_t start = 0;
  if (ops[0].is_const()) {
    coeff = ops[0].value();
    start = 1;
  }
  std::string out;
  bool negative = coeff.is_negative_real();
  if (negative) coeff = -coeff;
  bool have_lead = false;
  if (!coeff.is_one()) {
    out = coeff.str();
    have_lead = true;
  }
  for (std::size_t k = start; k < ops.size(); ++k) {
    const Expr& f = ops[k];
    if (f.kind() == Expr::Kind::Pow && f.exponent() < 0) {
      Expr denom = Expr::power(f.operands()[0], -f.exponent());
      if (!have_lead) out = "1";
      out += "/" + render(denom, kPrecPow);
    } else {
      if (have_lead) out += "*";
      out += render(f, kPrecUnary);
    }
    have_lead = true;
  }
  if (negative) return wrap("-" + out, ctx > kPrecAdd);
  return wrap(out, ctx > kPrecMul);
}

std::string render(const Expr& e, int ctx) {
  switch (e.kind()) {
    case Expr::Kind::Const: {
      const auto& v = e.value();
      std::string s = v.str();
      bool compound = v.is_real() && (sgn(v.re()) < 0 || v.re().get_den() != 1);
      // Rationals like 1/2 bind as a quotient; keep them intact under ^ and
      // as operands of * or /.
      return wrap(s, compound && ctx >= kPrecUnary);
    }
    case Expr::Kind::X: return "x";
    case Expr::Kind::T: return "t";
    case Expr::Kind::Jet: return e.jet_coord().name();
    case Expr::Kind::Param: return e.param_name();
    case Expr::Kind::Add: {
      std::string out;
      bool first = true;
      for (const auto& term : e.operands()) {
        if (first) {
          out = render(term, kPrecAdd);
          first = false;
        } else if (has_negative_sign(term)) {
          out += " - " + render(-term, kPrecMul);
        } else {
          out += " + " + render(term, kPrecMul);
        }
      }
      return wrap(out, ctx > kPrecAdd);
    }
    case Expr::Kind::Mul: return render_product(e, ctx);
    case Expr::Kind::Pow: {
      int n = e.exponent();
      if (n < 0) {
        return wrap("1/" + render(Expr::power(e.operands()[0], -n), kPrecPow), ctx > kPrecMul);
      }
      return wrap(render(e.operands()[0], kPrecAtom) + "^" + std::to_string(n), ctx > kPrecPow);
    }
    case Expr::Kind::Func:
      return std::string(func_name(e.func())) + "(" + render(e.operands()[0], 0) + ")";
  }
  return "?";
}

void collect(const Expr& e, std::set<JetCoord>* jets, std::set<std::string>* params, bool* has_x,
             bool* has_t) {
  switch (e.kind()) {
    case Expr::Kind::Jet:
      if (jets) jets->insert(e.jet_coord());
      return;
    case Expr::Kind::Param:
      if (params) params->insert(e.param_name());
      return;
    case Expr::Kind::X:
      if (has_x) *has_x = true;
      return;
    case Expr::Kind::T:
      if (has_t) *has_t = true;
      return;
    default:
      for (const auto& op : e.operands()) collect(op, jets, params, has_x, has_t);
  }
}

}  // namespace

std::string Expr::str() const { return render(*this, 0); }

Expr operator+(const Expr& a, const Expr& b) { return Expr::sum({a, b}); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::sum({a, -b}); }
Expr operator-(const Expr& a) { return Expr::product({Expr(-1), a}); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::product({a, b}); }
Expr operator/(const Expr& a, const Expr& b) { return Expr::product({a, Expr::power(b, -1)}); }
Expr pow(const Expr& base, int exponent) { return Expr::power(base, exponent); }
Expr sin(const Expr& arg) { return Expr::apply(Func::Sin, arg); }
Expr cos(const Expr& arg) { return Expr::apply(Func::Cos, arg); }
Expr exp(const Expr& arg) { return Expr::apply(Func::Exp, arg); }

Expr frac(long num, long den) { return Expr(GaussRational::fraction(num, den)); }

std::set<JetCoord> free_jets(const Expr& e) {
  std::set<JetCoord> out;
  collect(e, &out, nullptr, nullptr, nullptr);
  return out;
}

std::set<std::string> free_params(const Expr& e) {
  std::set<std::string> out;
  collect(e, nullptr, &out, nullptr, nullptr);
  return out;
}

bool depends_on(const Expr& e, Var v) {
  bool hx = false;
  bool ht = false;
  collect(e, nullptr, nullptr, &hx, &ht);
  return v == Var::X ? hx : ht;
}

std::set<std::string> atom_names(const Expr& e) {
  std::set<JetCoord> jets;
  std::set<std::string> out;
  bool hx = false;
  bool ht = false;
  collect(e, &jets, &out, &hx, &ht);
  for (const auto& j : jets) out.insert(j.name());
  if (hx) out.insert("x");
  if (ht) out.insert("t");
  return out;
}

}  // namespace psslab::sym
