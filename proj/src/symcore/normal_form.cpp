#include "psslab/symcore/normal_form.hpp"

#include <algorithm>
#include <stdexcept>

namespace psslab::sym {

Atom Atom::of_jet(JetCoord c) {
  Atom a;
  a.kind = Kind::Jet;
  a.jet = c;
  a.expr = Expr::jet(c);
  return a;
}

Atom Atom::of_param(const std::string& name) {
  Atom a;
  a.kind = Kind::Param;
  a.key = name;
  a.expr = Expr::param(name);
  return a;
}

Atom Atom::x() {
  Atom a;
  a.kind = Kind::X;
  a.expr = Expr::x();
  return a;
}

Atom Atom::t() {
  Atom a;
  a.kind = Kind::T;
  a.expr = Expr::t();
  return a;
}

Atom Atom::sin_u() {
  Atom a;
  a.kind = Kind::SinU;
  a.expr = sin(Expr::u());
  return a;
}

Atom Atom::cos_u() {
  Atom a;
  a.kind = Kind::CosU;
  a.expr = cos(Expr::u());
  return a;
}

Atom Atom::opaque(const Expr& application) {
  Atom a;
  a.kind = Kind::Opaque;
  a.key = application.str();
  a.expr = application;
  return a;
}

int Atom::compare(const Atom& o) const {
  if (kind != o.kind) return static_cast<int>(kind) < static_cast<int>(o.kind) ? -1 : 1;
  switch (kind) {
    case Kind::Jet:
      if (jet.order() != o.jet.order()) return jet.order() > o.jet.order() ? -1 : 1;
      if (jet.nx != o.jet.nx) return jet.nx > o.jet.nx ? -1 : 1;
      return 0;
    case Kind::Param:
    case Kind::Opaque: {
      int c = key.compare(o.key);
      return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    default: return 0;
  }
}

int lex_compare(const Monomial& a, const Monomial& b) {
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    int c;
    if (i == a.size()) {
      c = 1;
    } else if (j == b.size()) {
      c = -1;
    } else {
      c = a[i].first.compare(b[j].first);
    }
    if (c < 0) return a[i].second > 0 ? 1 : -1;
    if (c > 0) return b[j].second > 0 ? -1 : 1;
    if (a[i].second != b[j].second) return a[i].second > b[j].second ? 1 : -1;
    ++i;
    ++j;
  }
  return 0;
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    int c = i == a.size() ? 1 : (j == b.size() ? -1 : a[i].first.compare(b[j].first));
    if (c < 0) {
      out.push_back(a[i++]);
    } else if (c > 0) {
      out.push_back(b[j++]);
    } else {
      int e = a[i].second + b[j].second;
      if (e != 0) out.emplace_back(a[i].first, e);
      ++i;
      ++j;
    }
  }
  return out;
}

Monomial mono_inverse(const Monomial& a) {
  Monomial out = a;
  for (auto& [atom, e] : out) e = -e;
  return out;
}

int mono_exponent(const Monomial& m, const Atom& a) {
  for (const auto& [atom, e] : m) {
    if (atom == a) return e;
  }
  return 0;
}

namespace {

Monomial without(const Monomial& m, const Atom& a) {
  Monomial out;
  for (const auto& p : m) {
    if (!(p.first == a)) out.push_back(p);
  }
  return out;
}

// Per-atom minimum exponent over the non-trig atoms of p (atoms absent from a
// term count as exponent 0).
Monomial non_trig_content(const Poly& p) {
  Monomial g;
  for (const auto& a : p.atoms()) {
    if (a.is_trig()) continue;
    int lo = p.min_degree_in(a);
    if (lo != 0) g.emplace_back(a, lo);
  }
  return g;
}

}  // namespace

Poly::Poly(const GaussRational& c) {
  if (!c.is_zero()) terms_.emplace(Monomial{}, c);
}

Poly Poly::atom(const Atom& a, int exponent) {
  if (a.is_trig() && exponent < 0) throw std::logic_error("negative trig exponent in Poly");
  Poly p;
  p.add_term(exponent == 0 ? Monomial{} : Monomial{{a, exponent}}, GaussRational(1));
  return p;
}

Poly Poly::monomial(const Monomial& m, const GaussRational& c) {
  Poly p;
  p.add_term(m, c);
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

std::pair<Monomial, GaussRational> Poly::leading() const {
  if (terms_.empty()) return {Monomial{}, GaussRational(0)};
  return *terms_.begin();
}

void Poly::add_term(const Monomial& m, const GaussRational& c) {
  if (c.is_zero()) return;
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (m[k].first.kind == Atom::Kind::CosU && m[k].second >= 2) {
      Monomial lower = m;
      lower[k].second -= 2;
      if (lower[k].second == 0) lower.erase(lower.begin() + static_cast<std::ptrdiff_t>(k));
      add_term(lower, c);
      add_term(mono_mul(lower, {{Atom::sin_u(), 2}}), -c);
      return;
    }
  }
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly Poly::operator-() const { return scaled(GaussRational(-1)); }

Poly operator*(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) out.add_term(mono_mul(ma, mb), ca * cb);
  }
  return out;
}

Poly Poly::scaled(const GaussRational& c) const {
  Poly out;
  if (c.is_zero()) return out;
  for (const auto& [m, k] : terms_) out.terms_.emplace(m, k * c);
  return out;
}

Poly Poly::times_monomial(const Monomial& m) const {
  Poly out;
  for (const auto& [mm, c] : terms_) out.add_term(mono_mul(mm, m), c);
  return out;
}

Poly Poly::pow(int n) const {
  if (n < 0) throw std::logic_error("Poly::pow with negative exponent");
  Poly result(GaussRational(1));
  Poly base = *this;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  auto ia = a.terms_.begin();
  auto ib = b.terms_.begin();
  for (; ia != a.terms_.end(); ++ia, ++ib) {
    if (lex_compare(ia->first, ib->first) != 0 || !(ia->second == ib->second)) return false;
  }
  return true;
}

int Poly::degree_in(const Atom& a) const {
  int hi = 0;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    int e = mono_exponent(m, a);
    hi = first ? e : std::max(hi, e);
    first = false;
  }
  return hi;
}

int Poly::min_degree_in(const Atom& a) const {
  int lo = 0;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    int e = mono_exponent(m, a);
    lo = first ? e : std::min(lo, e);
    first = false;
  }
  return lo;
}

std::map<int, Poly> Poly::coefficients_in(const Atom& a) const {
  std::map<int, Poly> out;
  for (const auto& [m, c] : terms_) out[mono_exponent(m, a)].add_term(without(m, a), c);
  return out;
}

std::vector<Atom> Poly::atoms() const {
  std::vector<Atom> out;
  for (const auto& [m, c] : terms_) {
    for (const auto& [a, e] : m) {
      auto pos = std::lower_bound(out.begin(), out.end(), a,
                                  [](const Atom& l, const Atom& r) { return l.compare(r) < 0; });
      if (pos == out.end() || !(*pos == a)) out.insert(pos, a);
    }
  }
  return out;
}

Expr Poly::to_expr() const {
  std::vector<Expr> terms;
  terms.reserve(terms_.size());
  for (const auto& [m, c] : terms_) {
    std::vector<Expr> factors{Expr(c)};
    for (const auto& [a, e] : m) factors.push_back(sym::pow(a.expr, e));
    terms.push_back(Expr::product(std::move(factors)));
  }
  return Expr::sum(std::move(terms));
}

std::optional<Poly> Poly::try_divide(const Poly& d) const {
  if (d.is_zero()) return std::nullopt;
  if (is_zero()) return Poly{};
  Monomial gd = non_trig_content(d);
  Monomial gn = non_trig_content(*this);
  Poly dp = d.times_monomial(mono_inverse(gd));
  Poly r = times_monomial(mono_inverse(gn));
  auto [md, cd] = dp.leading();
  Poly q;
  const std::size_t max_steps = 4 * (r.size() + 1) * (dp.size() + 1) + 1024;
  for (std::size_t step = 0; !r.is_zero(); ++step) {
    if (step > max_steps) return std::nullopt;
    auto [mr, cr] = r.leading();
    Monomial mq = mono_mul(mr, mono_inverse(md));
    for (const auto& [a, e] : mq) {
      if (e < 0) return std::nullopt;
    }
    GaussRational cq = cr / cd;
    q.add_term(mq, cq);
    r -= dp.times_monomial(mq).scaled(cq);
  }
  return q.times_monomial(mono_mul(gn, mono_inverse(gd)));
}

namespace {

RatFunc simplify(RatFunc r) {
  if (r.num.is_zero()) return {};
  if (r.den.size() == 1) {
    auto [m, c] = r.den.leading();
    Monomial trig;
    Monomial plain;
    for (const auto& p : m) (p.first.is_trig() ? trig : plain).push_back(p);
    r.num = r.num.times_monomial(mono_inverse(plain)).scaled(c.inverse());
    r.den = trig.empty() ? Poly(GaussRational(1)) : Poly::monomial(trig, GaussRational(1));
    if (!trig.empty()) {
      if (auto q = r.num.try_divide(r.den)) return {*q, Poly(GaussRational(1))};
    }
    return r;
  }
  Monomial g = non_trig_content(r.den);
  if (!g.empty()) {
    Monomial gi = mono_inverse(g);
    r.den = r.den.times_monomial(gi);
    r.num = r.num.times_monomial(gi);
  }
  GaussRational lc = r.den.leading().second;
  if (!lc.is_one()) {
    GaussRational inv = lc.inverse();
    r.den = r.den.scaled(inv);
    r.num = r.num.scaled(inv);
  }
  if (auto q = r.num.try_divide(r.den)) return {*q, Poly(GaussRational(1))};
  return r;
}

RatFunc add(const RatFunc& a, const RatFunc& b, bool subtract) {
  Poly bn = subtract ? -b.num : b.num;
  if (a.den == b.den) return simplify({a.num + bn, a.den});
  return simplify({a.num * b.den + bn * a.den, a.den * b.den});
}

RatFunc mul(const RatFunc& a, const RatFunc& b) {
  if (a.num.is_zero() || b.num.is_zero()) return {};
  return simplify({a.num * b.num, a.den * b.den});
}

RatFunc invert(const RatFunc& a) {
  if (a.num.is_zero()) throw std::domain_error("division by an expression that is identically zero");
  return simplify({a.den, a.num});
}

RatFunc ratfunc_pow(const RatFunc& a, int n) {
  RatFunc base = n < 0 ? invert(a) : a;
  int k = n < 0 ? -n : n;
  return simplify({base.num.pow(k), base.den.pow(k)});
}

RatFunc of_atom(const Atom& a) { return {Poly::atom(a), Poly(GaussRational(1))}; }

}  // namespace

Expr RatFunc::to_expr() const {
  if (den.is_constant() && den.leading().second.is_one()) return num.to_expr();
  return Expr::product({num.to_expr(), sym::pow(den.to_expr(), -1)});
}

RatFunc to_ratfunc(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Const: return {Poly(e.value()), Poly(GaussRational(1))};
    case Expr::Kind::X: return of_atom(Atom::x());
    case Expr::Kind::T: return of_atom(Atom::t());
    case Expr::Kind::Jet: return of_atom(Atom::of_jet(e.jet_coord()));
    case Expr::Kind::Param: return of_atom(Atom::of_param(e.param_name()));
    case Expr::Kind::Add: {
      RatFunc acc;
      for (const auto& term : e.operands()) acc = add(acc, to_ratfunc(term), false);
      return acc;
    }
    case Expr::Kind::Mul: {
      RatFunc acc{Poly(GaussRational(1)), Poly(GaussRational(1))};
      for (const auto& f : e.operands()) acc = mul(acc, to_ratfunc(f));
      return acc;
    }
    case Expr::Kind::Pow: return ratfunc_pow(to_ratfunc(e.operands()[0]), e.exponent());
    case Expr::Kind::Func: {
      Expr arg = normalize(e.operands()[0]);
      if (arg.is_zero_constant()) {
        return {Poly(GaussRational(e.func() == Func::Sin ? 0 : 1)), Poly(GaussRational(1))};
      }
      bool is_u = arg.kind() == Expr::Kind::Jet && arg.jet_coord() == JetCoord{0, 0};
      if (is_u && e.func() == Func::Sin) return of_atom(Atom::sin_u());
      if (is_u && e.func() == Func::Cos) return of_atom(Atom::cos_u());
      return of_atom(Atom::opaque(Expr::apply(e.func(), arg)));
    }
  }
  return {};
}

Expr normalize(const Expr& e) { return to_ratfunc(e).to_expr(); }

bool has_opaque_atoms(const Expr& e) {
  if (e.kind() == Expr::Kind::Func) {
    if (e.func() == Func::Exp) return true;
    Expr arg = normalize(e.operands()[0]);
    if (!(arg.kind() == Expr::Kind::Jet && arg.jet_coord() == JetCoord{0, 0})) return true;
  }
  for (const auto& op : e.operands()) {
    if (has_opaque_atoms(op)) return true;
  }
  return false;
}

}  // namespace psslab::sym
