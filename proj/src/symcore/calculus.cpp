#include "psslab/symcore/calculus.hpp"

#include <functional>
#include <map>
#include <optional>

namespace psslab::sym {

Expr total_derivative(const Expr& e, Var v) {
  switch (e.kind()) {
    case Expr::Kind::Const:
    case Expr::Kind::Param: return Expr(0);
    case Expr::Kind::X: return Expr(v == Var::X ? 1 : 0);
    case Expr::Kind::T: return Expr(v == Var::T ? 1 : 0);
    case Expr::Kind::Jet: {
      JetCoord c = e.jet_coord();
      (v == Var::X ? c.nx : c.nt) += 1;
      return Expr::jet(c);
    }
    case Expr::Kind::Add: {
      std::vector<Expr> terms;
      for (const auto& term : e.operands()) {
        Expr d = total_derivative(term, v);
        if (!d.is_zero_constant()) terms.push_back(std::move(d));
      }
      return Expr::sum(std::move(terms));
    }
    case Expr::Kind::Mul: {
      auto ops = e.operands();
      std::vector<Expr> terms;
      for (std::size_t k = 0; k < ops.size(); ++k) {
        Expr d = total_derivative(ops[k], v);
        if (d.is_zero_constant()) continue;
        std::vector<Expr> factors(ops.begin(), ops.end());
        factors[k] = d;
        terms.push_back(Expr::product(std::move(factors)));
      }
      return Expr::sum(std::move(terms));
    }
    case Expr::Kind::Pow: {
      const Expr& base = e.operands()[0];
      Expr d = total_derivative(base, v);
      if (d.is_zero_constant()) return Expr(0);
      int n = e.exponent();
      return Expr::product({Expr(static_cast<long>(n)), pow(base, n - 1), d});
    }
    case Expr::Kind::Func: {
      const Expr& arg = e.operands()[0];
      Expr d = total_derivative(arg, v);
      if (d.is_zero_constant()) return Expr(0);
      switch (e.func()) {
        case Func::Sin: return cos(arg) * d;
        case Func::Cos: return -(sin(arg) * d);
        case Func::Exp: return e * d;
      }
    }
  }
  return Expr(0);
}

Expr total_derivative(const Expr& e, int nx, int nt) {
  Expr out = e;
  for (int k = 0; k < nx; ++k) out = total_derivative(out, Var::X);
  for (int k = 0; k < nt; ++k) out = total_derivative(out, Var::T);
  return out;
}

namespace {

// Rebuilds `e` with leaves mapped through `leaf`; returns e itself when nothing
// changed so shared subtrees stay shared.
Expr map_leaves(const Expr& e, const std::function<std::optional<Expr>(const Expr&)>& leaf) {
  switch (e.kind()) {
    case Expr::Kind::Const:
    case Expr::Kind::X:
    case Expr::Kind::T:
    case Expr::Kind::Jet:
    case Expr::Kind::Param: {
      auto r = leaf(e);
      return r ? *r : e;
    }
    default: break;
  }
  std::vector<Expr> ops;
  bool changed = false;
  for (const auto& op : e.operands()) {
    ops.push_back(map_leaves(op, leaf));
    changed = changed || !(ops.back() == op);
  }
  if (!changed) return e;
  switch (e.kind()) {
    case Expr::Kind::Add: return Expr::sum(std::move(ops));
    case Expr::Kind::Mul: return Expr::product(std::move(ops));
    case Expr::Kind::Pow: return pow(ops[0], e.exponent());
    case Expr::Kind::Func: return Expr::apply(e.func(), ops[0]);
    default: return e;
  }
}

bool mentions(const Expr& e, JetCoord target, bool derivatives) {
  for (const auto& j : free_jets(e)) {
    if (j == target || (derivatives && j.is_derivative_of(target))) return true;
  }
  return false;
}

}  // namespace

Expr substitute(const Expr& e, JetCoord target, const Expr& replacement, bool prolong) {
  if (mentions(replacement, target, prolong)) {
    throw SubstitutionCycle("replacement for " + target.name() + " mentions " +
                            (prolong ? "it or one of its derivatives" : "it"));
  }
  std::map<JetCoord, Expr> cache;
  auto leaf = [&](const Expr& l) -> std::optional<Expr> {
    if (l.kind() != Expr::Kind::Jet) return std::nullopt;
    JetCoord c = l.jet_coord();
    if (c == target) return replacement;
    if (!prolong || !c.is_derivative_of(target)) return std::nullopt;
    auto it = cache.find(c);
    if (it == cache.end()) {
      Expr d = total_derivative(replacement, c.nx - target.nx, c.nt - target.nt);
      it = cache.emplace(c, std::move(d)).first;
    }
    return it->second;
  };
  constexpr int kMaxRounds = 64;
  Expr out = e;
  for (int round = 0; round < kMaxRounds; ++round) {
    if (!mentions(out, target, prolong)) return out;
    out = map_leaves(out, leaf);
  }
  throw SubstitutionCycle("substitution for " + target.name() + " did not reach a fixed point");
}

Expr substitute_param(const Expr& e, const std::string& name, const Expr& replacement) {
  return map_leaves(e, [&](const Expr& l) -> std::optional<Expr> {
    if (l.kind() == Expr::Kind::Param && l.param_name() == name) return replacement;
    return std::nullopt;
  });
}

Expr restrict_to_section(const Expr& e, const Expr& section) {
  if (!free_jets(section).empty()) {
    throw std::invalid_argument("section must not contain jet coordinates");
  }
  std::map<JetCoord, Expr> cache;
  return map_leaves(e, [&](const Expr& l) -> std::optional<Expr> {
    if (l.kind() != Expr::Kind::Jet) return std::nullopt;
    JetCoord c = l.jet_coord();
    auto it = cache.find(c);
    if (it == cache.end()) it = cache.emplace(c, total_derivative(section, c.nx, c.nt)).first;
    return it->second;
  });
}

}  // namespace psslab::sym
