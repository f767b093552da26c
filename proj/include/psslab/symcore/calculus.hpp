#pragma once

#include <stdexcept>
#include <string>

#include "psslab/symcore/expr.hpp"

namespace psslab::sym {

/// Total derivative D_v on the jet space:
/// D_v f = df/dv + sum_J u_{J,v} df/du_J. Parameters are constants.
Expr total_derivative(const Expr& e, Var v);

/// Applies D_x^nx D_t^nt.
Expr total_derivative(const Expr& e, int nx, int nt);

class SubstitutionCycle : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Replaces `target` by `replacement`. With `prolong`, every derivative
/// coordinate target_{J} is replaced by D_J(replacement); the rewrite is
/// repeated until no such coordinate remains.
///
/// Throws SubstitutionCycle if the replacement contains the target (or, when
/// prolonging, a derivative of it), or if the rewrite does not settle.
Expr substitute(const Expr& e, JetCoord target, const Expr& replacement, bool prolong);

/// Replaces every occurrence of parameter `name`.
Expr substitute_param(const Expr& e, const std::string& name, const Expr& replacement);

/// Restricts to a jet section: every jet u_{x^a t^b} becomes d^a/dx^a d^b/dt^b
/// of `section`, which must be a function of x and t only.
Expr restrict_to_section(const Expr& e, const Expr& section);

}  // namespace psslab::sym
