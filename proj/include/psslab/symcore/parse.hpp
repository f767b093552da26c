#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "psslab/symcore/expr.hpp"

namespace psslab::sym {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Parses the expression grammar:
///
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := '-' unary | power
///   power   := primary ('^' ['-'] INT | '^' '(' ['-'] INT ')')?
///   primary := NUMBER | IDENT | ('sin' | 'cos' | 'exp') '(' expr ')' | '(' expr ')'
///
/// Identifiers: x t u lambda eta zeta beta a i, and jet coordinates u_[xt]+
/// (letter order is irrelevant). Decimal literals are read exactly.
Expr parse(std::string_view text);

}  // namespace psslab::sym
