#include "psslab/symcore/parse.hpp"

#include <array>
#include <cctype>

namespace psslab::sym {

namespace {

constexpr std::array<std::string_view, 5> kParams = {"lambda", "eta", "zeta", "beta", "a"};

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Expr run() {
    Expr e = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  Expr expr() {
    std::vector<Expr> terms{term()};
    for (;;) {
      if (accept('+')) {
        terms.push_back(term());
      } else if (accept('-')) {
        terms.push_back(-term());
      } else {
        break;
      }
    }
    return Expr::sum(std::move(terms));
  }

  Expr term() {
    Expr acc = unary();
    for (;;) {
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        std::size_t at = pos_;
        Expr d = unary();
        if (d.is_zero_constant()) throw ParseError("division by zero", at);
        acc = acc / d;
      } else {
        return acc;
      }
    }
  }

  Expr unary() {
    if (accept('-')) return -unary();
    return power();
  }

  int integer_exponent() {
    bool paren = accept('(');
    bool neg = accept('-');
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer exponent");
    if (pos_ - start > 6) fail("exponent too large");
    int n = std::stoi(std::string(s_.substr(start, pos_ - start)));
    if (paren) expect(')');
    return neg ? -n : n;
  }

  Expr power() {
    Expr base = primary();
    if (accept('^')) {
      std::size_t at = pos_;
      int n = integer_exponent();
      if (n < 0 && base.is_zero_constant()) throw ParseError("division by zero", at);
      return pow(base, n);
    }
    return base;
  }

  Expr number() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    std::string digits(s_.substr(start, pos_ - start));
    std::string frac_digits;
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      std::size_t fstart = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      frac_digits = std::string(s_.substr(fstart, pos_ - fstart));
    }
    if (digits.empty() && frac_digits.empty()) fail("malformed number");
    mpz_class num(digits.empty() ? "0" : digits + frac_digits, 10);
    mpz_class den = 1;
    for (std::size_t k = 0; k < frac_digits.size(); ++k) den *= 10;
    return Expr(GaussRational(mpq_class(num, den)));
  }

  Expr primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail(std::string("unexpected '") + c + "'");
  }

  Expr identifier() {
    std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
      ++pos_;
    }
    std::string_view id = s_.substr(start, pos_ - start);
    if (id == "sin" || id == "cos" || id == "exp") {
      expect('(');
      Expr arg = expr();
      expect(')');
      Func f = id == "sin" ? Func::Sin : (id == "cos" ? Func::Cos : Func::Exp);
      return Expr::apply(f, arg);
    }
    if (id == "x") return Expr::x();
    if (id == "t") return Expr::t();
    if (id == "i") return Expr::imag_unit();
    if (id == "u") return Expr::u();
    if (id.size() >= 3 && id.substr(0, 2) == "u_") {
      for (char ch : id.substr(2)) {
        if (ch != 'x' && ch != 't') {
          throw ParseError("unknown identifier '" + std::string(id) + "'", start);
        }
      }
      return Expr::jet(id);
    }
    for (auto p : kParams) {
      if (id == p) return Expr::param(std::string(p));
    }
    throw ParseError("unknown identifier '" + std::string(id) + "'", start);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text) { return Parser(text).run(); }

}  // namespace psslab::sym
