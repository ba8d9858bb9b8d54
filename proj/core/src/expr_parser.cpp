#include "diffeocalc/expr_parser.hpp"

#include <cctype>

namespace diffeocalc {

namespace {

// expr    := term { ('+' | '-') term }
// term    := factor { '*' factor }
// factor  := { '-' } primary [ '^' nat ]
// primary := rational | ident | '(' expr ')' | 'exp' '(' expr ')'
class Parser {
 public:
  Parser(const std::string& text, const std::set<std::string>* allowed)
      : text_(text), allowed_(allowed) {}

  ScalarExpr parse() {
    ScalarExpr e = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error("expression error at position " + std::to_string(pos_) + " in '" +
                text_ + "': " + msg);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  ScalarExpr parse_expr() {
    ScalarExpr acc = parse_term();
    while (true) {
      if (eat('+'))
        acc = acc + parse_term();
      else if (eat('-'))
        acc = acc - parse_term();
      else
        return acc;
    }
  }

  ScalarExpr parse_term() {
    ScalarExpr acc = parse_factor();
    while (eat('*')) acc = acc * parse_factor();
    return acc;
  }

  ScalarExpr parse_factor() {
    bool negate = false;
    while (eat('-')) negate = !negate;
    ScalarExpr base = parse_primary();
    if (eat('^')) {
      skip_ws();
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        fail("'^' requires a nonnegative integer exponent");
      base = base.pow(static_cast<unsigned>(std::stoul(read_digits())));
    }
    return negate ? -base : base;
  }

  ScalarExpr parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("expected a value");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return parse_rational_literal();
    if (c == '(') {
      ++pos_;
      ScalarExpr e = parse_expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::string name = read_identifier();
      if (name == "exp") {
        if (!eat('(')) fail("expected '(' after exp");
        ScalarExpr arg = parse_expr();
        if (!eat(')')) fail("expected ')'");
        if (!arg.is_polynomial()) fail("exp argument must be exp-free");
        return ScalarExpr::exp_of(arg);
      }
      if (allowed_ && !allowed_->count(name)) fail("unknown coordinate '" + name + "'");
      return ScalarExpr::variable(name);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  ScalarExpr parse_rational_literal() {
    const std::string num = read_digits();
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '/') {
      ++pos_;
      skip_ws();
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        fail("expected denominator digits after '/'");
      const std::string den = read_digits();
      return ScalarExpr(parse_rational(num + "/" + den));
    }
    return ScalarExpr(parse_rational(num));
  }

  std::string read_digits() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    return text_.substr(start, pos_ - start);
  }

  std::string read_identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    return text_.substr(start, pos_ - start);
  }

  const std::string& text_;
  const std::set<std::string>* allowed_;
  std::size_t pos_ = 0;
};

}  // namespace

ScalarExpr parse_expr(const std::string& text, const std::set<std::string>* allowed) {
  return Parser(text, allowed).parse();
}

}  // namespace diffeocalc
