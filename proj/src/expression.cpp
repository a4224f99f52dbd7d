#include "antiplane/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

namespace antiplane {

class ExpressionParser {
 public:
  ExpressionParser(const std::string& text, Expression& out) : s_(text), out_(out) {}

  int parse() {
    const int root = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return root;
  }

 private:
  using Kind = Expression::Kind;

  [[noreturn]] void fail(const std::string& why) const {
    throw ExpressionError(why + " at position " + std::to_string(pos_) + " in '" + s_ + "'");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  int add(Kind k, int lhs = -1, int rhs = -1, double value = 0.0) {
    out_.nodes_.push_back(Expression::Node{k, value, lhs, rhs});
    return static_cast<int>(out_.nodes_.size()) - 1;
  }

  int expr() {
    int lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = add(Kind::Add, lhs, term());
      } else if (accept('-')) {
        lhs = add(Kind::Sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  int term() {
    int lhs = unary();
    while (accept('*')) lhs = add(Kind::Mul, lhs, unary());
    return lhs;
  }

  int unary() {
    if (accept('-')) return add(Kind::Neg, unary());
    return power();
  }

  int power() {
    const int base = atom();
    if (accept('^')) return add(Kind::Pow, base, unary());
    return base;
  }

  int atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    if (accept('(')) {
      const int inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (s_.compare(pos_, 2, "x1") == 0) {
      pos_ += 2;
      return add(Kind::X1);
    }
    if (s_.compare(pos_, 2, "x2") == 0) {
      pos_ += 2;
      return add(Kind::X2);
    }
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = s_.c_str() + pos_;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) fail("malformed number");
      for (const char* q = begin; q != end; ++q) {
        if (*q == 'x' || *q == 'X' || *q == 'p' || *q == 'P') fail("malformed number");
      }
      pos_ += static_cast<std::size_t>(end - begin);
      return add(Kind::Constant, -1, -1, v);
    }
    fail("unexpected character");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  Expression& out_;
};

Expression Expression::parse(const std::string& text) {
  Expression e;
  e.text_ = text;
  e.root_ = ExpressionParser(e.text_, e).parse();
  return e;
}

double Expression::operator()(double x1, double x2) const { return eval(root_, x1, x2); }

double Expression::eval(int node, double x1, double x2) const {
  const Node& n = nodes_[static_cast<std::size_t>(node)];
  switch (n.kind) {
    case Kind::Constant: return n.value;
    case Kind::X1: return x1;
    case Kind::X2: return x2;
    case Kind::Add: return eval(n.lhs, x1, x2) + eval(n.rhs, x1, x2);
    case Kind::Sub: return eval(n.lhs, x1, x2) - eval(n.rhs, x1, x2);
    case Kind::Mul: return eval(n.lhs, x1, x2) * eval(n.rhs, x1, x2);
    case Kind::Pow: return std::pow(eval(n.lhs, x1, x2), eval(n.rhs, x1, x2));
    case Kind::Neg: return -eval(n.lhs, x1, x2);
  }
  return 0.0;
}

}  // namespace antiplane
