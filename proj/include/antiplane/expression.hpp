// Boundary-data micro-grammar, evaluated at node coordinates:
//
//   expr   := term (('+' | '-') term)*
//   term   := unary ('*' unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' unary)?          right associative
//   atom   := number | 'x1' | 'x2' | '(' expr ')'
//
// Numbers use the usual decimal/exponent syntax. Whitespace is ignored.
#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace antiplane {

class ExpressionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class Expression {
 public:
  /// Throws ExpressionError with the offending position on malformed input.
  static Expression parse(const std::string& text);

  double operator()(double x1, double x2) const;
  const std::string& text() const { return text_; }

 private:
  enum class Kind { Constant, X1, X2, Add, Sub, Mul, Pow, Neg };
  struct Node {
    Kind kind;
    double value = 0.0;
    int lhs = -1;
    int rhs = -1;
  };
  friend class ExpressionParser;

  double eval(int node, double x1, double x2) const;

  std::string text_;
  std::vector<Node> nodes_;
  int root_ = -1;
};

}  // namespace antiplane
