#pragma once

#include <array>
#include <memory>
#include <string>

namespace diracedge {

// Scalar function of phase-space coordinates given as a formula string.
//
// Grammar (case-sensitive):
//   expr    := term (('+'|'-') term)*
//   term    := factor (('*'|'/') factor)*
//   factor  := ('-'|'+') factor | power
//   power   := atom ('^' factor)?          (right associative)
//   atom    := number | variable | func '(' expr ')' | '(' expr ')'
//   func    := 'tanh' | 'sin' | 'cos' | 'exp'
//   variable:= 'x1' | 'x2' | 'xi1' | 'xi2'
// Exponents may be any expression but are evaluated with std::pow.
class Expression {
 public:
  // Throws invalid_input with a character position on malformed input.
  static Expression parse(const std::string& text);

  // Coordinates ordered (x1, x2, xi1, xi2); unused slots may be anything.
  double operator()(const std::array<double, 4>& z) const;
  double operator()(double x1, double x2, double xi1 = 0.0,
                    double xi2 = 0.0) const {
    return (*this)(std::array<double, 4>{x1, x2, xi1, xi2});
  }

  const std::string& text() const { return text_; }

  struct Node;

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
};

}  // namespace diracedge
