#pragma once

// Small expression language for user-defined surface profiles:
//   numbers, the variable t, the constant pi, + - * / ^, unary minus,
//   sin(), cos(), exp() and parentheses.
// Expressions are parsed once into a tree that can be evaluated and
// differentiated symbolically.

#include <memory>
#include <string>
#include <string_view>

namespace twolayer {

class Expression {
 public:
  /// Throws ConfigError with the position of the first syntax error.
  static Expression parse(std::string_view text);

  double operator()(double t) const;
  /// Symbolic derivative with respect to t.
  Expression derivative() const;
  /// Fully parenthesised form, mainly for diagnostics.
  std::string to_string() const;

  struct Node;

 private:
  explicit Expression(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
  std::shared_ptr<const Node> root_;
};

}  // namespace twolayer
