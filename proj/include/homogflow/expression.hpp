#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "homogflow/linalg.hpp"

namespace homogflow {

/// Small arithmetic language for analytic sources and coefficients.
///
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := ('+' | '-') unary | power
///   power   := primary ('^' unary)?
///   primary := number | 'pi' | var | func '(' expr ')' | '(' expr ')'
///   func    := sin | cos | exp | sqrt
///
/// The two variables are named `<prefix>1` and `<prefix>2` (x1, x2 for
/// macroscopic sources, y1, y2 for cell coefficients) and bind to the
/// components of the evaluation point.
class Expression {
 public:
  struct Node;

  /// Throws ConfigError with the column of the offending character.
  static Expression parse(std::string_view text, char variable_prefix = 'x');
  static Expression constant(double value);

  double operator()(Vec2 p) const;
  const std::string& text() const { return text_; }
  char variable_prefix() const { return prefix_; }
  bool is_constant() const;

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
  char prefix_ = 'x';
};

}  // namespace homogflow
