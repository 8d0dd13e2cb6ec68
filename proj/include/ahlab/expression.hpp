#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ahlab/jet.hpp"

namespace ah {

/// Immutable arithmetic expression over named real coordinates. Supports
/// + - * / with left association, integer ^, unary minus, and exp, sin,
/// cos, sqrt. Evaluates either to a plain double or to a Jet; the jet's
/// constant term always equals the double evaluation.
class Expression {
 public:
  Expression() = default;

  static Expression parse(const std::string& text,
                          std::span<const std::string> variables);
  static Expression literal(double v);
  static Expression variable(int index, const std::string& name);

  bool valid() const { return root_ != nullptr; }

  double eval(std::span<const double> point) const;
  Jet eval_jet(const BasePoint& base, int order) const;

  /// Round-trippable text: parse(str()) evaluates identically.
  std::string str() const;

  /// Rewrites variable references (index and display name). `index_map[i]`
  /// is the new index of old variable i; `names` are the new display names
  /// indexed by new index.
  Expression remap(std::span<const int> index_map,
                   std::span<const std::string> names) const;

  Expression operator+(const Expression& o) const;
  Expression operator-(const Expression& o) const;
  Expression operator*(const Expression& o) const;
  Expression operator-() const;

  struct Node;  // AST node, defined in expression.cpp

 private:
  explicit Expression(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
  std::shared_ptr<const Node> root_;
};

}  // namespace ah
