#pragma once

// Small arithmetic expression language used for command-line inputs:
// numbers, named variables, + - * / ^, unary minus, parentheses,
// sin cos tan exp log sqrt abs sign, and the constants pi and e.

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "heismin/functions.hpp"

namespace heismin::expr {

struct Node;
using Expr = std::shared_ptr<const Node>;

enum class Op { Num, Var, Neg, Add, Sub, Mul, Div, Pow, Call };

struct Node {
  Op op = Op::Num;
  double value = 0.0;
  int var = -1;
  std::string fn;
  Expr a;
  Expr b;
};

/// Parse `src` with the given variable names. Throws SyntaxError.
Expr parse(std::string_view src, const std::vector<std::string>& vars);

double eval(const Expr& e, const double* values);
inline double eval(const Expr& e, double x) { return eval(e, &x); }

/// Symbolic partial derivative with respect to variable `var`.
Expr derivative(const Expr& e, int var = 0);

/// Fully parenthesized text that parses back to the same tree.
std::string to_string(const Expr& e, const std::vector<std::string>& vars);

bool equal(const Expr& a, const Expr& b);
bool depends_on(const Expr& e, int var);

/// One-variable expression as a YFunction with symbolic derivatives.
YFunction to_yfunction(std::string_view src, const std::string& var, Interval domain = {});

}  // namespace heismin::expr
