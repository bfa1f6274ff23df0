#include "heismin/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "heismin/errors.hpp"

namespace heismin::expr {

namespace {

const char* const kFunctions[] = {"sin", "cos", "tan", "exp", "log", "sqrt", "abs", "sign"};

Expr num(double v) {
  auto n = std::make_shared<Node>();
  n->op = Op::Num;
  n->value = v;
  return n;
}

Expr var(int i) {
  auto n = std::make_shared<Node>();
  n->op = Op::Var;
  n->var = i;
  return n;
}

bool is_num(const Expr& e, double v) { return e->op == Op::Num && e->value == v; }

Expr unary(Op op, Expr a) {
  if (op == Op::Neg && a->op == Op::Num) return num(-a->value);
  if (op == Op::Neg && a->op == Op::Neg) return a->a;
  auto n = std::make_shared<Node>();
  n->op = op;
  n->a = std::move(a);
  return n;
}

Expr call(const std::string& fn, Expr a) {
  auto n = std::make_shared<Node>();
  n->op = Op::Call;
  n->fn = fn;
  n->a = std::move(a);
  return n;
}

Expr raw_binary(Op op, Expr a, Expr b) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

// Builders with light simplification, used by the differentiator.
Expr add(Expr a, Expr b) {
  if (is_num(a, 0)) return b;
  if (is_num(b, 0)) return a;
  return raw_binary(Op::Add, a, b);
}
Expr sub(Expr a, Expr b) {
  if (is_num(b, 0)) return a;
  if (is_num(a, 0)) return unary(Op::Neg, b);
  return raw_binary(Op::Sub, a, b);
}
Expr mul(Expr a, Expr b) {
  if (is_num(a, 0) || is_num(b, 0)) return num(0);
  if (is_num(a, 1)) return b;
  if (is_num(b, 1)) return a;
  return raw_binary(Op::Mul, a, b);
}
Expr div(Expr a, Expr b) {
  if (is_num(a, 0)) return num(0);
  if (is_num(b, 1)) return a;
  return raw_binary(Op::Div, a, b);
}
Expr pow(Expr a, Expr b) {
  if (is_num(b, 1)) return a;
  if (is_num(b, 0)) return num(1);
  return raw_binary(Op::Pow, a, b);
}

class Parser {
 public:
  Parser(std::string_view s, const std::vector<std::string>& vars) : s_(s), vars_(vars) {}

  Expr run() {
    Expr e = expression();
    skip();
    if (pos_ != s_.size()) fail("end of input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) { throw SyntaxError(pos_, what); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr expression() {
    Expr e = term();
    for (;;) {
      if (eat('+')) e = raw_binary(Op::Add, e, term());
      else if (eat('-')) e = raw_binary(Op::Sub, e, term());
      else return e;
    }
  }

  Expr term() {
    Expr e = factor();
    for (;;) {
      if (eat('*')) e = raw_binary(Op::Mul, e, factor());
      else if (eat('/')) e = raw_binary(Op::Div, e, factor());
      else return e;
    }
  }

  Expr factor() {
    if (eat('-')) return unary(Op::Neg, factor());
    if (eat('+')) return factor();
    Expr base = primary();
    if (eat('^')) return raw_binary(Op::Pow, base, factor());
    return base;
  }

  Expr primary() {
    skip();
    if (pos_ >= s_.size()) fail("operand");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = expression();
      if (!eat(')')) fail("')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail("operand");
  }

  Expr number() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < s_.size() && (s_[p] == '+' || s_[p] == '-')) ++p;
      if (p < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p]))) {
        while (p < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p]))) ++p;
        pos_ = p;
      }
    }
    const std::string text(s_.substr(start, pos_ - start));
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size()) {
      pos_ = start;
      fail("number");
    }
    return num(v);
  }

  Expr identifier() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
      ++pos_;
    }
    const std::string name(s_.substr(start, pos_ - start));
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (vars_[i] == name) return var(static_cast<int>(i));
    }
    if (name == "pi") return num(M_PI);
    if (name == "e") return num(M_E);
    for (const char* f : kFunctions) {
      if (name == f) {
        if (!eat('(')) fail("'(' after " + name);
        Expr arg = expression();
        if (!eat(')')) fail("')'");
        return call(name, arg);
      }
    }
    pos_ = start;
    fail("variable, constant or function name");
  }

  std::string_view s_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

double apply(const std::string& fn, double x) {
  if (fn == "sin") return std::sin(x);
  if (fn == "cos") return std::cos(x);
  if (fn == "tan") return std::tan(x);
  if (fn == "exp") return std::exp(x);
  if (fn == "log") return std::log(x);
  if (fn == "sqrt") return std::sqrt(x);
  if (fn == "abs") return std::abs(x);
  if (fn == "sign") return (x > 0) - (x < 0);
  return NAN;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Expr parse(std::string_view src, const std::vector<std::string>& vars) {
  return Parser(src, vars).run();
}

double eval(const Expr& e, const double* values) {
  switch (e->op) {
    case Op::Num: return e->value;
    case Op::Var: return values[e->var];
    case Op::Neg: return -eval(e->a, values);
    case Op::Add: return eval(e->a, values) + eval(e->b, values);
    case Op::Sub: return eval(e->a, values) - eval(e->b, values);
    case Op::Mul: return eval(e->a, values) * eval(e->b, values);
    case Op::Div: return eval(e->a, values) / eval(e->b, values);
    case Op::Pow: return std::pow(eval(e->a, values), eval(e->b, values));
    case Op::Call: return apply(e->fn, eval(e->a, values));
  }
  return NAN;
}

bool depends_on(const Expr& e, int v) {
  if (!e) return false;
  if (e->op == Op::Var) return e->var == v;
  return depends_on(e->a, v) || depends_on(e->b, v);
}

Expr derivative(const Expr& e, int v) {
  if (!depends_on(e, v)) return num(0);
  const Expr& a = e->a;
  const Expr& b = e->b;
  switch (e->op) {
    case Op::Num: return num(0);
    case Op::Var: return num(1);
    case Op::Neg: return unary(Op::Neg, derivative(a, v));
    case Op::Add: return add(derivative(a, v), derivative(b, v));
    case Op::Sub: return sub(derivative(a, v), derivative(b, v));
    case Op::Mul: return add(mul(derivative(a, v), b), mul(a, derivative(b, v)));
    case Op::Div:
      return div(sub(mul(derivative(a, v), b), mul(a, derivative(b, v))), pow(b, num(2)));
    case Op::Pow:
      if (!depends_on(b, v)) {
        const Expr lower = b->op == Op::Num ? num(b->value - 1) : sub(b, num(1));
        return mul(mul(b, pow(a, lower)), derivative(a, v));
      }
      return mul(e, add(mul(derivative(b, v), call("log", a)),
                        div(mul(b, derivative(a, v)), a)));
    case Op::Call: {
      const Expr da = derivative(a, v);
      Expr outer;
      if (e->fn == "sin") outer = call("cos", a);
      else if (e->fn == "cos") outer = unary(Op::Neg, call("sin", a));
      else if (e->fn == "tan") outer = add(num(1), pow(e, num(2)));
      else if (e->fn == "exp") outer = e;
      else if (e->fn == "log") return div(da, a);
      else if (e->fn == "sqrt") return div(da, mul(num(2), e));
      else if (e->fn == "abs") outer = call("sign", a);
      else outer = num(0);  // sign
      return mul(outer, da);
    }
  }
  return num(0);
}

std::string to_string(const Expr& e, const std::vector<std::string>& vars) {
  switch (e->op) {
    case Op::Num: {
      const std::string s = format_number(e->value);
      return e->value < 0 ? "(" + s + ")" : s;
    }
    case Op::Var: return vars.at(static_cast<std::size_t>(e->var));
    case Op::Neg: return "(-" + to_string(e->a, vars) + ")";
    case Op::Call: return e->fn + "(" + to_string(e->a, vars) + ")";
    default: break;
  }
  const char* sym = e->op == Op::Add   ? "+"
                    : e->op == Op::Sub ? "-"
                    : e->op == Op::Mul ? "*"
                    : e->op == Op::Div ? "/"
                                       : "^";
  return "(" + to_string(e->a, vars) + sym + to_string(e->b, vars) + ")";
}

bool equal(const Expr& a, const Expr& b) {
  if (!a || !b) return !a && !b;
  if (a->op != b->op) return false;
  switch (a->op) {
    case Op::Num: return a->value == b->value;
    case Op::Var: return a->var == b->var;
    case Op::Call: return a->fn == b->fn && equal(a->a, b->a);
    default: return equal(a->a, b->a) && equal(a->b, b->b);
  }
}

YFunction to_yfunction(std::string_view src, const std::string& name, Interval domain) {
  const Expr f = parse(src, {name});
  const Expr df = derivative(f);
  const Expr d2f = derivative(df);
  return {[f](double t) { return eval(f, t); }, [df](double t) { return eval(df, t); },
          [d2f](double t) { return eval(d2f, t); }, domain};
}

}  // namespace heismin::expr
