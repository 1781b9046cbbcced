#pragma once

#include <cctype>
#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "onofri/fields.hpp"

namespace onofri {

/// Forward-mode dual number carrying a value and its gradient.
struct Dual {
  double v = 0.0;
  Vec g;

  static Dual constant(double c, int n) { return {c, Vec::zero(n)}; }
  static Dual variable(double x, int n, int axis) {
    Dual d{x, Vec::zero(n)};
    d.g[axis] = 1.0;
    return d;
  }
};

inline Dual operator+(const Dual& a, const Dual& b) { return {a.v + b.v, a.g + b.g}; }
inline Dual operator-(const Dual& a, const Dual& b) { return {a.v - b.v, a.g - b.g}; }
inline Dual operator-(const Dual& a) { return {-a.v, -a.g}; }
inline Dual operator*(const Dual& a, const Dual& b) {
  return {a.v * b.v, b.v * a.g + a.v * b.g};
}
inline Dual operator/(const Dual& a, const Dual& b) {
  const double inv = 1.0 / b.v;
  return {a.v * inv, inv * a.g - (a.v * inv * inv) * b.g};
}
inline Dual exp(const Dual& a) {
  const double e = std::exp(a.v);
  return {e, e * a.g};
}
inline Dual log(const Dual& a) {
  if (!(a.v > 0.0)) throw std::domain_error("expression: log of a non-positive value");
  return {std::log(a.v), (1.0 / a.v) * a.g};
}
inline Dual sqrt(const Dual& a) {
  if (a.v < 0.0) throw std::domain_error("expression: sqrt of a negative value");
  const double s = std::sqrt(a.v);
  return {s, (s > 0.0 ? 0.5 / s : 0.0) * a.g};
}
inline Dual abs(const Dual& a) {
  return {std::fabs(a.v), (a.v >= 0.0 ? 1.0 : -1.0) * a.g};
}
inline Dual pow(const Dual& a, const Dual& b) {
  bool const_exponent = true;
  for (int i = 0; i < b.g.size(); ++i)
    if (b.g[i] != 0.0) const_exponent = false;
  if (const_exponent) {
    const double f = std::pow(a.v, b.v);
    const double df = (a.v == 0.0) ? 0.0 : b.v * std::pow(a.v, b.v - 1.0);
    return {f, df * a.g};
  }
  if (!(a.v > 0.0))
    throw std::domain_error("expression: pow with varying exponent needs a positive base");
  const double f = std::pow(a.v, b.v);
  return {f, f * (b.v / a.v) * a.g + f * std::log(a.v) * b.g};
}

namespace expr_detail {

enum class Kind { number, variable, radius, unary_minus, add, sub, mul, div, pow_op, call };

struct Node {
  Kind kind;
  double number = 0.0;
  int axis = 0;          // variable index
  std::string fn;        // call name
  std::vector<std::unique_ptr<Node>> kids;
};

using NodePtr = std::unique_ptr<Node>;

class Parser {
 public:
  Parser(std::string src, int dim) : src_(std::move(src)), dim_(dim) {}

  NodePtr parse() {
    NodePtr e = expression();
    skip_ws();
    if (pos_ != src_.size()) fail("trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("expression parse error at position " +
                                std::to_string(pos_) + ": " + why);
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  NodePtr expression() {
    NodePtr lhs = term();
    while (true) {
      if (eat('+'))
        lhs = binary(Kind::add, std::move(lhs), term());
      else if (eat('-'))
        lhs = binary(Kind::sub, std::move(lhs), term());
      else
        return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    while (true) {
      if (eat('*'))
        lhs = binary(Kind::mul, std::move(lhs), unary());
      else if (eat('/'))
        lhs = binary(Kind::div, std::move(lhs), unary());
      else
        return lhs;
    }
  }

  NodePtr unary() {
    if (eat('-')) {
      auto n = std::make_unique<Node>();
      n->kind = Kind::unary_minus;
      n->kids.push_back(unary());
      return n;
    }
    (void)eat('+');
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (eat('^')) return binary(Kind::pow_op, std::move(base), unary());
    return base;
  }

  static NodePtr binary(Kind k, NodePtr a, NodePtr b) {
    auto n = std::make_unique<Node>();
    n->kind = k;
    n->kids.push_back(std::move(a));
    n->kids.push_back(std::move(b));
    return n;
  }

  NodePtr primary() {
    skip_ws();
    if (pos_ >= src_.size()) fail("unexpected end of input");
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (c == '(') {
      ++pos_;
      NodePtr e = expression();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail(std::string("unexpected character '") + c + "'");
  }

  NodePtr number() {
    std::size_t end = pos_;
    while (end < src_.size() &&
           (std::isdigit(static_cast<unsigned char>(src_[end])) || src_[end] == '.' ||
            src_[end] == 'e' || src_[end] == 'E' ||
            ((src_[end] == '+' || src_[end] == '-') && end > pos_ &&
             (src_[end - 1] == 'e' || src_[end - 1] == 'E'))))
      ++end;
    auto n = std::make_unique<Node>();
    n->kind = Kind::number;
    try {
      n->number = std::stod(src_.substr(pos_, end - pos_));
    } catch (...) {
      fail("bad numeric literal");
    }
    pos_ = end;
    return n;
  }

  NodePtr identifier() {
    std::size_t end = pos_;
    while (end < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[end])) ||
                                 src_[end] == '_'))
      ++end;
    const std::string name = src_.substr(pos_, end - pos_);
    pos_ = end;

    if (name == "pi") {
      auto n = std::make_unique<Node>();
      n->kind = Kind::number;
      n->number = kPi;
      return n;
    }
    if (name == "r") {
      auto n = std::make_unique<Node>();
      n->kind = Kind::radius;
      return n;
    }
    if (name == "t") {
      auto n = std::make_unique<Node>();
      n->kind = Kind::variable;
      n->axis = dim_ - 1;
      return n;
    }
    if (name.size() >= 2 && name[0] == 'x') {
      bool digits = true;
      for (std::size_t i = 1; i < name.size(); ++i)
        digits = digits && std::isdigit(static_cast<unsigned char>(name[i]));
      if (digits) {
        const int axis = std::stoi(name.substr(1)) - 1;
        if (axis < 0 || axis >= dim_) fail("coordinate " + name + " outside dimension");
        auto n = std::make_unique<Node>();
        n->kind = Kind::variable;
        n->axis = axis;
        return n;
      }
    }
    // function call
    if (!eat('(')) fail("unknown identifier '" + name + "'");
    auto n = std::make_unique<Node>();
    n->kind = Kind::call;
    n->fn = name;
    n->kids.push_back(expression());
    while (eat(',')) n->kids.push_back(expression());
    if (!eat(')')) fail("expected ')'");
    const std::size_t arity = (name == "pow") ? 2 : 1;
    if (name != "exp" && name != "log" && name != "sqrt" && name != "abs" && name != "pow")
      fail("unknown function '" + name + "'");
    if (n->kids.size() != arity) fail("wrong argument count for '" + name + "'");
    return n;
  }

  std::string src_;
  int dim_;
  std::size_t pos_ = 0;
};

template <class T>
struct Scalars;

template <>
struct Scalars<double> {
  static double constant(double c, int) { return c; }
};
template <>
struct Scalars<Dual> {
  static Dual constant(double c, int n) { return Dual::constant(c, n); }
};

using std::abs;
using std::exp;
using std::log;
using std::pow;
using std::sqrt;

template <class T>
T eval_node(const Node& node, const std::vector<T>& vars, const T& radius, int dim) {
  switch (node.kind) {
    case Kind::number:
      return Scalars<T>::constant(node.number, dim);
    case Kind::variable:
      return vars[node.axis];
    case Kind::radius:
      return radius;
    case Kind::unary_minus:
      return -eval_node(*node.kids[0], vars, radius, dim);
    case Kind::add:
      return eval_node(*node.kids[0], vars, radius, dim) +
             eval_node(*node.kids[1], vars, radius, dim);
    case Kind::sub:
      return eval_node(*node.kids[0], vars, radius, dim) -
             eval_node(*node.kids[1], vars, radius, dim);
    case Kind::mul:
      return eval_node(*node.kids[0], vars, radius, dim) *
             eval_node(*node.kids[1], vars, radius, dim);
    case Kind::div:
      return eval_node(*node.kids[0], vars, radius, dim) /
             eval_node(*node.kids[1], vars, radius, dim);
    case Kind::pow_op:
      return pow(eval_node(*node.kids[0], vars, radius, dim),
                 eval_node(*node.kids[1], vars, radius, dim));
    case Kind::call: {
      T a = eval_node(*node.kids[0], vars, radius, dim);
      if (node.fn == "exp") return exp(a);
      if (node.fn == "log") return log(a);
      if (node.fn == "sqrt") return sqrt(a);
      if (node.fn == "abs") return abs(a);
      return pow(a, eval_node(*node.kids[1], vars, radius, dim));
    }
  }
  throw std::logic_error("expression: unreachable node kind");
}

}  // namespace expr_detail

/// Compiled expression over the coordinates x1..xn (t aliases xn, r = |x|),
/// with the gradient synthesized by forward-mode differentiation of the tree.
/// Grammar: + - * / ^, exp, log, sqrt, abs, pow(a,b), numbers, pi.
class Expression {
 public:
  Expression(const std::string& source, int dim)
      : dim_(dim), root_(expr_detail::Parser(source, dim).parse()) {}

  int dim() const { return dim_; }

  double value(const Vec& x) const {
    std::vector<double> vars(dim_);
    for (int i = 0; i < dim_; ++i) vars[i] = x[i];
    return expr_detail::eval_node<double>(*root_, vars, norm(x), dim_);
  }

  Vec gradient(const Vec& x) const {
    std::vector<Dual> vars;
    vars.reserve(dim_);
    for (int i = 0; i < dim_; ++i) vars.push_back(Dual::variable(x[i], dim_, i));
    Dual radius{norm(x), Vec::zero(dim_)};
    if (radius.v > 0.0) radius.g = (1.0 / radius.v) * x;
    return expr_detail::eval_node<Dual>(*root_, vars, radius, dim_).g;
  }

 private:
  int dim_;
  std::shared_ptr<const expr_detail::Node> root_;
};

/// Field backed by an expression; decay traits must be declared by the caller
/// or remain unknown (reports then flag tails as assumed).
inline ScalarField expression_field(int n, const std::string& source) {
  require_dimension(n);
  auto e = std::make_shared<Expression>(source, n);
  ScalarField f;
  f.dim = n;
  f.value = [e](const Vec& x) { return e->value(x); };
  f.grad = [e](const Vec& x) { return e->gradient(x); };
  return f;
}

}  // namespace onofri
