#include "twolayer/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "twolayer/errors.hpp"
#include "twolayer/types.hpp"

namespace twolayer {

enum class Op { constant, var, add, sub, mul, div, pow, neg, sin, cos, exp };

struct Expression::Node {
  Op op = Op::constant;
  double value = 0.0;
  std::shared_ptr<const Node> a;
  std::shared_ptr<const Node> b;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;

NodePtr make(Op op, NodePtr a = nullptr, NodePtr b = nullptr, double value = 0.0) {
  auto n = std::make_shared<Expression::Node>();
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  n->value = value;
  return n;
}

NodePtr constant(double v) { return make(Op::constant, nullptr, nullptr, v); }
bool is_const(const NodePtr& n, double v) { return n->op == Op::constant && n->value == v; }
bool depends_on_t(const NodePtr& n) {
  if (!n) return false;
  if (n->op == Op::var) return true;
  return depends_on_t(n->a) || depends_on_t(n->b);
}

double eval(const Expression::Node& n, double t) {
  switch (n.op) {
    case Op::constant: return n.value;
    case Op::var: return t;
    case Op::add: return eval(*n.a, t) + eval(*n.b, t);
    case Op::sub: return eval(*n.a, t) - eval(*n.b, t);
    case Op::mul: return eval(*n.a, t) * eval(*n.b, t);
    case Op::div: return eval(*n.a, t) / eval(*n.b, t);
    case Op::pow: {
      const double e = eval(*n.b, t);
      const double base = eval(*n.a, t);
      if (e == std::round(e) && std::abs(e) <= 64) return std::pow(base, static_cast<int>(e));
      return std::pow(base, e);
    }
    case Op::neg: return -eval(*n.a, t);
    case Op::sin: return std::sin(eval(*n.a, t));
    case Op::cos: return std::cos(eval(*n.a, t));
    case Op::exp: return std::exp(eval(*n.a, t));
  }
  return 0.0;
}

// Builders with light constant folding so derivatives stay readable.
NodePtr add(NodePtr a, NodePtr b) {
  if (is_const(a, 0.0)) return b;
  if (is_const(b, 0.0)) return a;
  if (a->op == Op::constant && b->op == Op::constant) return constant(a->value + b->value);
  return make(Op::add, a, b);
}
NodePtr sub(NodePtr a, NodePtr b) {
  if (is_const(b, 0.0)) return a;
  if (a->op == Op::constant && b->op == Op::constant) return constant(a->value - b->value);
  if (is_const(a, 0.0)) return make(Op::neg, b);
  return make(Op::sub, a, b);
}
NodePtr mul(NodePtr a, NodePtr b) {
  if (is_const(a, 0.0) || is_const(b, 0.0)) return constant(0.0);
  if (is_const(a, 1.0)) return b;
  if (is_const(b, 1.0)) return a;
  if (a->op == Op::constant && b->op == Op::constant) return constant(a->value * b->value);
  return make(Op::mul, a, b);
}
NodePtr divide(NodePtr a, NodePtr b) {
  if (is_const(a, 0.0)) return constant(0.0);
  if (is_const(b, 1.0)) return a;
  return make(Op::div, a, b);
}
NodePtr neg(NodePtr a) {
  if (a->op == Op::constant) return constant(-a->value);
  return make(Op::neg, a);
}

NodePtr diff(const NodePtr& n) {
  switch (n->op) {
    case Op::constant: return constant(0.0);
    case Op::var: return constant(1.0);
    case Op::add: return add(diff(n->a), diff(n->b));
    case Op::sub: return sub(diff(n->a), diff(n->b));
    case Op::mul: return add(mul(diff(n->a), n->b), mul(n->a, diff(n->b)));
    case Op::div:
      return divide(sub(mul(diff(n->a), n->b), mul(n->a, diff(n->b))), make(Op::pow, n->b, constant(2.0)));
    case Op::pow: {
      // Exponents are t-free (checked by the parser).
      const NodePtr& e = n->b;
      const NodePtr lowered = e->op == Op::constant ? constant(e->value - 1.0) : sub(e, constant(1.0));
      return mul(mul(e, make(Op::pow, n->a, lowered)), diff(n->a));
    }
    case Op::neg: return neg(diff(n->a));
    case Op::sin: return mul(make(Op::cos, n->a), diff(n->a));
    case Op::cos: return neg(mul(make(Op::sin, n->a), diff(n->a)));
    case Op::exp: return mul(n, diff(n->a));
  }
  return constant(0.0);
}

void print(const Expression::Node& n, std::ostringstream& os) {
  auto bin = [&](const char* sym) {
    os << '(';
    print(*n.a, os);
    os << ' ' << sym << ' ';
    print(*n.b, os);
    os << ')';
  };
  auto fn = [&](const char* name) {
    os << name << '(';
    print(*n.a, os);
    os << ')';
  };
  switch (n.op) {
    case Op::constant: os << n.value; break;
    case Op::var: os << 't'; break;
    case Op::add: bin("+"); break;
    case Op::sub: bin("-"); break;
    case Op::mul: bin("*"); break;
    case Op::div: bin("/"); break;
    case Op::pow: bin("^"); break;
    case Op::neg: fn("-"); break;
    case Op::sin: fn("sin"); break;
    case Op::cos: fn("cos"); break;
    case Op::exp: fn("exp"); break;
  }
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  NodePtr parse() {
    NodePtr n = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return n;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError("surface expression: " + msg + " at position " + std::to_string(pos_) + " in \"" +
                      std::string(s_) + "\"");
  }
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

  NodePtr expr() {
    NodePtr n = term();
    for (;;) {
      if (eat('+')) n = make(Op::add, n, term());
      else if (eat('-')) n = make(Op::sub, n, term());
      else return n;
    }
  }
  NodePtr term() {
    NodePtr n = unary();
    for (;;) {
      if (eat('*')) n = make(Op::mul, n, unary());
      else if (eat('/')) n = make(Op::div, n, unary());
      else return n;
    }
  }
  NodePtr unary() {
    if (eat('-')) return make(Op::neg, unary());
    if (eat('+')) return unary();
    return power();
  }
  NodePtr power() {
    NodePtr base = primary();
    if (eat('^')) {
      NodePtr e = unary();
      if (depends_on_t(e)) fail("exponents must not depend on t");
      return make(Op::pow, base, e);
    }
    return base;
  }
  NodePtr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const std::string rest(s_.substr(pos_));
      char* end = nullptr;
      const double v = std::strtod(rest.c_str(), &end);
      if (end == rest.c_str()) fail("malformed number");
      pos_ += static_cast<std::size_t>(end - rest.c_str());
      return constant(v);
    }
    if (eat('(')) {
      NodePtr n = expr();
      if (!eat(')')) fail("expected ')'");
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      const std::string_view word = s_.substr(start, pos_ - start);
      if (word == "t") return make(Op::var);
      if (word == "pi") return constant(kPi);
      Op op;
      if (word == "sin") op = Op::sin;
      else if (word == "cos") op = Op::cos;
      else if (word == "exp") op = Op::exp;
      else {
        pos_ = start;
        fail("unknown identifier '" + std::string(word) + "'");
      }
      if (!eat('(')) fail("expected '(' after " + std::string(word));
      NodePtr arg = expr();
      if (!eat(')')) fail("expected ')'");
      return make(op, arg);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }
};

}  // namespace

Expression Expression::parse(std::string_view text) { return Expression(Parser(text).parse()); }

double Expression::operator()(double t) const { return eval(*root_, t); }

Expression Expression::derivative() const { return Expression(diff(root_)); }

std::string Expression::to_string() const {
  std::ostringstream os;
  os.precision(17);
  print(*root_, os);
  return os.str();
}

}  // namespace twolayer
