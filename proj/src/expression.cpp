#include "homogflow/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <vector>

#include "homogflow/errors.hpp"

namespace homogflow {

struct Expression::Node {
  enum class Op { number, var, neg, add, sub, mul, div, pow, sin, cos, exp, sqrt };
  Op op = Op::number;
  double value = 0.0;
  int var = 0;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make_number(double v) {
  auto n = std::make_shared<Node>();
  n->value = v;
  return n;
}

NodePtr make_op(Node::Op op, NodePtr lhs, NodePtr rhs = nullptr) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

class Parser {
 public:
  Parser(std::string_view text, char prefix) : s_(text), prefix_(prefix) {}

  NodePtr parse() {
    NodePtr root = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected character");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("expression '" + std::string(s_) + "': " + what +
                      " at column " + std::to_string(pos_ + 1));
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+'))
        lhs = make_op(Node::Op::add, lhs, term());
      else if (accept('-'))
        lhs = make_op(Node::Op::sub, lhs, term());
      else
        return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*'))
        lhs = make_op(Node::Op::mul, lhs, unary());
      else if (accept('/'))
        lhs = make_op(Node::Op::div, lhs, unary());
      else
        return lhs;
    }
  }

  NodePtr unary() {
    if (accept('-')) return make_op(Node::Op::neg, unary());
    if (accept('+')) return unary();
    NodePtr base = primary();
    if (accept('^')) return make_op(Node::Op::pow, base, unary());
    return base;
  }

  NodePtr primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail("unexpected character");
  }

  NodePtr number() {
    const char* first = s_.data() + pos_;
    const char* last = s_.data() + s_.size();
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc()) fail("malformed number");
    pos_ += static_cast<std::size_t>(ptr - first);
    return make_number(v);
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    const std::string name(s_.substr(start, pos_ - start));
    if (name == "pi") return make_number(std::numbers::pi);
    if (name.size() == 2 && name[0] == prefix_ && (name[1] == '1' || name[1] == '2')) {
      auto n = std::make_shared<Node>();
      n->op = Node::Op::var;
      n->var = name[1] - '1';
      return n;
    }
    Node::Op op;
    if (name == "sin")
      op = Node::Op::sin;
    else if (name == "cos")
      op = Node::Op::cos;
    else if (name == "exp")
      op = Node::Op::exp;
    else if (name == "sqrt")
      op = Node::Op::sqrt;
    else {
      pos_ = start;
      fail("unknown identifier '" + name + "'");
    }
    if (!accept('(')) fail("expected '(' after " + name);
    NodePtr arg = expr();
    if (!accept(')')) fail("expected ')'");
    return make_op(op, arg);
  }

  std::string_view s_;
  char prefix_;
  std::size_t pos_ = 0;
};

double eval(const Node& n, Vec2 p) {
  switch (n.op) {
    case Node::Op::number: return n.value;
    case Node::Op::var: return p[n.var];
    case Node::Op::neg: return -eval(*n.lhs, p);
    case Node::Op::add: return eval(*n.lhs, p) + eval(*n.rhs, p);
    case Node::Op::sub: return eval(*n.lhs, p) - eval(*n.rhs, p);
    case Node::Op::mul: return eval(*n.lhs, p) * eval(*n.rhs, p);
    case Node::Op::div: return eval(*n.lhs, p) / eval(*n.rhs, p);
    case Node::Op::pow: return std::pow(eval(*n.lhs, p), eval(*n.rhs, p));
    case Node::Op::sin: return std::sin(eval(*n.lhs, p));
    case Node::Op::cos: return std::cos(eval(*n.lhs, p));
    case Node::Op::exp: return std::exp(eval(*n.lhs, p));
    case Node::Op::sqrt: return std::sqrt(eval(*n.lhs, p));
  }
  return 0.0;
}

bool depends_on_point(const Node& n) {
  if (n.op == Node::Op::var) return true;
  return (n.lhs && depends_on_point(*n.lhs)) || (n.rhs && depends_on_point(*n.rhs));
}

std::string format_constant(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Expression Expression::parse(std::string_view text, char variable_prefix) {
  Expression e;
  e.root_ = Parser(text, variable_prefix).parse();
  e.text_ = std::string(text);
  e.prefix_ = variable_prefix;
  return e;
}

Expression Expression::constant(double value) {
  Expression e;
  e.root_ = make_number(value);
  e.text_ = format_constant(value);
  return e;
}

double Expression::operator()(Vec2 p) const { return eval(*root_, p); }

bool Expression::is_constant() const { return !depends_on_point(*root_); }

}  // namespace homogflow
