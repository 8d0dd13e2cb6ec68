#include "ahlab/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

namespace ah {

enum class NodeKind { literal, variable, add, sub, mul, div, neg, pow, call };
enum class Fn { exp, sin, cos, sqrt };

struct Expression::Node {
  NodeKind kind;
  double value = 0.0;             // literal
  int var = -1;                   // variable index
  std::string name;               // variable display name
  Fn fn = Fn::exp;                // call
  int exponent = 0;               // pow
  std::shared_ptr<const Node> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;

[[noreturn]] void parse_fail(const std::string& what, size_t pos) {
  fail(ErrorKind::parse, what + " at position " + std::to_string(pos));
}

struct Token {
  enum Kind { number, ident, op, lparen, rparen, end } kind;
  double num = 0.0;
  std::string text;
  char ch = 0;
  size_t pos = 0;
};

std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* start = s.c_str() + i;
      char* endp = nullptr;
      const double v = std::strtod(start, &endp);
      if (endp == start) parse_fail("invalid number", i);
      out.push_back({Token::number, v, {}, 0, i});
      i += endp - start;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
        ++j;
      out.push_back({Token::ident, 0.0, s.substr(i, j - i), 0, i});
      i = j;
      continue;
    }
    if (c == '(') {
      out.push_back({Token::lparen, 0.0, {}, c, i});
    } else if (c == ')') {
      out.push_back({Token::rparen, 0.0, {}, c, i});
    } else if (c == '+' || c == '-' || c == '*' || c == '/' || c == '^') {
      out.push_back({Token::op, 0.0, {}, c, i});
    } else {
      parse_fail(std::string("unexpected character '") + c + "'", i);
    }
    ++i;
  }
  out.push_back({Token::end, 0.0, {}, 0, s.size()});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::span<const std::string> variables)
      : toks_(std::move(tokens)), vars_(variables) {}

  NodePtr run() {
    NodePtr e = expr();
    if (cur().kind != Token::end) parse_fail("trailing input", cur().pos);
    return e;
  }

 private:
  const Token& cur() const { return toks_[k_]; }
  void advance() { ++k_; }

  bool is_op(char c) const { return cur().kind == Token::op && cur().ch == c; }

  NodePtr make(NodeKind kind, NodePtr a, NodePtr b = nullptr) {
    auto n = std::make_shared<Expression::Node>();
    n->kind = kind;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    while (is_op('+') || is_op('-')) {
      const char c = cur().ch;
      advance();
      lhs = make(c == '+' ? NodeKind::add : NodeKind::sub, lhs, term());
    }
    return lhs;
  }

  NodePtr term() {
    NodePtr lhs = unary();
    while (is_op('*') || is_op('/')) {
      const char c = cur().ch;
      advance();
      lhs = make(c == '*' ? NodeKind::mul : NodeKind::div, lhs, unary());
    }
    return lhs;
  }

  NodePtr unary() {
    if (is_op('-')) {
      const size_t pos = cur().pos;
      advance();
      (void)pos;
      return make(NodeKind::neg, unary());
    }
    return power();
  }

  NodePtr power() {
    NodePtr base = atom();
    if (is_op('^')) {
      const size_t pos = cur().pos;
      advance();
      int sign = 1;
      if (is_op('-')) {
        sign = -1;
        advance();
      }
      if (cur().kind != Token::number)
        parse_fail("exponent must be an integer literal", pos);
      const double v = cur().num;
      const int k = static_cast<int>(v);
      if (static_cast<double>(k) != v)
        parse_fail("exponent must be an integer", cur().pos);
      advance();
      auto n = std::make_shared<Expression::Node>();
      n->kind = NodeKind::pow;
      n->a = base;
      n->exponent = sign * k;
      return n;
    }
    return base;
  }

  NodePtr atom() {
    if (cur().kind == Token::number) {
      auto n = std::make_shared<Expression::Node>();
      n->kind = NodeKind::literal;
      n->value = cur().num;
      advance();
      return n;
    }
    if (cur().kind == Token::ident) {
      const std::string name = cur().text;
      const size_t pos = cur().pos;
      advance();
      if (cur().kind == Token::lparen) {
        Fn fn;
        if (name == "exp")
          fn = Fn::exp;
        else if (name == "sin")
          fn = Fn::sin;
        else if (name == "cos")
          fn = Fn::cos;
        else if (name == "sqrt")
          fn = Fn::sqrt;
        else
          parse_fail("unknown function '" + name + "'", pos);
        advance();
        NodePtr arg = expr();
        if (cur().kind != Token::rparen) parse_fail("expected ')'", cur().pos);
        advance();
        auto n = std::make_shared<Expression::Node>();
        n->kind = NodeKind::call;
        n->fn = fn;
        n->a = arg;
        return n;
      }
      for (size_t v = 0; v < vars_.size(); ++v) {
        if (vars_[v] == name) {
          auto n = std::make_shared<Expression::Node>();
          n->kind = NodeKind::variable;
          n->var = static_cast<int>(v);
          n->name = name;
          return n;
        }
      }
      parse_fail("unknown identifier '" + name + "'", pos);
    }
    if (cur().kind == Token::lparen) {
      advance();
      NodePtr inner = expr();
      if (cur().kind != Token::rparen) parse_fail("expected ')'", cur().pos);
      advance();
      return inner;
    }
    parse_fail("expected a value", cur().pos);
  }

  std::vector<Token> toks_;
  std::span<const std::string> vars_;
  size_t k_ = 0;
};

double eval_node(const Expression::Node& n, std::span<const double> p) {
  switch (n.kind) {
    case NodeKind::literal: return n.value;
    case NodeKind::variable: return p[n.var];
    case NodeKind::add: return eval_node(*n.a, p) + eval_node(*n.b, p);
    case NodeKind::sub: return eval_node(*n.a, p) - eval_node(*n.b, p);
    case NodeKind::mul: return eval_node(*n.a, p) * eval_node(*n.b, p);
    case NodeKind::div: return eval_node(*n.a, p) / eval_node(*n.b, p);
    case NodeKind::neg: return -eval_node(*n.a, p);
    case NodeKind::pow: return std::pow(eval_node(*n.a, p), n.exponent);
    case NodeKind::call: {
      const double v = eval_node(*n.a, p);
      switch (n.fn) {
        case Fn::exp: return std::exp(v);
        case Fn::sin: return std::sin(v);
        case Fn::cos: return std::cos(v);
        case Fn::sqrt: return std::sqrt(v);
      }
    }
  }
  fail(ErrorKind::internal_consistency, "unreachable expression node");
}

Jet eval_node_jet(const Expression::Node& n, const BasePoint& base, int dim,
                  int order) {
  switch (n.kind) {
    case NodeKind::literal: return Jet::constant(dim, order, base, n.value);
    case NodeKind::variable: return Jet::coordinate(dim, order, base, n.var);
    case NodeKind::add:
      return eval_node_jet(*n.a, base, dim, order) + eval_node_jet(*n.b, base, dim, order);
    case NodeKind::sub:
      return eval_node_jet(*n.a, base, dim, order) - eval_node_jet(*n.b, base, dim, order);
    case NodeKind::mul:
      return eval_node_jet(*n.a, base, dim, order) * eval_node_jet(*n.b, base, dim, order);
    case NodeKind::div:
      return eval_node_jet(*n.a, base, dim, order) / eval_node_jet(*n.b, base, dim, order);
    case NodeKind::neg: return -eval_node_jet(*n.a, base, dim, order);
    case NodeKind::pow:
      return eval_node_jet(*n.a, base, dim, order).pow_int(n.exponent);
    case NodeKind::call: {
      Jet v = eval_node_jet(*n.a, base, dim, order);
      switch (n.fn) {
        case Fn::exp: return exp(v);
        case Fn::sin: return sin(v);
        case Fn::cos: return cos(v);
        case Fn::sqrt: return sqrt(v);
      }
    }
  }
  fail(ErrorKind::internal_consistency, "unreachable expression node");
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void print_node(const Expression::Node& n, std::string& out) {
  switch (n.kind) {
    case NodeKind::literal:
      if (n.value < 0) {
        out += "(";
        out += fmt_double(n.value);
        out += ")";
      } else {
        out += fmt_double(n.value);
      }
      return;
    case NodeKind::variable: out += n.name; return;
    case NodeKind::add:
    case NodeKind::sub:
    case NodeKind::mul:
    case NodeKind::div: {
      out += "(";
      print_node(*n.a, out);
      out += (n.kind == NodeKind::add)   ? " + "
             : (n.kind == NodeKind::sub) ? " - "
             : (n.kind == NodeKind::mul) ? " * "
                                         : " / ";
      print_node(*n.b, out);
      out += ")";
      return;
    }
    case NodeKind::neg:
      out += "(-";
      print_node(*n.a, out);
      out += ")";
      return;
    case NodeKind::pow:
      out += "(";
      print_node(*n.a, out);
      out += "^";
      if (n.exponent < 0) {
        out += "-";
        out += std::to_string(-n.exponent);
      } else {
        out += std::to_string(n.exponent);
      }
      out += ")";
      return;
    case NodeKind::call:
      switch (n.fn) {
        case Fn::exp: out += "exp("; break;
        case Fn::sin: out += "sin("; break;
        case Fn::cos: out += "cos("; break;
        case Fn::sqrt: out += "sqrt("; break;
      }
      print_node(*n.a, out);
      out += ")";
      return;
  }
}

NodePtr remap_node(const Expression::Node& n, std::span<const int> index_map,
                   std::span<const std::string> names) {
  auto m = std::make_shared<Expression::Node>(n);
  if (n.kind == NodeKind::variable) {
    m->var = index_map[n.var];
    m->name = names[m->var];
  }
  if (n.a) m->a = remap_node(*n.a, index_map, names);
  if (n.b) m->b = remap_node(*n.b, index_map, names);
  return m;
}

NodePtr binary(NodeKind kind, NodePtr a, NodePtr b) {
  auto n = std::make_shared<Expression::Node>();
  n->kind = kind;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

}  // namespace

Expression Expression::parse(const std::string& text,
                             std::span<const std::string> variables) {
  return Expression(Parser(tokenize(text), variables).run());
}

Expression Expression::literal(double v) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::literal;
  n->value = v;
  return Expression(n);
}

Expression Expression::variable(int index, const std::string& name) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::variable;
  n->var = index;
  n->name = name;
  return Expression(n);
}

double Expression::eval(std::span<const double> point) const {
  return eval_node(*root_, point);
}

Jet Expression::eval_jet(const BasePoint& base, int order) const {
  return eval_node_jet(*root_, base, static_cast<int>(base->size()), order);
}

std::string Expression::str() const {
  std::string out;
  print_node(*root_, out);
  return out;
}

Expression Expression::remap(std::span<const int> index_map,
                             std::span<const std::string> names) const {
  return Expression(remap_node(*root_, index_map, names));
}

Expression Expression::operator+(const Expression& o) const {
  return Expression(binary(NodeKind::add, root_, o.root_));
}

Expression Expression::operator-(const Expression& o) const {
  return Expression(binary(NodeKind::sub, root_, o.root_));
}

Expression Expression::operator*(const Expression& o) const {
  return Expression(binary(NodeKind::mul, root_, o.root_));
}

Expression Expression::operator-() const {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::neg;
  n->a = root_;
  return Expression(n);
}

}  // namespace ah
