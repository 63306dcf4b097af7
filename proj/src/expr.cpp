#include "ngt/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

#include "ngt/error.hpp"

namespace ngt {

namespace {

using Kind = ExprNode::Kind;
using Op = ExprNode::Op;

ExprPtr node_const(double v) {
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::Constant;
  n->value = v;
  return n;
}

ExprPtr node_coord(int i) {
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::Coordinate;
  n->coord = i;
  return n;
}

ExprPtr node_unary(Op op, ExprPtr a) {
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::Unary;
  n->op = op;
  n->a = std::move(a);
  return n;
}

ExprPtr node_binary(Op op, ExprPtr a, ExprPtr b) {
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::Binary;
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

ExprPtr node_power(ExprPtr a, long long p) {
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::Power;
  n->a = std::move(a);
  n->ipow = p;
  return n;
}

struct Parser {
  const std::string& src;
  int dim;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
  }

  bool at_end() {
    skip_ws();
    return pos >= src.size();
  }

  char peek() {
    skip_ws();
    return pos < src.size() ? src[pos] : '\0';
  }

  bool consume(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(std::size_t at, const std::string& msg) { throw ParseError(at, msg); }

  ExprPtr parse_full() {
    ExprPtr e = parse_sum();
    if (!at_end()) fail(pos, "unexpected trailing input");
    return e;
  }

  ExprPtr parse_sum() {
    ExprPtr e = parse_product();
    for (;;) {
      char c = peek();
      if (c == '+') {
        ++pos;
        e = node_binary(Op::Add, e, parse_product());
      } else if (c == '-') {
        ++pos;
        e = node_binary(Op::Sub, e, parse_product());
      } else {
        return e;
      }
    }
  }

  ExprPtr parse_product() {
    ExprPtr e = parse_unary();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++pos;
        e = node_binary(Op::Mul, e, parse_unary());
      } else if (c == '/') {
        ++pos;
        e = node_binary(Op::Div, e, parse_unary());
      } else {
        return e;
      }
    }
  }

  ExprPtr parse_unary() {
    if (peek() == '-') {
      ++pos;
      return node_unary(Op::Neg, parse_unary());
    }
    return parse_power();
  }

  // '^' binds tighter than unary minus and associates to the right; the
  // exponent must fold to an integer constant.
  ExprPtr parse_power() {
    ExprPtr base = parse_primary();
    if (peek() != '^') return base;
    ++pos;
    std::size_t expo_at = pos;
    skip_ws();
    expo_at = pos;
    ExprPtr expo = parse_unary();
    double ev;
    if (!fold_constant(*expo, ev)) fail(expo_at, "non-integer exponent: exponent must be a constant");
    double rounded = std::nearbyint(ev);
    if (std::abs(ev - rounded) > 1e-9 || std::abs(ev) > 1e9)
      fail(expo_at, "non-integer exponent");
    return node_power(std::move(base), static_cast<long long>(rounded));
  }

  static bool fold_constant(const ExprNode& e, double& out) {
    switch (e.kind) {
      case Kind::Constant:
        out = e.value;
        return true;
      case Kind::Coordinate:
        return false;
      case Kind::Unary: {
        double a;
        if (!fold_constant(*e.a, a)) return false;
        switch (e.op) {
          case Op::Neg: out = -a; return true;
          case Op::Sin: out = std::sin(a); return true;
          case Op::Cos: out = std::cos(a); return true;
          case Op::Exp: out = std::exp(a); return true;
          default: return false;
        }
      }
      case Kind::Binary: {
        double a, b;
        if (!fold_constant(*e.a, a) || !fold_constant(*e.b, b)) return false;
        switch (e.op) {
          case Op::Add: out = a + b; return true;
          case Op::Sub: out = a - b; return true;
          case Op::Mul: out = a * b; return true;
          case Op::Div:
            if (b == 0.0) return false;
            out = a / b;
            return true;
          default: return false;
        }
      }
      case Kind::Power: {
        double a;
        if (!fold_constant(*e.a, a)) return false;
        out = std::pow(a, static_cast<double>(e.ipow));
        return true;
      }
    }
    return false;
  }

  ExprPtr parse_primary() {
    skip_ws();
    if (pos >= src.size()) fail(pos, "unexpected end of input");
    char c = src[pos];
    if (c == '(') {
      ++pos;
      ExprPtr e = parse_sum();
      if (!consume(')')) fail(pos, "expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = src.c_str() + pos;
      char* end = nullptr;
      double v = std::strtod(begin, &end);
      if (end == begin) fail(pos, "malformed number");
      pos += static_cast<std::size_t>(end - begin);
      return node_const(v);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos;
      while (pos < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
        ++pos;
      std::string name = src.substr(start, pos - start);
      if (name == "sin" || name == "cos" || name == "exp") {
        if (!consume('(')) fail(pos, "expected '(' after function name");
        ExprPtr arg = parse_sum();
        if (!consume(')')) fail(pos, "expected ')'");
        Op op = name == "sin" ? Op::Sin : name == "cos" ? Op::Cos : Op::Exp;
        return node_unary(op, std::move(arg));
      }
      if (name.size() >= 2 && name[0] == 'x') {
        bool digits = true;
        for (std::size_t k = 1; k < name.size(); ++k)
          if (!std::isdigit(static_cast<unsigned char>(name[k]))) digits = false;
        if (digits) {
          long idx = std::strtol(name.c_str() + 1, nullptr, 10);
          if (idx < 1 || idx > dim)
            fail(start, "coordinate index out of range for dimension " + std::to_string(dim));
          return node_coord(static_cast<int>(idx - 1));
        }
      }
      fail(start, "unknown identifier '" + name + "'");
    }
    fail(pos, std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

ExprPtr parse_expr(const std::string& src, int dim) {
  Parser p{src, dim};
  return p.parse_full();
}

Jet eval_jet(const ExprNode& e, const double* x, int dim) {
  switch (e.kind) {
    case Kind::Constant:
      return jet_const(e.value, dim);
    case Kind::Coordinate:
      return jet_coord(e.coord, x[e.coord], dim);
    case Kind::Unary: {
      Jet a = eval_jet(*e.a, x, dim);
      switch (e.op) {
        case Op::Neg: return -a;
        case Op::Sin: return jet_sin(a);
        case Op::Cos: return jet_cos(a);
        case Op::Exp: return jet_exp(a);
        default: break;
      }
      throw EvalError("corrupt expression node");
    }
    case Kind::Binary: {
      Jet a = eval_jet(*e.a, x, dim);
      Jet b = eval_jet(*e.b, x, dim);
      switch (e.op) {
        case Op::Add: return a + b;
        case Op::Sub: return a - b;
        case Op::Mul: return a * b;
        case Op::Div: return a / b;
        default: break;
      }
      throw EvalError("corrupt expression node");
    }
    case Kind::Power:
      return jet_pow_int(eval_jet(*e.a, x, dim), e.ipow);
  }
  throw EvalError("corrupt expression node");
}

double eval_value(const ExprNode& e, const double* x, int dim) {
  switch (e.kind) {
    case Kind::Constant:
      return e.value;
    case Kind::Coordinate:
      return x[e.coord];
    case Kind::Unary: {
      double a = eval_value(*e.a, x, dim);
      switch (e.op) {
        case Op::Neg: return -a;
        case Op::Sin: return std::sin(a);
        case Op::Cos: return std::cos(a);
        case Op::Exp: return std::exp(a);
        default: break;
      }
      throw EvalError("corrupt expression node");
    }
    case Kind::Binary: {
      double a = eval_value(*e.a, x, dim);
      double b = eval_value(*e.b, x, dim);
      switch (e.op) {
        case Op::Add: return a + b;
        case Op::Sub: return a - b;
        case Op::Mul: return a * b;
        case Op::Div:
          if (std::abs(b) < DIV_GUARD) throw EvalError("division by a value within 1e-12 of zero");
          return a / b;
        default: break;
      }
      throw EvalError("corrupt expression node");
    }
    case Kind::Power: {
      double a = eval_value(*e.a, x, dim);
      if (e.ipow < 0 && std::abs(a) < DIV_GUARD)
        throw EvalError("division by a value within 1e-12 of zero");
      return std::pow(a, static_cast<double>(e.ipow));
    }
  }
  throw EvalError("corrupt expression node");
}

ExprPtr make_const(double c) { return node_const(c); }

ExprPtr negate_expr(ExprPtr e) { return node_unary(Op::Neg, std::move(e)); }

ExprPtr random_expr(std::mt19937_64& rng, int dim, int depth) {
  std::uniform_int_distribution<int> leaf_pick(0, 2);
  std::uniform_real_distribution<double> cval(-2.0, 2.0);
  std::uniform_int_distribution<int> coord_pick(0, dim - 1);
  if (depth <= 0) {
    if (leaf_pick(rng) == 0) return node_const(cval(rng));
    return node_coord(coord_pick(rng));
  }
  std::uniform_int_distribution<int> op_pick(0, 7);
  switch (op_pick(rng)) {
    case 0:
      return node_binary(Op::Add, random_expr(rng, dim, depth - 1), random_expr(rng, dim, depth - 1));
    case 1:
      return node_binary(Op::Sub, random_expr(rng, dim, depth - 1), random_expr(rng, dim, depth - 1));
    case 2:
      return node_binary(Op::Mul, random_expr(rng, dim, depth - 1), random_expr(rng, dim, depth - 1));
    case 3: {
      // Denominator 0.1*sin(sub) + 2 stays in [1.9, 2.1].
      ExprPtr den = node_binary(Op::Add,
                                node_binary(Op::Mul, node_const(0.1),
                                            node_unary(Op::Sin, random_expr(rng, dim, depth - 1))),
                                node_const(2.0));
      return node_binary(Op::Div, random_expr(rng, dim, depth - 1), std::move(den));
    }
    case 4:
      return node_unary(Op::Sin, random_expr(rng, dim, depth - 1));
    case 5:
      return node_unary(Op::Cos, random_expr(rng, dim, depth - 1));
    case 6:
      // exp argument damped to keep magnitudes moderate.
      return node_unary(Op::Exp,
                        node_binary(Op::Mul, node_const(0.3),
                                    node_unary(Op::Sin, random_expr(rng, dim, depth - 1))));
    default: {
      std::uniform_int_distribution<int> pow_pick(0, 3);
      return node_power(random_expr(rng, dim, depth - 1), pow_pick(rng));
    }
  }
}

}  // namespace ngt
