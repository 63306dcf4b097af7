#pragma once
#include <memory>
#include <random>
#include <string>

#include "ngt/jet.hpp"

namespace ngt {

// Immutable expression tree over coordinates x1..xn with +, -, *, /, ^,
// unary minus and sin/cos/exp. Shared pointers so fixtures can be copied
// and rewrapped (e.g. sign flips) cheaply.
struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  enum class Kind { Constant, Coordinate, Unary, Binary, Power } kind;
  enum class Op { Neg, Sin, Cos, Exp, Add, Sub, Mul, Div } op = Op::Neg;
  double value = 0.0;  // Constant
  int coord = 0;       // Coordinate, 0-based
  long long ipow = 0;  // Power exponent
  ExprPtr a, b;
};

// Throws ParseError (with byte offset) on malformed input, unknown
// identifiers, out-of-range coordinates, or non-integer exponents.
ExprPtr parse_expr(const std::string& src, int dim);

Jet eval_jet(const ExprNode& e, const double* x, int dim);
double eval_value(const ExprNode& e, const double* x, int dim);

ExprPtr make_const(double c);
ExprPtr negate_expr(ExprPtr e);

// Deterministic random expression tree over dim coordinates. Denominators
// and exp arguments are range-bounded so evaluation stays finite on
// [-2,2]^dim.
ExprPtr random_expr(std::mt19937_64& rng, int dim, int depth);

}  // namespace ngt
