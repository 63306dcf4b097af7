#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ngt/expr.hpp"

using namespace ngt;

namespace {

double num(const std::string& s) {
  double x[1] = {0.0};
  return eval_value(*parse_expr(s, 1), x, 1);
}

}  // namespace

TEST_CASE("literals, precedence, associativity") {
  CHECK(num("2+3*4") == doctest::Approx(14.0));
  CHECK(num("2+3*4^2") == doctest::Approx(50.0));
  CHECK(num("2^3^2") == doctest::Approx(512.0));  // right-assoc
  CHECK(num("-2^2") == doctest::Approx(-4.0));    // ^ binds tighter than unary minus
  CHECK(num("(2+3)*4") == doctest::Approx(20.0));
  CHECK(num("2*-3") == doctest::Approx(-6.0));
  CHECK(num("10/4/5") == doctest::Approx(0.5));
  CHECK(num("7-2-1") == doctest::Approx(4.0));
  CHECK(num("1.5e2") == doctest::Approx(150.0));
  CHECK(num("3^-1") == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("coordinates and functions") {
  double x[3] = {0.4, -1.1, 2.2};
  auto e = parse_expr("sin(x1)*cos(x2) + exp(0.5*x3)*x1^2 - x2/x3", 3);
  double want = std::sin(0.4) * std::cos(-1.1) + std::exp(0.5 * 2.2) * 0.16 - (-1.1) / 2.2;
  CHECK(eval_value(*e, x, 3) == doctest::Approx(want).epsilon(1e-14));
  Jet j = eval_jet(*e, x, 3);
  CHECK(j.v == doctest::Approx(want).epsilon(1e-14));
  CHECK(j.budget == 2);
}

TEST_CASE("parse errors carry byte offsets") {
  auto offset_of = [](const std::string& s, int dim) -> std::size_t {
    try {
      parse_expr(s, dim);
    } catch (const ParseError& e) {
      return e.offset;
    }
    return static_cast<std::size_t>(-1);
  };
  CHECK(offset_of("x1 ^ x2", 4) == 5);       // non-integer exponent
  CHECK(offset_of("x5 + 1", 4) == 0);        // coordinate out of range
  CHECK(offset_of("1 + foo(x1)", 4) == 4);   // unknown identifier
  CHECK(offset_of("(1+2", 4) == 4);          // missing ')'
  CHECK(offset_of("1 + * 2", 4) == 4);       // unexpected character
  CHECK(offset_of("1 + 2 )", 4) == 6);       // trailing input
  CHECK(offset_of("sin x1", 4) == 4);        // missing '(' after function
  CHECK_THROWS_AS(parse_expr("x1 ^ (1/3)", 4), ParseError);
  CHECK_NOTHROW(parse_expr("x1 ^ (-2)", 4));
  CHECK_NOTHROW(parse_expr("x1 ^ -2", 4));
  CHECK_NOTHROW(parse_expr("x4", 4));
  CHECK_THROWS_AS(parse_expr("x0", 4), ParseError);
}

TEST_CASE("random trees: jet gradients and Hessians match finite differences") {
  std::mt19937_64 rng(7151);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  const int dim = 4;
  int trees = 0;
  for (int t = 0; t < 60; ++t) {
    ExprPtr e = random_expr(rng, dim, 4);
    double x[4];
    for (double& c : x) c = unif(rng);
    Jet j = eval_jet(*e, x, dim);
    ++trees;
    const double h = 1e-5;
    for (int i = 0; i < dim; ++i) {
      double xp[4], xm[4];
      for (int k = 0; k < 4; ++k) xp[k] = xm[k] = x[k];
      xp[i] += h;
      xm[i] -= h;
      double ref = (eval_value(*e, xp, dim) - eval_value(*e, xm, dim)) / (2.0 * h);
      CHECK(std::abs(j.grad(i) - ref) <= 1e-6 * (1.0 + std::abs(j.grad(i)) + std::abs(ref)));
    }
    const double h2 = 2e-4;
    for (int i = 0; i < dim; ++i)
      for (int k = i; k < dim; ++k) {
        double y[4];
        auto at = [&](double di, double dk) {
          for (int m = 0; m < 4; ++m) y[m] = x[m];
          y[i] += di;
          y[k] += dk;
          return eval_value(*e, y, dim);
        };
        double ref = i == k ? (at(h2, 0) - 2.0 * eval_value(*e, x, dim) + at(-h2, 0)) / (h2 * h2)
                            : (at(h2, h2) - at(h2, -h2) - at(-h2, h2) + at(-h2, -h2)) /
                                  (4.0 * h2 * h2);
        CHECK(std::abs(j.hess(i, k) - ref) <=
              2e-5 * (1.0 + std::abs(j.hess(i, k)) + std::abs(ref)));
      }
  }
  CHECK(trees == 60);
}

TEST_CASE("negate wrapper") {
  double x[2] = {0.3, 0.9};
  auto e = parse_expr("sin(x1)+x2", 2);
  auto n = negate_expr(e);
  CHECK(eval_value(*n, x, 2) == doctest::Approx(-(std::sin(0.3) + 0.9)));
}
