#pragma once
#include <array>
#include <cmath>

#include "ngt/error.hpp"

namespace ngt {

inline constexpr int MAXDIM = 4;
inline constexpr double DIV_GUARD = 1e-12;

// Order-2 jet of a scalar field at a point: value, gradient, Hessian.
// budget counts how many derivative orders are trustworthy (0, 1 or 2).
// Slots above the budget are kept at zero; arithmetic propagates the
// minimum budget of its operands.
struct Jet {
  double v = 0.0;
  std::array<double, MAXDIM> d{};
  std::array<double, MAXDIM * MAXDIM> h{};
  int dim = 0;
  int budget = 2;

  double grad(int i) const { return d[static_cast<std::size_t>(i)]; }
  double hess(int i, int j) const { return h[static_cast<std::size_t>(i * MAXDIM + j)]; }
  double& grad(int i) { return d[static_cast<std::size_t>(i)]; }
  double& hess(int i, int j) { return h[static_cast<std::size_t>(i * MAXDIM + j)]; }

  // Zero every slot the budget does not cover.
  void clamp() {
    if (budget < 2) h.fill(0.0);
    if (budget < 1) d.fill(0.0);
  }
};

inline Jet jet_const(double c, int dim) {
  Jet r;
  r.v = c;
  r.dim = dim;
  r.budget = 2;
  return r;
}

// Jet of the i-th coordinate function at a point with coordinate value x.
inline Jet jet_coord(int i, double x, int dim) {
  Jet r;
  r.v = x;
  r.dim = dim;
  r.budget = 2;
  r.grad(i) = 1.0;
  return r;
}

inline Jet operator-(const Jet& a) {
  Jet r = a;
  r.v = -r.v;
  for (int i = 0; i < a.dim; ++i) {
    r.grad(i) = -r.grad(i);
    for (int j = 0; j < a.dim; ++j) r.hess(i, j) = -r.hess(i, j);
  }
  return r;
}

inline Jet operator+(const Jet& a, const Jet& b) {
  Jet r = a;
  r.budget = std::min(a.budget, b.budget);
  r.v += b.v;
  for (int i = 0; i < a.dim; ++i) {
    r.grad(i) += b.grad(i);
    for (int j = 0; j < a.dim; ++j) r.hess(i, j) += b.hess(i, j);
  }
  r.clamp();
  return r;
}

inline Jet operator-(const Jet& a, const Jet& b) { return a + (-b); }

inline Jet operator*(const Jet& a, const Jet& b) {
  Jet r;
  r.dim = a.dim;
  r.budget = std::min(a.budget, b.budget);
  r.v = a.v * b.v;
  for (int i = 0; i < a.dim; ++i) {
    r.grad(i) = a.grad(i) * b.v + a.v * b.grad(i);
    for (int j = 0; j < a.dim; ++j)
      r.hess(i, j) = a.hess(i, j) * b.v + a.grad(i) * b.grad(j) +
                     a.grad(j) * b.grad(i) + a.v * b.hess(i, j);
  }
  r.clamp();
  return r;
}

inline Jet operator*(double c, const Jet& a) {
  Jet r = a;
  r.v *= c;
  for (int i = 0; i < a.dim; ++i) {
    r.grad(i) *= c;
    for (int j = 0; j < a.dim; ++j) r.hess(i, j) *= c;
  }
  return r;
}

inline Jet operator*(const Jet& a, double c) { return c * a; }
inline Jet operator+(const Jet& a, double c) { Jet r = a; r.v += c; return r; }
inline Jet operator+(double c, const Jet& a) { return a + c; }
inline Jet operator-(const Jet& a, double c) { return a + (-c); }
inline Jet operator-(double c, const Jet& a) { return (-a) + c; }

// Compose a smooth unary function given its value and first two derivatives
// at a.v.
inline Jet jet_chain(const Jet& a, double f0, double f1, double f2) {
  Jet r;
  r.dim = a.dim;
  r.budget = a.budget;
  r.v = f0;
  for (int i = 0; i < a.dim; ++i) {
    r.grad(i) = f1 * a.grad(i);
    for (int j = 0; j < a.dim; ++j)
      r.hess(i, j) = f2 * a.grad(i) * a.grad(j) + f1 * a.hess(i, j);
  }
  r.clamp();
  return r;
}

inline Jet jet_inv(const Jet& a) {
  if (std::abs(a.v) < DIV_GUARD) throw EvalError("division by a value within 1e-12 of zero");
  double iv = 1.0 / a.v;
  return jet_chain(a, iv, -iv * iv, 2.0 * iv * iv * iv);
}

inline Jet operator/(const Jet& a, const Jet& b) { return a * jet_inv(b); }
inline Jet operator/(const Jet& a, double c) {
  if (std::abs(c) < DIV_GUARD) throw EvalError("division by a value within 1e-12 of zero");
  return (1.0 / c) * a;
}
inline Jet operator/(double c, const Jet& a) { return c * jet_inv(a); }

inline Jet jet_sin(const Jet& a) { double s = std::sin(a.v), c = std::cos(a.v); return jet_chain(a, s, c, -s); }
inline Jet jet_cos(const Jet& a) { double s = std::sin(a.v), c = std::cos(a.v); return jet_chain(a, c, -s, -c); }
inline Jet jet_exp(const Jet& a) { double e = std::exp(a.v); return jet_chain(a, e, e, e); }

inline Jet jet_sqrt(const Jet& a) {
  if (a.v < DIV_GUARD) throw EvalError("sqrt of a value within 1e-12 of zero or negative");
  double s = std::sqrt(a.v);
  return jet_chain(a, s, 0.5 / s, -0.25 / (s * a.v));
}

// Integer power by repeated multiplication; exact on polynomial jets.
inline Jet jet_pow_int(const Jet& a, long long n) {
  if (n == 0) return jet_const(1.0, a.dim);
  bool neg = n < 0;
  if (neg) n = -n;
  Jet r = a;
  for (long long k = 1; k < n; ++k) r = r * a;
  return neg ? jet_inv(r) : r;
}

// Partial derivative as a jet: spends one budget order, Hessian unknown.
inline Jet jet_derivative(const Jet& a, int i) {
  if (a.budget < 1) throw EvalError("derivative requested from a jet with no derivative budget");
  Jet r;
  r.dim = a.dim;
  r.budget = a.budget - 1;
  r.v = a.grad(i);
  for (int j = 0; j < a.dim; ++j) r.grad(j) = a.hess(i, j);
  r.clamp();
  return r;
}

}  // namespace ngt
