#pragma once
#include <Eigen/Dense>

#include "ngt/chart.hpp"
#include "ngt/expr.hpp"
#include "ngt/tensor.hpp"

namespace ngt {

// Metric and fundamental two-form given as coordinate expressions on a
// torus chart.
struct GeometryInput {
  TorusChart chart;
  std::vector<ExprPtr> g_exprs;  // dim*dim, symmetric
  std::vector<ExprPtr> F_exprs;  // dim*dim, antisymmetric

  int dim() const { return chart.dim; }
};

// Everything the pointwise operators need at one point. Jets carry explicit
// derivative budgets: metric data enters with budget 2, Christoffel-level
// data with budget 1, curvature-level data as plain values.
struct EvalCtx {
  int dim = 0;
  double x[MAXDIM] = {0, 0, 0, 0};

  JArr g, F, ginv, f;  // rank 2; f(k,j) is the endomorphism g^{ki} F_{ij}
  Jet sqrt_detg;
  JArr Gamma;  // Gamma(k,i,j) = Γ^k_{ij}, budget 1

  Eigen::MatrixXd gm, ginvm, fm, frame;  // value caches; frame columns are g-orthonormal

  // Contorsion tier (filled by the connection model).
  bool has_contorsion = false;
  JArr K, Kstar, T;             // rank 3, upper first slot: K(k,i,j) = K^k_{ij}
  JArr K3, Kstar3, T3;          // rank 3 fully lowered: K3(i,j,l) = g(K_{∂i}∂j, ∂l)
  JArr Gammat, Phi, Phib, Phi0; // rank 3 connection coefficients, budget 1
  JArr Evec, Estarvec;          // rank 1 trace vectors (upper components)

  // Curvature tier (filled on sampled points only).
  bool has_curvature = false;
  DArr Rg13, Rg4;       // Levi-Civita curvature
  DArr Rf13, Rf4;       // f-connection curvature
  DArr Rb13, Rb4;       // dual f-connection curvature
  DArr R013, R04;       // composite ∇^0 curvature
  DArr Theta13, Theta4; // contorsion curvature correction (torsion-form variant)
  DArr Dfrak;           // Dfrak(k,i,j): anchor defect of (∂i,∂j)
  DArr Ricf, Ric0, Ricg;
};

// Cheap tier: metric, two-form, inverse, endomorphism, Christoffels.
EvalCtx eval_geometry(const GeometryInput& gi, const double* x);

// Levi-Civita curvature tensors and classical Ricci.
void fill_riemann(EvalCtx& ctx);

Jet det_jets(const JArr& M, int dim);

// Covariant derivative of a (0,k) jet tensor; the new first slot is the
// direction. Output budget drops by one.
JArr nabla_g(const EvalCtx& ctx, const JArr& S);

// dω assembled from a covariant-derivative array (direction-first):
// out(i0..ik) = Σ_a (-1)^a nab(i_a, i0..î_a..ik).
JArr exterior_from_covariant(const JArr& nab);

// Codifferential-style trace: -g^{ab} nab(a, b, ...).
JArr neg_trace_first_two(const EvalCtx& ctx, const JArr& nab);

JArr d_g(const EvalCtx& ctx, const JArr& omega);
JArr delta_g(const EvalCtx& ctx, const JArr& omega);
JArr hodge_laplacian_g(const EvalCtx& ctx, const JArr& omega);
JArr connection_laplacian_g(const EvalCtx& ctx, const JArr& omega);
// Classical Weitzenböck curvature operator on (0,k) values.
DArr weitz_curv_g(const EvalCtx& ctx, const DArr& omega);

DArr values_of(const JArr& A);

}  // namespace ngt
