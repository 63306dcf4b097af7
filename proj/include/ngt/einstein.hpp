#pragma once
#include <Eigen/Dense>

#include "ngt/geometry.hpp"

namespace ngt {

enum class ContorsionMode {
  Zero,
  ExplicitK,
  ExplicitT,
  SkewFromDF,
  NearlyKahler,
  ConstantNullspace,
};

// How the contorsion tensor K (equivalently the torsion) of the full
// connection ∇ = ∇^g + K is produced.
struct ContorsionModel {
  ContorsionMode mode = ContorsionMode::Zero;
  std::vector<ExprPtr> K_exprs;  // dim^3 lowered components K(i,j,l)
  std::vector<ExprPtr> T_exprs;  // dim^3 lowered components T(i,j,l)
  DArr K_const;                  // solved constant components (lowered)
};

// Fill the contorsion tier of an evaluated point: K and derived tensors,
// the full connection, and the three composite connection coefficient
// arrays built from f.
void fill_contorsion(EvalCtx& ctx, const ContorsionModel& model);

// Pointwise residuals of the structural conditions the checks gate on.
struct ResidualSample {
  double metric_compat = 0.0;    // (∇_X G)(Y,Z) + G(T(X,Y),Z), G = g + F
  double g_parallel = 0.0;       // (∇_X g)(Y,Z) for the full connection
  double contorsion_skew = 0.0;  // K(X,Y,Z) + K(X,Z,Y)
  double commutator_skew = 0.0;  // g([K_X,K_Y]Z,W) + g([K_X,K_Y]W,Z)
  double anchor_defect = 0.0;    // [fX,fY] - f[X,Y]_f on coordinate fields
  double divergence_stat = 0.0;  // div_g f - (E*)♭
};
ResidualSample connection_residuals(const EvalCtx& ctx);

// Constant-contorsion solve on a flat chart with constant data: the
// compatibility condition G(Y, K_X Z) + G(K_Y X, Z) = 0 is a homogeneous
// linear system in the lowered components.
struct NullspaceResult {
  DArr K;                  // chosen element, zero when the skew nullspace is trivial
  int full_dim = 0;        // nullspace dimension with no symmetry restriction
  int skew_dim = 0;        // dimension within the last-two-slots-skew subspace
  double smin_skew = 0.0;  // smallest singular value over the skew subspace
};
NullspaceResult solve_constant_nullspace(const Eigen::MatrixXd& g, const Eigen::MatrixXd& F);

// System matrix rows evaluated on a given constant K (lowered components);
// used to cross-check the solver against the pointwise residual.
double constant_compat_residual(const Eigen::MatrixXd& g, const Eigen::MatrixXd& F,
                                const DArr& K);

}  // namespace ngt
