#pragma once
#include "ngt/geometry.hpp"

namespace ngt {

// Calculus of the composite connections built from the endomorphism f:
// the base composite derivative ∇⁰_X = ∇^g_{fX}, the f-connection
// ∇^f = ∇⁰ + K, and its dual ∇̆^f = ∇⁰ - K*. Coefficient arrays Phi0,
// Phi, Phib on the EvalCtx hold exactly these three connections.

// (0,k) covariant derivative, direction slot first, with coefficient
// array Phi; directional part is taken along f ∂i.
JArr nabla_composite(const EvalCtx& ctx, const JArr& S, const JArr& Phi);
JArr nabla0(const EvalCtx& ctx, const JArr& S);
JArr nabla_f(const EvalCtx& ctx, const JArr& S);
JArr nabla_f_dual(const EvalCtx& ctx, const JArr& S);

// Vector-field versions: out(i,k) = (∇_{∂i} Y)^k.
JArr nabla_composite_vec(const EvalCtx& ctx, const JArr& Y, const JArr& Phi);

JArr f_apply(const EvalCtx& ctx, const JArr& X);  // fX as jets
JArr bracket_lie(const JArr& X, const JArr& Y);
JArr bracket_f(const EvalCtx& ctx, const JArr& X, const JArr& Y);
JArr bracket_0(const EvalCtx& ctx, const JArr& X, const JArr& Y);
// 𝔇(X,Y) = [fX,fY] - f[X,Y]_f, the anchor defect field.
JArr anchor_defect_field(const EvalCtx& ctx, const JArr& X, const JArr& Y);

Jet div_f(const EvalCtx& ctx, const JArr& X);
Jet div_g_vec(const EvalCtx& ctx, const JArr& X);

// T(X,Y) as a vector from the contorsion tier.
JArr torsion_of(const EvalCtx& ctx, const JArr& X, const JArr& Y);

JArr d_f(const EvalCtx& ctx, const JArr& om);
JArr d_f_dual(const EvalCtx& ctx, const JArr& om);
JArr d_0(const EvalCtx& ctx, const JArr& om);
JArr delta_f(const EvalCtx& ctx, const JArr& om);
JArr delta_f_dual(const EvalCtx& ctx, const JArr& om);
JArr delta_0(const EvalCtx& ctx, const JArr& om);

// Alternating-sum form of the exterior derivative, assembled from the
// composite bracket (dual bracket when `dual`), on coordinate fields.
DArr d_f_bracket_formula(const EvalCtx& ctx, const JArr& om, bool dual);

// ι_{∂i} ω.
JArr iota_coord(const JArr& om, int i);
// Σ_i ι_{e_i}(K_{e_i} ω) over a g-orthonormal frame; conjugate contorsion
// when `conjugate`.
JArr frame_K_contraction(const EvalCtx& ctx, const JArr& om, bool conjugate);

JArr laplace_f_H(const EvalCtx& ctx, const JArr& om);       // d^f δ̆^f + δ̆^f d^f
JArr laplace_f_H_dual(const EvalCtx& ctx, const JArr& om);  // d^f δ^f + δ^f d^f
JArr laplace_0_H(const EvalCtx& ctx, const JArr& om);       // δ⁰ d⁰ + d⁰ δ⁰
JArr bochner_f(const EvalCtx& ctx, const JArr& om);         // ∇̆^{*f} ∇^f ω

// Function calculus: ψ enters as a budget-2 jet.
JArr grad_f(const EvalCtx& ctx, const Jet& psi);  // (d^f ψ)♯
Jet laplace_f_fn(const EvalCtx& ctx, const Jet& psi);  // div_f (d^f ψ)♯
Jet laplace_0_fn(const EvalCtx& ctx, const Jet& psi);  // -δ⁰ d⁰ ψ

}  // namespace ngt
