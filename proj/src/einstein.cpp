#include "ngt/einstein.hpp"

#include <cmath>

#include "ngt/error.hpp"

namespace ngt {

namespace {

// dF as a (0,3) jet array: (dF)(X,Y,Z) = ∂_X F(Y,Z) - ∂_Y F(X,Z) + ∂_Z F(X,Y).
JArr two_form_exterior(const EvalCtx& ctx) {
  const int dim = ctx.dim;
  JArr out(dim, 3, jet_const(0.0, dim));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int l = 0; l < dim; ++l)
        out(i, j, l) = jet_derivative(ctx.F(j, l), i) - jet_derivative(ctx.F(i, l), j) +
                       jet_derivative(ctx.F(i, j), l);
  return out;
}

}  // namespace

void fill_contorsion(EvalCtx& ctx, const ContorsionModel& model) {
  const int dim = ctx.dim;
  Jet zero = jet_const(0.0, dim);
  JArr K3(dim, 3, zero);

  switch (model.mode) {
    case ContorsionMode::Zero:
      break;
    case ContorsionMode::ExplicitK:
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
          for (int l = 0; l < dim; ++l)
            K3(i, j, l) =
                eval_jet(*model.K_exprs[static_cast<std::size_t>((i * dim + j) * dim + l)],
                         ctx.x, dim);
      break;
    case ContorsionMode::ConstantNullspace:
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
          for (int l = 0; l < dim; ++l) K3(i, j, l) = jet_const(model.K_const(i, j, l), dim);
      break;
    case ContorsionMode::ExplicitT:
    case ContorsionMode::SkewFromDF:
    case ContorsionMode::NearlyKahler: {
      JArr T3(dim, 3, zero);
      if (model.mode == ContorsionMode::ExplicitT) {
        for (int i = 0; i < dim; ++i)
          for (int j = 0; j < dim; ++j)
            for (int l = 0; l < dim; ++l)
              T3(i, j, l) =
                  eval_jet(*model.T_exprs[static_cast<std::size_t>((i * dim + j) * dim + l)],
                           ctx.x, dim);
      } else {
        JArr dF = two_form_exterior(ctx);
        for (std::size_t idx = 0; idx < T3.v.size(); ++idx)
          T3.v[idx] = (-1.0 / 3.0) * dF.v[idx];
      }
      if (model.mode == ContorsionMode::NearlyKahler) {
        // K = T/2
        for (std::size_t idx = 0; idx < K3.v.size(); ++idx) K3.v[idx] = 0.5 * T3.v[idx];
      } else if (model.mode == ContorsionMode::ExplicitT) {
        // 2K(X,Y,Z) = T(X,Y,Z) + T(X,Z,fY) + T(Y,Z,fX)
        for (int i = 0; i < dim; ++i)
          for (int j = 0; j < dim; ++j)
            for (int l = 0; l < dim; ++l) {
              Jet s = T3(i, j, l);
              for (int m = 0; m < dim; ++m)
                s = s + T3(i, l, m) * ctx.f(m, j) + T3(j, l, m) * ctx.f(m, i);
              K3(i, j, l) = 0.5 * s;
            }
      } else {
        // K_X Y = ½ (T(fX, Y) - T(X, fY) + T(X, Y)), assembled on lowered
        // components: K(X,Y,Z) = ½ (T(fX,Y,Z) - T(X,fY,Z) + T(X,Y,Z)).
        for (int i = 0; i < dim; ++i)
          for (int j = 0; j < dim; ++j)
            for (int l = 0; l < dim; ++l) {
              Jet s = T3(i, j, l);
              for (int m = 0; m < dim; ++m)
                s = s + ctx.f(m, i) * T3(m, j, l) - ctx.f(m, j) * T3(i, m, l);
              K3(i, j, l) = 0.5 * s;
            }
      }
      break;
    }
  }

  ctx.K3 = K3;
  ctx.K = JArr(dim, 3, zero);
  ctx.Kstar3 = JArr(dim, 3, zero);
  ctx.Kstar = JArr(dim, 3, zero);
  ctx.T3 = JArr(dim, 3, zero);
  ctx.T = JArr(dim, 3, zero);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int l = 0; l < dim; ++l) {
        // g(K*_X Y, Z) = g(Y, K_X Z)
        ctx.Kstar3(i, j, l) = K3(i, l, j);
        ctx.T3(i, j, l) = K3(i, j, l) - K3(j, i, l);
      }
  for (int k = 0; k < dim; ++k)
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        Jet sk = zero, ss = zero, st = zero;
        for (int l = 0; l < dim; ++l) {
          sk = sk + ctx.ginv(k, l) * K3(i, j, l);
          ss = ss + ctx.ginv(k, l) * ctx.Kstar3(i, j, l);
          st = st + ctx.ginv(k, l) * ctx.T3(i, j, l);
        }
        ctx.K(k, i, j) = sk;
        ctx.Kstar(k, i, j) = ss;
        ctx.T(k, i, j) = st;
      }

  // Trace vectors: E = Σ_i K_{e_i} e_i and its conjugate, as g^{ab}
  // contractions of the first two (respectively outer two) slots.
  ctx.Evec = JArr(dim, 1, zero);
  ctx.Estarvec = JArr(dim, 1, zero);
  for (int k = 0; k < dim; ++k) {
    Jet se = zero, ses = zero;
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) {
        se = se + ctx.ginv(a, b) * ctx.K(k, a, b);
        ses = ses + ctx.ginv(a, b) * ctx.Kstar(k, a, b);
      }
    ctx.Evec(k) = se;
    ctx.Estarvec(k) = ses;
  }

  ctx.Gammat = JArr(dim, 3, zero);
  ctx.Phi0 = JArr(dim, 3, zero);
  ctx.Phi = JArr(dim, 3, zero);
  ctx.Phib = JArr(dim, 3, zero);
  for (int k = 0; k < dim; ++k)
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        ctx.Gammat(k, i, j) = ctx.Gamma(k, i, j) + ctx.K(k, i, j);
        Jet s = zero;
        for (int m = 0; m < dim; ++m) s = s + ctx.f(m, i) * ctx.Gamma(k, m, j);
        ctx.Phi0(k, i, j) = s;
        ctx.Phi(k, i, j) = s + ctx.K(k, i, j);
        ctx.Phib(k, i, j) = s - ctx.Kstar(k, i, j);
      }
  ctx.has_contorsion = true;
}

ResidualSample connection_residuals(const EvalCtx& ctx) {
  const int dim = ctx.dim;
  ResidualSample r;

  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k) {
        double dg = ctx.g(j, k).grad(i);
        double dG = dg + ctx.F(j, k).grad(i);
        double sg = dg, sG = dG;
        for (int m = 0; m < dim; ++m) {
          double Gt = ctx.Gammat(m, i, j).v;
          double Gt2 = ctx.Gammat(m, i, k).v;
          sg -= Gt * ctx.g(m, k).v + Gt2 * ctx.g(j, m).v;
          double Gmk = ctx.gm(m, k) + ctx.F(m, k).v;
          double Gjm = ctx.gm(j, m) + ctx.F(j, m).v;
          sG -= Gt * Gmk + Gt2 * Gjm;
          sG += ctx.T(m, i, j).v * Gmk;
        }
        r.g_parallel = std::max(r.g_parallel, std::abs(sg));
        r.metric_compat = std::max(r.metric_compat, std::abs(sG));

        double skew = ctx.K3(i, j, k).v + ctx.K3(i, k, j).v;
        r.contorsion_skew = std::max(r.contorsion_skew, std::abs(skew));
      }

  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      // [K_{∂i}, K_{∂j}] as an endomorphism, then lowered.
      for (int k = 0; k < dim; ++k)
        for (int w = 0; w < dim; ++w) {
          double b_kw = 0.0, b_wk = 0.0;
          for (int l = 0; l < dim; ++l) {
            double comm_lk = 0.0, comm_lw = 0.0;
            for (int m = 0; m < dim; ++m) {
              comm_lk += ctx.K(l, i, m).v * ctx.K(m, j, k).v -
                         ctx.K(l, j, m).v * ctx.K(m, i, k).v;
              comm_lw += ctx.K(l, i, m).v * ctx.K(m, j, w).v -
                         ctx.K(l, j, m).v * ctx.K(m, i, w).v;
            }
            b_kw += ctx.gm(l, w) * comm_lk;
            b_wk += ctx.gm(l, k) * comm_lw;
          }
          r.commutator_skew = std::max(r.commutator_skew, std::abs(b_kw + b_wk));
        }

      for (int k = 0; k < dim; ++k) {
        double lie = 0.0;
        for (int m = 0; m < dim; ++m)
          lie += ctx.f(m, i).v * ctx.f(k, j).grad(m) - ctx.f(m, j).v * ctx.f(k, i).grad(m);
        double fbr = 0.0;
        for (int p = 0; p < dim; ++p)
          fbr += ctx.fm(k, p) * (ctx.Phi(p, i, j).v - ctx.Phi(p, j, i).v);
        r.anchor_defect = std::max(r.anchor_defect, std::abs(lie - fbr));
      }
    }

  for (int l = 0; l < dim; ++l) {
    // (div_g f)(∂l) = Σ_a (∇^g_{∂a} f)^a_l
    double div = 0.0;
    for (int a = 0; a < dim; ++a) {
      div += ctx.f(a, l).grad(a);
      for (int m = 0; m < dim; ++m)
        div += ctx.Gamma(a, a, m).v * ctx.fm(m, l) - ctx.Gamma(m, a, l).v * ctx.fm(a, m);
    }
    double estar = 0.0;
    for (int k = 0; k < dim; ++k) estar += ctx.gm(l, k) * ctx.Estarvec(k).v;
    r.divergence_stat = std::max(r.divergence_stat, std::abs(div - estar));
  }
  return r;
}

NullspaceResult solve_constant_nullspace(const Eigen::MatrixXd& g, const Eigen::MatrixXd& F) {
  const int dim = static_cast<int>(g.rows());
  const int n3 = dim * dim * dim;
  Eigen::MatrixXd ginv = g.inverse();
  Eigen::MatrixXd f = ginv * F;  // f^l_y = g^{lw} F_{wy}
  auto idx = [dim](int a, int b, int c) { return (a * dim + b) * dim + c; };

  // Row (x,y,z): K[x,z,y] + K[y,x,z] - f^l_y K[x,z,l] + f^l_z K[y,x,l] = 0.
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n3, n3);
  for (int x = 0; x < dim; ++x)
    for (int y = 0; y < dim; ++y)
      for (int z = 0; z < dim; ++z) {
        int row = idx(x, y, z);
        A(row, idx(x, z, y)) += 1.0;
        A(row, idx(y, x, z)) += 1.0;
        for (int l = 0; l < dim; ++l) {
          A(row, idx(x, z, l)) -= f(l, y);
          A(row, idx(y, x, l)) += f(l, z);
        }
      }

  NullspaceResult res;
  res.K = DArr(dim, 3);

  Eigen::JacobiSVD<Eigen::MatrixXd> svd_full(A);
  Eigen::VectorXd sv = svd_full.singularValues();
  double smax = sv.size() > 0 ? sv(0) : 0.0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) <= 1e-10 * std::max(1.0, smax)) ++res.full_dim;

  // Basis of the skew subspace: for c1 < c2 and any a, K[a,c1,c2] = 1,
  // K[a,c2,c1] = -1.
  int nskew = dim * dim * (dim - 1) / 2;
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n3, nskew);
  int col = 0;
  for (int a = 0; a < dim; ++a)
    for (int c1 = 0; c1 < dim; ++c1)
      for (int c2 = c1 + 1; c2 < dim; ++c2) {
        B(idx(a, c1, c2), col) = 1.0;
        B(idx(a, c2, c1), col) = -1.0;
        ++col;
      }
  Eigen::MatrixXd As = A * B;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(As, Eigen::ComputeThinV);
  Eigen::VectorXd s = svd.singularValues();
  double smax_s = s.size() > 0 ? s(0) : 0.0;
  res.smin_skew = s.size() > 0 ? s(s.size() - 1) : 0.0;
  int null_start = -1;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) <= 1e-10 * std::max(1.0, smax_s)) {
      ++res.skew_dim;
      if (null_start < 0) null_start = i;
    }

  if (res.skew_dim > 0) {
    // Deterministic representative: last right singular vector, scaled so
    // the largest-magnitude component is 0.25 with its first nonzero entry
    // positive.
    Eigen::VectorXd v = B * svd.matrixV().col(s.size() - 1);
    double mx = v.cwiseAbs().maxCoeff();
    if (mx > 0) v *= 0.25 / mx;
    for (int i = 0; i < v.size(); ++i) {
      if (std::abs(v(i)) > 1e-12) {
        if (v(i) < 0) v = -v;
        break;
      }
    }
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b)
        for (int c = 0; c < dim; ++c) res.K(a, b, c) = v(idx(a, b, c));
  }
  return res;
}

double constant_compat_residual(const Eigen::MatrixXd& g, const Eigen::MatrixXd& F,
                                const DArr& K) {
  const int dim = static_cast<int>(g.rows());
  Eigen::MatrixXd ginv = g.inverse();
  Eigen::MatrixXd f = ginv * F;
  double worst = 0.0;
  for (int x = 0; x < dim; ++x)
    for (int y = 0; y < dim; ++y)
      for (int z = 0; z < dim; ++z) {
        double s = K(x, z, y) + K(y, x, z);
        for (int l = 0; l < dim; ++l) s += -f(l, y) * K(x, z, l) + f(l, z) * K(y, x, l);
        worst = std::max(worst, std::abs(s));
      }
  return worst;
}

}  // namespace ngt
