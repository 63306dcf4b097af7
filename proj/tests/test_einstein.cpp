#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ngt/einstein.hpp"
#include "ngt/probe.hpp"

using namespace ngt;

namespace {

GeometryInput make_geometry(int dim, const std::vector<std::string>& g,
                            const std::vector<std::string>& F) {
  GeometryInput gi;
  gi.chart.dim = dim;
  for (int i = 0; i < dim; ++i) gi.chart.periods[static_cast<std::size_t>(i)] = 2.0 * M_PI;
  gi.chart.resolution = 8;
  for (const auto& s : g) gi.g_exprs.push_back(parse_expr(s, dim));
  for (const auto& s : F) gi.F_exprs.push_back(parse_expr(s, dim));
  return gi;
}

GeometryInput flat_t4() {
  return make_geometry(4,
                       {"1", "0", "0", "0", "0", "1", "0", "0", "0", "0", "1", "0", "0", "0",
                        "0", "1"},
                       {"0", "0.5", "0", "0", "-0.5", "0", "0", "0", "0", "0", "0", "0.25", "0",
                        "0", "-0.25", "0"});
}

// Block-conformal metric with a parallel block-rotation two-form and an
// explicit contorsion supported on the flat directions of f.
GeometryInput skew_t4() {
  const std::string p = "exp(0.4*sin(x1)*cos(x2))";
  const std::string q = "exp(0.4*cos(x3)*sin(x4))";
  const std::string F12 = "0.5*exp(0.4*sin(x1)*cos(x2))";
  return make_geometry(4,
                       {p, "0", "0", "0", "0", p, "0", "0", "0", "0", q, "0", "0", "0", "0", q},
                       {"0", F12, "0", "0", "-" + F12, "0", "0", "0", "0", "0", "0", "0", "0",
                        "0", "0", "0"});
}

std::vector<std::string> zero_cube(int dim) {
  return std::vector<std::string>(static_cast<std::size_t>(dim * dim * dim), "0");
}

ContorsionModel skew_model() {
  ContorsionModel m;
  m.mode = ContorsionMode::ExplicitK;
  auto K = zero_cube(4);
  const std::string u = "0.2*sin(x1)*cos(x4)+0.15*cos(x2)*sin(x3)";
  K[(0 * 4 + 2) * 4 + 3] = u;               // K(1,3,4) = u
  K[(0 * 4 + 3) * 4 + 2] = "-(" + u + ")";  // K(1,4,3) = -u
  for (const auto& s : K) (void)s;
  ContorsionModel out;
  out.mode = ContorsionMode::ExplicitK;
  for (const auto& s : K) out.K_exprs.push_back(parse_expr(s, 4));
  return out;
}

ContorsionModel negcontrol_model() {
  ContorsionModel m;
  m.mode = ContorsionMode::ExplicitK;
  auto K = zero_cube(4);
  K[(0 * 4 + 1) * 4 + 0] = "0.5";        // K(1,2,1)
  K[(1 * 4 + 2) * 4 + 0] = "1/3";        // K(2,3,1)
  K[(1 * 4 + 0) * 4 + 2] = "1/3";        // K(2,1,3)
  for (const auto& s : K) m.K_exprs.push_back(parse_expr(s, 4));
  return m;
}

std::mt19937_64 rng(424242);

void random_point(double* x, int dim) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
  for (int i = 0; i < dim; ++i) x[i] = u(rng);
}

}  // namespace

TEST_CASE("zero contorsion on a flat constant geometry is fully compatible") {
  GeometryInput gi = flat_t4();
  ContorsionModel m;
  double x[4];
  random_point(x, 4);
  EvalCtx ctx = eval_geometry(gi, x);
  fill_contorsion(ctx, m);
  ResidualSample r = connection_residuals(ctx);
  CHECK(r.metric_compat <= 1e-14);
  CHECK(r.g_parallel <= 1e-14);
  CHECK(r.contorsion_skew <= 1e-14);
  CHECK(r.commutator_skew <= 1e-14);
  CHECK(r.anchor_defect <= 1e-14);
  CHECK(r.divergence_stat <= 1e-14);
}

TEST_CASE("pointwise compatibility residual agrees with the linear system rows") {
  GeometryInput gi = flat_t4();
  Eigen::MatrixXd g = Eigen::MatrixXd::Identity(4, 4);
  Eigen::MatrixXd F = Eigen::MatrixXd::Zero(4, 4);
  F(0, 1) = 0.5;
  F(1, 0) = -0.5;
  F(2, 3) = 0.25;
  F(3, 2) = -0.25;

  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ContorsionModel m;
  m.mode = ContorsionMode::ExplicitK;
  DArr Kc(4, 3);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int l = 0; l < 4; ++l) {
        Kc(i, j, l) = u(rng);
        m.K_exprs.push_back(make_const(Kc(i, j, l)));
      }
  double x[4];
  random_point(x, 4);
  EvalCtx ctx = eval_geometry(gi, x);
  fill_contorsion(ctx, m);
  ResidualSample r = connection_residuals(ctx);
  CHECK(r.metric_compat == doctest::Approx(constant_compat_residual(g, F, Kc)).epsilon(1e-12));
}

TEST_CASE("constant compatibility nullspace is trivial for the builtin two-form") {
  Eigen::MatrixXd g = Eigen::MatrixXd::Identity(4, 4);
  Eigen::MatrixXd F = Eigen::MatrixXd::Zero(4, 4);
  F(0, 1) = 0.5;
  F(1, 0) = -0.5;
  F(2, 3) = 0.25;
  F(3, 2) = -0.25;
  NullspaceResult res = solve_constant_nullspace(g, F);
  CHECK(res.skew_dim == 0);
  CHECK(res.smin_skew >= 1.0);
  CHECK(max_abs(res.K) == 0.0);
  // A solved zero contorsion satisfies the system exactly.
  CHECK(constant_compat_residual(g, F, res.K) == 0.0);
}

TEST_CASE("nullspace solver scans a family of constant two-forms") {
  Eigen::MatrixXd g = Eigen::MatrixXd::Identity(4, 4);
  for (double a : {0.1, 0.5, 0.9}) {
    for (double b : {0.25, 0.75}) {
      Eigen::MatrixXd F = Eigen::MatrixXd::Zero(4, 4);
      F(0, 1) = a;
      F(1, 0) = -a;
      F(2, 3) = b;
      F(3, 2) = -b;
      NullspaceResult res = solve_constant_nullspace(g, F);
      if (res.skew_dim > 0) {
        CHECK(constant_compat_residual(g, F, res.K) <= 1e-9);
        CHECK(max_abs(res.K) == doctest::Approx(0.25));
      } else {
        CHECK(res.smin_skew > 1e-6);
      }
    }
  }
}

TEST_CASE("explicit contorsion with last-two-slot skewness: conjugate is the negative") {
  GeometryInput gi = skew_t4();
  ContorsionModel m = skew_model();
  for (int trial = 0; trial < 4; ++trial) {
    double x[4];
    random_point(x, 4);
    EvalCtx ctx = eval_geometry(gi, x);
    fill_contorsion(ctx, m);
    for (std::size_t i = 0; i < ctx.K.v.size(); ++i) {
      CHECK(std::abs(ctx.Kstar.v[i].v + ctx.K.v[i].v) <= 1e-13);
      CHECK(std::abs(ctx.Kstar3.v[i].v + ctx.K3.v[i].v) <= 1e-13);
    }
    for (int k = 0; k < 4; ++k)
      CHECK(std::abs(ctx.Estarvec(k).v + ctx.Evec(k).v) <= 1e-13);
  }
}

TEST_CASE("block-conformal fixture: structural conditions hold exactly, compatibility fails") {
  GeometryInput gi = skew_t4();
  ContorsionModel m = skew_model();
  double worst_compat = 0.0;
  for (int trial = 0; trial < 6; ++trial) {
    double x[4];
    random_point(x, 4);
    EvalCtx ctx = eval_geometry(gi, x);
    fill_contorsion(ctx, m);

    // f is the constant block rotation: f ∂1 = -0.5 ∂2, f ∂2 = 0.5 ∂1.
    CHECK(ctx.fm(1, 0) == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(ctx.fm(0, 1) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(ctx.fm(2, 2)) <= 1e-13);
    // ∇^g f = 0 for this geometry.
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < 4; ++k)
        for (int j = 0; j < 4; ++j) {
          double s = ctx.f(k, j).grad(i);
          for (int mm = 0; mm < 4; ++mm)
            s += ctx.Gamma(k, i, mm).v * ctx.fm(mm, j) - ctx.Gamma(mm, i, j).v * ctx.fm(k, mm);
          CHECK(std::abs(s) <= 1e-12);
        }

    ResidualSample r = connection_residuals(ctx);
    CHECK(r.contorsion_skew <= 1e-13);
    CHECK(r.commutator_skew <= 1e-13);
    CHECK(r.anchor_defect <= 1e-12);
    CHECK(r.divergence_stat <= 1e-12);
    CHECK(r.g_parallel <= 1e-12);
    for (int k = 0; k < 4; ++k) {
      CHECK(std::abs(ctx.Evec(k).v) <= 1e-13);
      CHECK(std::abs(ctx.Estarvec(k).v) <= 1e-13);
    }
    worst_compat = std::max(worst_compat, r.metric_compat);
  }
  CHECK(worst_compat > 0.05);
}

TEST_CASE("negative-control contorsion violates the gates with the designed magnitudes") {
  GeometryInput gi = flat_t4();
  ContorsionModel m = negcontrol_model();
  double x[4];
  random_point(x, 4);
  EvalCtx ctx = eval_geometry(gi, x);
  fill_contorsion(ctx, m);
  ResidualSample r = connection_residuals(ctx);
  CHECK(r.contorsion_skew == doctest::Approx(2.0 / 3.0));
  CHECK(r.divergence_stat == doctest::Approx(0.5));
  CHECK(r.commutator_skew == doctest::Approx(1.0 / 6.0));
  for (int k = 0; k < 4; ++k) CHECK(std::abs(ctx.Evec(k).v) <= 1e-14);
  CHECK(ctx.Estarvec(1).v == doctest::Approx(0.5));
  CHECK(std::abs(ctx.Estarvec(0).v) <= 1e-14);
  CHECK(std::abs(ctx.Estarvec(2).v) <= 1e-14);
  CHECK(std::abs(ctx.Estarvec(3).v) <= 1e-14);
  // f E* = 0.25 ∂1
  double fE1 = 0.0;
  for (int k = 0; k < 4; ++k) fE1 += ctx.fm(0, k) * ctx.Estarvec(k).v;
  CHECK(fE1 == doctest::Approx(0.25));
}

TEST_CASE("torsion-payload modes reproduce their defining algebra") {
  // F with a non-closed two-form so dF ≠ 0.
  GeometryInput gi = make_geometry(
      4,
      {"1", "0", "0", "0", "0", "1", "0", "0", "0", "0", "1", "0", "0", "0", "0", "1"},
      {"0", "0.5+0.2*sin(x3)", "0", "0", "-(0.5+0.2*sin(x3))", "0", "0", "0", "0", "0", "0",
       "0.25", "0", "0", "-0.25", "0"});
  double x[4];
  random_point(x, 4);

  for (ContorsionMode mode : {ContorsionMode::SkewFromDF, ContorsionMode::NearlyKahler}) {
    ContorsionModel m;
    m.mode = mode;
    EvalCtx ctx = eval_geometry(gi, x);
    fill_contorsion(ctx, m);
    // T = -dF/3, fully antisymmetric here.
    double d3 = 0.2 * std::cos(x[2]);
    CHECK(ctx.T3(2, 0, 1).v == doctest::Approx(-d3 / 3.0).epsilon(1e-12));
    CHECK(ctx.T3(0, 1, 2).v == doctest::Approx(-d3 / 3.0).epsilon(1e-12));
    CHECK(ctx.T3(1, 0, 2).v == doctest::Approx(d3 / 3.0).epsilon(1e-12));
    // K_X Y - K_Y X = T(X,Y) in both torsion-payload constructions.
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int l = 0; l < 4; ++l)
          CHECK(std::abs(ctx.K3(i, j, l).v - ctx.K3(j, i, l).v - ctx.T3(i, j, l).v) <= 1e-12);
    if (mode == ContorsionMode::NearlyKahler)
      for (std::size_t i = 0; i < ctx.K3.v.size(); ++i)
        CHECK(ctx.K3.v[i].v == doctest::Approx(0.5 * ctx.T3.v[i].v).epsilon(1e-13));
  }

  // Explicit torsion payload: the engine solves the displayed relation for K.
  ContorsionModel mt;
  mt.mode = ContorsionMode::ExplicitT;
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  DArr T3c(4, 3);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int l = 0; l < 4; ++l) {
        if (i < j) T3c(i, j, l) = u(rng);
        if (i == j) T3c(i, j, l) = 0.0;
        if (i > j) T3c(i, j, l) = -T3c(j, i, l);
      }
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int l = 0; l < 4; ++l) mt.T_exprs.push_back(make_const(T3c(i, j, l)));
  EvalCtx ctx = eval_geometry(gi, x);
  fill_contorsion(ctx, mt);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int l = 0; l < 4; ++l) {
        double rhs = T3c(i, j, l);
        for (int mm = 0; mm < 4; ++mm)
          rhs += T3c(i, l, mm) * ctx.fm(mm, j) + T3c(j, l, mm) * ctx.fm(mm, i);
        CHECK(std::abs(2.0 * ctx.K3(i, j, l).v - rhs) <= 1e-12);
      }
}
