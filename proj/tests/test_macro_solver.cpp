#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "homogflow/constraints.hpp"
#include "homogflow/errors.hpp"
#include "homogflow/integrate.hpp"
#include "homogflow/macro_solver.hpp"
#include "test_support.hpp"

using namespace homogflow;
using namespace homogflow::testing;

namespace {

const double kPi = std::numbers::pi;

MacroProblem standard_problem(ScalarFunction f1, ScalarFunction f2) {
  MacroProblem p;
  p.A_h = Mat2::identity(0.6716);
  p.f1 = std::move(f1);
  p.f2 = std::move(f2);
  p.y1_volume = 1.0 - kPi / 16.0;
  p.alpha_hat = kPi / 16.0;
  p.alpha_bulk = 0.0260777;
  return p;
}

ScalarFunction constant(double c) {
  return [c](Point) { return c; };
}

}  // namespace

TEST(MacroProblem, EffectiveSourceAndLiftAreLinear) {
  HomogenizedData d;
  d.A_h = Mat2::identity(0.7);
  d.y1_volume = 0.8;
  d.alpha_hat = 0.2;
  d.alpha_bulk = 0.03;
  const auto p = MacroProblem::from(d, constant(2.0), [](Point x) { return x.x; });
  EXPECT_DOUBLE_EQ(p.effective_source({0.5, 0.1}), 0.8 * 2.0 + 0.2 * 0.5);
  EXPECT_DOUBLE_EQ(p.lift({0.5, 0.1}), 0.03 * 0.5);
  EXPECT_EQ(p.A_h, d.A_h);
}

TEST(SolveMacro, ZeroSourcesGiveZero) {
  const auto p = standard_problem(constant(0.0), constant(0.0));
  const auto u = solve_macro(p, share(build_uniform_mesh(16)));
  const auto U = compose_limit_pressure(u, p);
  for (double v : u.values) EXPECT_EQ(v, 0.0);
  for (double v : U.values) EXPECT_EQ(v, 0.0);
}

TEST(SolveMacro, ManufacturedSolutionWithIdentityTensor) {
  MacroProblem p;
  p.A_h = Mat2::identity();
  p.y1_volume = 1.0;
  p.alpha_hat = 0.0;
  const ScalarFunction exact = [](Point x) { return std::sin(kPi * x.x) * std::sin(kPi * x.y); };
  p.f1 = [&](Point x) { return 2.0 * kPi * kPi * exact(x); };
  double prev = -1.0;
  for (int n : {16, 32, 64}) {
    const auto u = solve_macro(p, share(build_uniform_mesh(n)));
    const double err = l2_error(*u.mesh, u.values, exact);
    if (prev > 0.0) {
      EXPECT_GE(prev / err, 3.5);
      EXPECT_LE(prev / err, 4.5);
    }
    prev = err;
  }
}

TEST(ComposeLimitPressure, NoBlockSourceMeansNoLift) {
  const auto p = standard_problem(constant(1.0), constant(0.0));
  const auto u = solve_macro(p, share(build_uniform_mesh(16)));
  const auto U = compose_limit_pressure(u, p);
  EXPECT_EQ(U.values, u.values);
}

TEST(ComposeLimitPressure, UnitBlockSourceGivesConstantLift) {
  const auto p = standard_problem(constant(1.0), constant(1.0));
  const auto u = solve_macro(p, share(build_uniform_mesh(16)));
  const auto U = compose_limit_pressure(u, p);
  for (std::size_t i = 0; i < u.values.size(); ++i) EXPECT_NEAR(U.values[i] - u.values[i], 0.0260777, 1e-15);
  for (Index v : boundary_nodes(*u.mesh)) EXPECT_EQ(U.values[v], p.lift(u.mesh->nodes[v]));
}

TEST(ComposeLimitPressure, BoundaryTraceEqualsLiftForVaryingSource) {
  const auto p = standard_problem(constant(1.0), [](Point x) { return 1.0 + x.x * x.y; });
  const auto u = solve_macro(p, share(build_uniform_mesh(16)));
  const auto U = compose_limit_pressure(u, p);
  double worst = 0.0;
  for (Index v : boundary_nodes(*u.mesh))
    worst = std::max(worst, std::abs(U.values[v] - p.lift(u.mesh->nodes[v])));
  EXPECT_EQ(worst, 0.0);
}

TEST(SolveMacro, DoublingSourcesDoublesSolution) {
  const auto mesh = share(build_uniform_mesh(32));
  const auto f1 = [](Point x) { return std::exp(x.x) * x.y; };
  const auto f2 = [](Point x) { return 1.0 + std::cos(x.y); };
  const auto a = solve_macro(standard_problem(f1, f2), mesh);
  const auto b = solve_macro(standard_problem([&](Point x) { return 2.0 * f1(x); }, [&](Point x) { return 2.0 * f2(x); }), mesh);
  double scale = 0.0;
  for (double v : a.values) scale = std::max(scale, std::abs(v));
  for (std::size_t i = 0; i < a.values.size(); ++i) EXPECT_NEAR(b.values[i], 2.0 * a.values[i], 1e-8 * scale);
}

TEST(SolveMacro, DirichletFormForTheLimitAgrees) {
  // Solve for U directly: Dirichlet data G and the weak source F* + div(A grad G).
  const auto p = standard_problem(constant(1.0), [](Point x) { return 1.0 + std::sin(2.0 * x.x) * x.y; });
  const auto mesh = share(build_uniform_mesh(32));
  const Mesh& m = *mesh;
  SparseSystem s(m.num_nodes());
  assemble_stiffness(m, CoefficientField::constant(p.A_h), Subdomain::matrix, 1.0, s);
  assemble_load(m, [&](Point x) { return p.effective_source(x); }, Subdomain::matrix, 1.0, s);
  const auto G = interpolate(m, [&](Point x) { return p.lift(x); });
  const auto kG = s.matrix() * std::span<const double>(G);
  for (std::size_t i = 0; i < kG.size(); ++i) s.add_rhs(static_cast<Index>(i), kG[i]);
  Constraints c;
  for (Index v : boundary_nodes(m)) c.dirichlet.emplace_back(v, G[v]);
  const auto direct = solve(apply_constraints(s, c), {1e-12, 0});

  const auto U = compose_limit_pressure(solve_macro(p, mesh, {1e-12, 0}), p);
  for (std::size_t i = 0; i < m.num_nodes(); ++i) EXPECT_NEAR(direct[i], U.values[i], 1e-9);
}

TEST(SolveMacro, NonNegativeDataGiveNonNegativeLimit) {
  const auto p = standard_problem([](Point x) { return x.x; }, [](Point x) { return x.y * x.y; });
  const auto U = compose_limit_pressure(solve_macro(p, share(build_uniform_mesh(24))), p);
  for (double v : U.values) EXPECT_GE(v, -1e-12);
}

TEST(SolveMacro, RejectsNonSpdTensor) {
  auto p = standard_problem(constant(1.0), constant(1.0));
  p.A_h = Mat2{{{{1.0, 2.0}, {2.0, 1.0}}}};
  EXPECT_THROW(solve_macro(p, share(build_uniform_mesh(8))), ArgumentError);
  p.A_h = Mat2{{{{1.0, 0.1}, {0.0, 1.0}}}};
  EXPECT_THROW(solve_macro(p, share(build_uniform_mesh(8))), ArgumentError);
}
